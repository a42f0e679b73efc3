"""Executable acceptance suite: the ten published-value and property
criteria the package must reproduce.

Each criterion is a function returning a :class:`CriterionResult`; the CLI
``paper-check`` subcommand and the test suite both run :func:`run_all` so
there is a single source of truth for the expected values.  Random
criteria use fixed seeds for reproducibility.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .based_matrix import (
    BasedMatrix,
    based_matrix,
    canonical_form,
    classify,
    reduce_to_primitive,
    rho,
)
from .diagram import (
    HEAD,
    TAIL,
    GaussDiagram,
    SignedDiagram,
    make_alpha_pq,
    make_example_M,
)
from .invariants import mu_analysis, nu, nu_via_smoothing
from .moves import ORDINARY_KINDS, apply_move, applicable_moves, type3_orbit
from .signed_matrix import (
    d_moves,
    is_primitive_signed,
    reduce_signed,
    signed_classify,
    signed_homology_equivalent,
    signed_matrix,
)

# The published 6x6 based matrix of the benchmark 5-arrow string
# (rows and columns in order s, A, B, C, D, E).
GOLDEN_T_M = (
    (0, -2, -1, 0, 1, 2),
    (2, 0, 0, 0, 1, 3),
    (1, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0),
    (-1, -1, 0, 0, 0, 0),
    (-2, -3, -1, 0, 0, 0),
)

# Its primitive reduction: the same matrix with the C row and column removed.
GOLDEN_T_M_PRIMITIVE = (
    (0, -2, -1, 1, 2),
    (2, 0, 0, 1, 3),
    (1, 0, 0, 0, 1),
    (-1, -1, 0, 0, 0),
    (-2, -3, -1, 0, 0),
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def random_diagram(rng: random.Random, n: int) -> GaussDiagram:
    slots = [(a, r) for a in range(n) for r in (TAIL, HEAD)]
    rng.shuffle(slots)
    return GaussDiagram(tuple(slots))


def _timed(number, name, fn) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        passed, detail = False, f"exception: {exc!r}"
    return CriterionResult(number, name, passed, detail, time.perf_counter() - t0)


def _best_time(fn, repeats=5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def criterion_1() -> CriterionResult:
    def run():
        m = based_matrix(make_example_M())
        ok = m.b == GOLDEN_T_M
        t = _best_time(lambda: based_matrix(make_example_M()))
        fast = t < 1e-3
        return ok and fast, f"entries {'match' if ok else 'DIFFER'}, best time {t*1e6:.0f}us"

    return _timed(1, "benchmark string based matrix equals published 6x6", run)


def criterion_2() -> CriterionResult:
    def run():
        M = make_example_M()
        r = rho(M)
        prim, _ = reduce_to_primitive(based_matrix(M))
        golden = BasedMatrix(
            ("s",) + tuple(("synthetic", i) for i in range(4)), GOLDEN_T_M_PRIMITIVE
        )
        iso = canonical_form(prim) == canonical_form(golden)
        t = _best_time(lambda: rho(make_example_M()))
        return (
            r == 4 and iso and t < 1e-2,
            f"rho={r}, primitive isomorphic to published 5x5: {iso}, best time {t*1e3:.1f}ms",
        )

    return _timed(2, "rho of the benchmark string is 4 with the published primitive", run)


def criterion_3() -> CriterionResult:
    def run():
        M = make_example_M()
        cert = type3_orbit(M)
        rep = mu_analysis(M, cert)
        nu_sum = nu(M)
        ok = (
            rep.t_mu_half == 5
            and rep.t_mu_exact
            and nu_sum.is_zero()
            and nu_sum.unresolved == 0
            and rep.rho == 4
            and rep.t_mu_half > rep.rho
        )
        return ok, (
            f"t_mu/2={rep.t_mu_half} exact={rep.t_mu_exact} nu_zero={nu_sum.is_zero()} "
            f"rho={rep.rho} m=5"
        )

    return _timed(3, "main example: t(mu)/2=5 exact, nu=0, m=5, bound beats rho", run)


def criterion_4() -> CriterionResult:
    def run():
        cert = type3_orbit(make_example_M())
        ok = cert.irreducible and cert.witness is None
        return ok, f"orbit size {cert.orbit_size}, irreducible={cert.irreducible}"

    return _timed(4, "benchmark string is crossing-irreducible via Type-3 orbit", run)


def criterion_5() -> CriterionResult:
    def run():
        details = []
        all_ok = True
        for p, q in [(1, 2), (2, 2), (2, 3), (3, 2)]:
            t0 = time.perf_counter()
            g = make_alpha_pq(p, q)  # constructor self-checks the b identities
            m = based_matrix(g)
            prim, _ = reduce_to_primitive(m)
            primitive = prim.size == m.size
            no_selfcomp = not classify(m).self_complementary
            nu_sum = nu(g)
            rep = mu_analysis(g)
            ok = (
                primitive
                and no_selfcomp
                and nu_sum.is_zero()
                and rep.t_mu_exact
                and rep.t_mu_half == p + q
                and time.perf_counter() - t0 < 1.0
            )
            all_ok = all_ok and ok
            details.append(f"({p},{q}):{'ok' if ok else 'FAIL'}")
        return all_ok, " ".join(details)

    return _timed(5, "two-family strings: primitive, nu=0, exact m=p+q", run)


def criterion_6(samples: int = 500, seed: int = 106) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        failures = 0
        for _ in range(samples):
            g = random_diagram(rng, rng.randint(1, 6))
            m = based_matrix(g)
            p0, _ = reduce_to_primitive(m)
            k0 = canonical_form(p0)
            for _ in range(3):
                p, _ = reduce_to_primitive(m, rng=rng)
                if canonical_form(p) != k0:
                    failures += 1
        return failures == 0, f"{samples} diagrams x3 shuffled orders, {failures} failures"

    return _timed(6, "randomized reduction orders give isomorphic primitives", run)


def criterion_7(samples: int = 500, seed: int = 107) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        failures = 0
        tried = 0
        while tried < samples:
            g = random_diagram(rng, rng.randint(1, 6))
            moves = applicable_moves(g, ORDINARY_KINDS)
            if not moves:
                continue
            tried += 1
            h = apply_move(g, rng.choice(moves))
            pg, _ = reduce_to_primitive(based_matrix(g))
            ph, _ = reduce_to_primitive(based_matrix(h))
            if canonical_form(pg) != canonical_form(ph):
                failures += 1
                continue
            if mu_analysis(g).certified_key_multiset() != mu_analysis(h).certified_key_multiset():
                failures += 1
                continue
            if nu(g) != nu(h):
                failures += 1
        return failures == 0, f"{tried} (diagram, move) pairs, {failures} failures"

    return _timed(7, "rho, primitive key, mu multiset, nu unchanged by moves", run)


def criterion_8(samples: int = 200, seed: int = 108) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        cases = [make_example_M()]
        cases += [make_alpha_pq(p, q) for p, q in [(1, 2), (2, 2), (2, 3), (3, 2)]]
        cases += [random_diagram(rng, rng.randint(1, 5)) for _ in range(samples)]
        failures = 0
        unresolved = 0
        terms = 0
        for g in cases:
            a = nu(g)
            b = nu_via_smoothing(g)
            terms += 2 * g.n
            unresolved += a.unresolved + b.unresolved
            if a.coefficients != b.coefficients:
                failures += 1
        frac = unresolved / max(terms, 1)
        return (
            failures == 0 and frac <= 0.01,
            f"{len(cases)} diagrams, {failures} mismatches, "
            f"{unresolved}/{terms} unresolved terms",
        )

    return _timed(8, "cobracket equals smoothing of the singular sum", run)


def criterion_9(samples: int = 500, seed: int = 109) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        v_general = v_nsc = 0
        for _ in range(samples):
            g = random_diagram(rng, rng.randint(1, 6))
            rep = mu_analysis(g)
            if not rep.bound_general_holds:
                v_general += 1
            if rep.bound_no_selfcomp_holds is False:
                v_nsc += 1
        return (
            v_general == 0 and v_nsc == 0,
            f"{samples} diagrams, {v_general} general / {v_nsc} no-self-comp violations",
        )

    return _timed(9, "correction-term inequalities hold on random diagrams", run)


def criterion_10() -> CriterionResult:
    def run():
        M = make_example_M()
        # arrows A..E are ids 0..4
        mA = signed_matrix(SignedDiagram(M, 0, +1))
        a_nonprim = not is_primitive_signed(mA)
        rA = reduce_signed(mA)
        golden = tuple(
            tuple(row[:3] + row[4:]) for row in (GOLDEN_T_M[:3] + GOLDEN_T_M[4:])
        )
        a_reduces = rA.b == golden and rA.sign == +1 and rA.d == 1
        a_unique = len(d_moves(rA)) == 0

        mCp = signed_matrix(SignedDiagram(M, 2, +1))
        mCm = signed_matrix(SignedDiagram(M, 2, -1))
        c_prim = is_primitive_signed(mCp)
        neighbors = d_moves(mCp)
        c_one_neighbor = len(neighbors) == 1 and neighbors[0].sign == -1
        c_signs_differ = not signed_homology_equivalent(mCp, mCm)

        ok = all([a_nonprim, a_reduces, a_unique, c_prim, c_one_neighbor, c_signs_differ])
        return ok, (
            f"A-term: nonprim={a_nonprim} reduces-to-published={a_reduces} "
            f"unique={a_unique}; C-term: prim={c_prim} one-neighbor={c_one_neighbor} "
            f"signs-inequivalent={c_signs_differ}"
        )

    return _timed(10, "signed matrix structure of the distinguished-arrow terms", run)


def run_all() -> list[CriterionResult]:
    return [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
