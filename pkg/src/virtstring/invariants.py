"""The cobracket, the singular-term sum, their smoothing relation, and the
self-intersection bounds derived from them.

``mu_terms`` produces two signed singular strings per arrow; terms are keyed
by the homology class of the reduced signed matrix (realized as the set of
canonical forms of the at most two primitives in the class) so that key-equal
opposite-sign terms cancel.  The surviving multiplicity, halved, bounds the
minimal self-intersection number from below, and under the primitivity or
irreducibility hypotheses the bound is exact.

``nu`` splits the circle at each arrow into two half-strings and sums the
ordered tensor pairs of their reduced-matrix canonical keys, dropping terms
with a trivial half.  ``smoothing_S`` realizes the factorization of the
cobracket through the singular sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .based_matrix import (
    BasedMatrix,
    based_matrix,
    canonical_form,
    classify,
    reduce_to_primitive,
)
from .diagram import TAIL, GaussDiagram, SignedDiagram, canonical_key, is_semi_trivial
from .moves import OrbitCertificate, homotopic_bounded
from .signed_matrix import (
    NoStandardFormError,
    SignedBasedMatrix,
    primitive_orbit_key,
    reduce_signed,
    signed_classify,
    signed_matrix,
    standard_primitive,
)

DEFAULT_ORACLE_STATES = 200_000


@dataclass
class TermSum:
    """Formal sum: equivalence key -> integer coefficient.

    Zero coefficients are pruned.  ``unresolved`` counts terms whose
    inclusion could not be decided within the oracle budget; a nonzero
    count marks the sum imprecise.
    """

    coefficients: dict = field(default_factory=dict)
    unresolved: int = 0

    def add(self, key, coeff: int) -> None:
        new = self.coefficients.get(key, 0) + coeff
        if new:
            self.coefficients[key] = new
        else:
            self.coefficients.pop(key, None)

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def total_multiplicity(self) -> int:
        return sum(abs(c) for c in self.coefficients.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TermSum)
            and self.coefficients == other.coefficients
            and self.unresolved == other.unresolved
        )


@dataclass(frozen=True)
class MuTermRecord:
    arrow: int
    sign: int
    semi_trivial: bool
    certified_not_semi_trivial: bool
    class_key: frozenset | None  # None for semi-trivial terms


@dataclass(frozen=True)
class MuReport:
    arrows: int
    rho: int
    terms: tuple[MuTermRecord, ...]
    t_mu_lower: int  # surviving multiplicity, always even
    t_mu_exact: bool
    exactness_justification: str
    C: int
    A: int
    O: int
    self_complementary_free: bool
    bound_general_holds: bool  # t_mu_lower/2 >= rho - 1 + O/2
    bound_no_selfcomp_holds: bool | None  # t_mu_lower/2 >= rho + O/2, if applicable

    @property
    def t_mu_half(self) -> int:
        return self.t_mu_lower // 2

    def certified_key_multiset(self) -> tuple:
        """Surviving (key, net coefficient) pairs restricted to groups whose
        every term is certified non-semi-trivial; this multiset is invariant
        under homotopy moves."""
        net: dict = {}
        certified: dict = {}
        for t in self.terms:
            if t.semi_trivial:
                continue
            net[t.class_key] = net.get(t.class_key, 0) + t.sign
            ok = certified.get(t.class_key, True) and t.certified_not_semi_trivial
            certified[t.class_key] = ok
        items = [
            (sorted(map(repr, k)), c)
            for k, c in net.items()
            if c and certified[k]
        ]
        return tuple(sorted(map(repr, items)))


def mu_terms(
    g: GaussDiagram,
) -> list[tuple[int, SignedDiagram, SignedDiagram]]:
    """Two signed singular strings per arrow, one of each sign."""
    return [
        (e, SignedDiagram(g, e, +1), SignedDiagram(g, e, -1)) for e in range(g.n)
    ]


def certify_not_semi_trivial(t: SignedDiagram) -> str:
    """Returns "Certified" when the term provably is not semi-trivial.

    A semi-trivial string's distinguished element is core-like or
    annihilating-like in every primitive matrix of its homology class;
    if some primitive in the (at most two element) class orbit has a
    distinguished element of neither kind, the term cannot be
    semi-trivial.  Otherwise returns "Unknown".
    """
    if is_semi_trivial(t):
        return "Unknown"
    p = reduce_signed(signed_matrix(t))
    if _class_certified(p):
        return "Certified"
    return "Unknown"


def _class_certified(p: SignedBasedMatrix) -> bool:
    from .signed_matrix import d_moves

    for x in [p] + d_moves(p):
        c = signed_classify(x)
        if c.d_core_like or c.d_annihilating_like:
            return False
    return True


def mu_analysis(
    g: GaussDiagram, minimality: OrbitCertificate | None = None
) -> MuReport:
    """Full cancellation analysis of the singular-term sum.

    Terms are grouped by homology-class key; opposite signs within a group
    cancel; the surviving multiplicity is ``t_mu_lower``.  A supplied
    irreducibility certificate for ``g`` proves the string crossing-minimal,
    which rules out semi-trivial terms outright and certifies exactness when
    no cancellation occurs.
    """
    n = g.n
    prim, _ = reduce_to_primitive(based_matrix(g))
    rho_val = prim.size - 1
    cert_applies = (
        minimality is not None
        and minimality.irreducible
        and minimality.start_key == canonical_key(g)
    )

    records = []
    groups: dict[frozenset, int] = {}
    group_certified: dict[frozenset, bool] = {}
    for e, t_plus, t_minus in mu_terms(g):
        for t in (t_plus, t_minus):
            if is_semi_trivial(t):
                records.append(MuTermRecord(e, t.sign, True, False, None))
                continue
            p = reduce_signed(signed_matrix(t))
            key = primitive_orbit_key(p)
            certified = cert_applies or _class_certified(p)
            records.append(MuTermRecord(e, t.sign, False, certified, key))
            groups[key] = groups.get(key, 0) + t.sign
            group_certified[key] = group_certified.get(key, True) and certified

    t_mu_lower = sum(abs(c) for c in groups.values())

    cls = classify(prim)
    selfcomp_free = not cls.self_complementary
    base_primitive = prim.size == n + 1

    exact = False
    why = "none"
    if n == 0:
        exact = True
        why = "empty string"
    elif base_primitive and selfcomp_free and t_mu_lower == 2 * n:
        exact = True
        why = (
            "primitive based matrix without self-complementary elements: "
            "the singular-term sum has no cancellation and its half-count "
            "equals the arrow count"
        )
    elif cert_applies and t_mu_lower == 2 * n and all(group_certified.values()):
        exact = True
        why = (
            "irreducibility certificate proves crossing-minimality, so no "
            "term is semi-trivial, and all class keys are pairwise distinct"
        )

    C = A = 0
    for e, t_plus, _ in mu_terms(g):
        if is_semi_trivial(t_plus):
            continue
        try:
            std = standard_primitive(signed_matrix(t_plus))
        except NoStandardFormError:
            continue
        c = signed_classify(std)
        if not c.d_ordinary:
            continue
        if c.d_core_like:
            C += 1
        elif c.d_annihilating_like:
            A += 1
    O = abs(C - A)

    half = t_mu_lower // 2
    bound_general = 2 * half >= 2 * rho_val - 2 + O
    bound_nsc = (2 * half >= 2 * rho_val + O) if selfcomp_free else None

    return MuReport(
        arrows=n,
        rho=rho_val,
        terms=tuple(records),
        t_mu_lower=t_mu_lower,
        t_mu_exact=exact,
        exactness_justification=why,
        C=C,
        A=A,
        O=O,
        self_complementary_free=selfcomp_free,
        bound_general_holds=bound_general,
        bound_no_selfcomp_holds=bound_nsc,
    )


def _half_diagrams(g: GaussDiagram, e: int) -> tuple[GaussDiagram, GaussDiagram]:
    """Split at arrow ``e``: first half keeps the arrows with both endpoints
    strictly inside the tail-to-head arc, second half the head-to-tail arc."""
    tail, head = g.endpoints(e)
    return (
        _extract_arc(g, tail, head),
        _extract_arc(g, head, tail),
    )


def _extract_arc(g: GaussDiagram, start: int, stop: int) -> GaussDiagram:
    inside = list(g.arc_interior(start, stop))
    counts: dict[int, int] = {}
    for i in inside:
        a, _ = g.slots[i]
        counts[a] = counts.get(a, 0) + 1
    keep = {a for a, c in counts.items() if c == 2}
    relabel: dict[int, int] = {}
    slots = []
    for i in inside:
        a, role = g.slots[i]
        if a in keep:
            slots.append((relabel.setdefault(a, len(relabel)), role))
    return GaussDiagram(tuple(slots))


_TRIVIALITY_CACHE: dict[bytes, bool | None] = {}


def is_trivial(
    g: GaussDiagram, max_states: int = DEFAULT_ORACLE_STATES
) -> bool | None:
    """True/False when certain, None when the oracle budget was exhausted.

    A nontrivial primitive matrix certifies nontriviality; otherwise a
    bounded search for a move path to the empty string decides, and budget
    exhaustion is reported honestly as undecided.
    """
    if g.n == 0:
        return True
    key = canonical_key(g)
    if key in _TRIVIALITY_CACHE:
        return _TRIVIALITY_CACHE[key]
    prim, _ = reduce_to_primitive(based_matrix(g))
    if prim.size > 1:
        result: bool | None = False
    else:
        sr = homotopic_bounded(
            g, GaussDiagram(()), max_arrows=g.n + 2, max_states=max_states
        )
        if sr.status == "yes":
            result = True
        elif sr.status == "no_within_bounds":
            # every diagram of this size was exhausted without a path;
            # still not a proof of nontriviality, so stay undecided
            result = None
        else:
            result = None
    _TRIVIALITY_CACHE[key] = result
    return result


def _primitive_key(g: GaussDiagram) -> tuple:
    prim, _ = reduce_to_primitive(based_matrix(g))
    return canonical_form(prim)


def nu(g: GaussDiagram, max_states: int = DEFAULT_ORACLE_STATES) -> TermSum:
    """The cobracket as a formal sum of ordered tensor pairs.

    Each arrow contributes the pair of its half-strings in both orders with
    opposite signs; terms with a certified-trivial half are zero; terms with
    an undecidable half are excluded and counted as unresolved.
    """
    out = TermSum()
    for e in range(g.n):
        h1, h2 = _half_diagrams(g, e)
        t1 = is_trivial(h1, max_states)
        t2 = is_trivial(h2, max_states)
        if t1 is None or t2 is None:
            out.unresolved += 1
            continue
        if t1 or t2:
            continue
        k1, k2 = _primitive_key(h1), _primitive_key(h2)
        out.add((k1, k2), +1)
        out.add((k2, k1), -1)
    return out


def smoothing_S(t: SignedDiagram) -> tuple[GaussDiagram, GaussDiagram]:
    """Smooth the distinguished arrow: the two half-strings at the arrow,
    in tail-to-head order for a positive sign and swapped for a negative."""
    h1, h2 = _half_diagrams(t.base, t.d)
    return (h1, h2) if t.sign == +1 else (h2, h1)


def nu_via_smoothing(
    g: GaussDiagram, max_states: int = DEFAULT_ORACLE_STATES
) -> TermSum:
    """The cobracket computed by smoothing every singular term; agrees with
    :func:`nu` as a TermSum, which is the factorization identity."""
    out = TermSum()
    for _, t_plus, t_minus in mu_terms(g):
        for t in (t_plus, t_minus):
            h1, h2 = smoothing_S(t)
            t1 = is_trivial(h1, max_states)
            t2 = is_trivial(h2, max_states)
            if t1 is None or t2 is None:
                out.unresolved += 1
                continue
            if t1 or t2:
                continue
            out.add((_primitive_key(h1), _primitive_key(h2)), t.sign)
    return out


def bound_report(
    g: GaussDiagram,
    minimality: OrbitCertificate | None = None,
    max_states: int = DEFAULT_ORACLE_STATES,
) -> dict:
    """Headline numbers: arrow count, rho, both half-counts, the correction
    term O, the inequality checks, and the exactness flag."""
    report = mu_analysis(g, minimality)
    if not report.t_mu_exact and minimality is None and g.n > 0:
        # the primitivity route failed; try to certify crossing-minimality
        from .moves import BudgetExceeded, type3_orbit

        try:
            cert = type3_orbit(g, max_states=min(max_states, 100_000))
        except BudgetExceeded:
            cert = None
        if cert is not None and cert.irreducible:
            report = mu_analysis(g, cert)
    nu_sum = nu(g, max_states)
    return {
        "arrows": report.arrows,
        "rho": report.rho,
        "t_mu_half": report.t_mu_half,
        "t_nu_half": nu_sum.total_multiplicity // 2,
        "nu_zero": nu_sum.is_zero(),
        "nu_unresolved": nu_sum.unresolved,
        "C": report.C,
        "A": report.A,
        "O": report.O,
        "exact": report.t_mu_exact,
        "exactness_justification": report.exactness_justification,
        "self_complementary_free": report.self_complementary_free,
        "bound_general_holds": report.bound_general_holds,
        "bound_no_selfcomp_holds": report.bound_no_selfcomp_holds,
        "t_mu_ge_t_nu": report.t_mu_lower >= nu_sum.total_multiplicity,
    }
