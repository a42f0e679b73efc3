"""Based matrices of virtual strings over the integers.

A based matrix is a finite ordered set of labels with a basepoint ``s``
at index 0 and a skew-symmetric integer form ``b``.  The matrix of a
diagram is built from the combinatorial linking formula; reduction
repeatedly deletes annihilating elements, core elements, and
complementary pairs until no deletion applies.  The reduced (primitive)
matrix is unique up to isomorphism, which makes its canonical form and
the derived integer ``rho`` homotopy invariants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import GaussDiagram

DEFAULT_CANON_CAP = 14


class CanonicalizationCapExceeded(ValueError):
    """Matrix too large for the permutation-minimizing canonicalizer."""


@dataclass(frozen=True)
class BasedMatrix:
    """Skew-symmetric integer form on labels; ``labels[0]`` is ``s``.

    Non-basepoint labels carry provenance: ``("arrow", id)`` for elements
    coming from diagram arrows, ``("synthetic", k)`` otherwise.
    """

    labels: tuple
    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.labels)
        if len(self.b) != k or any(len(row) != k for row in self.b):
            raise ValueError("matrix shape does not match labels")
        for i in range(k):
            if self.b[i][i] != 0:
                raise ValueError("nonzero diagonal entry")
            for j in range(i):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError("matrix is not skew-symmetric")

    @property
    def size(self) -> int:
        return len(self.labels)

    def delete(self, indices) -> "BasedMatrix":
        drop = set(indices)
        if 0 in drop:
            raise ValueError("cannot delete the basepoint")
        keep = [i for i in range(self.size) if i not in drop]
        return BasedMatrix(
            tuple(self.labels[i] for i in keep),
            tuple(tuple(self.b[i][j] for j in keep) for i in keep),
        )


@dataclass(frozen=True)
class ElementClass:
    """Definitional element classes of a based matrix."""

    annihilating: tuple[int, ...]
    core: tuple[int, ...]
    complementary_pairs: tuple[tuple[int, int], ...]
    self_complementary: tuple[int, ...]
    s_annihilating_like: bool


@dataclass(frozen=True)
class Reduction:
    """Ordered record of deletions performed by the reduction."""

    steps: tuple  # of (kind, labels-removed)


def based_matrix(g: GaussDiagram) -> BasedMatrix:
    """Build the matrix of a diagram from the linking formula.

    ``b(e, s)`` is the signed count of arrows linking ``e``; an off-base
    entry ``b(e, f)`` is the signed tail/head count between the arcs of
    ``e`` and ``f`` plus the linking sign of the pair.
    """
    n = g.n
    ends = [g.endpoints(e) for e in range(n)]
    m = len(g.slots)

    def in_arc(pos: int, start: int, stop: int) -> bool:
        # strictly inside the counterclockwise arc from start to stop
        if start == stop:
            return False
        off = (pos - start) % m
        return 0 < off < (stop - start) % m

    def arc_dot(start1, stop1, start2, stop2) -> int:
        total = 0
        for t, h in ends:
            if in_arc(t, start1, stop1) and in_arc(h, start2, stop2):
                total += 1
            if in_arc(t, start2, stop2) and in_arc(h, start1, stop1):
                total -= 1
        return total

    size = n + 1
    mat = [[0] * size for _ in range(size)]
    for e in range(n):
        n_e = 0
        for f in range(n):
            if f == e:
                continue
            n_e += _links(ends, m, f, e)
        mat[e + 1][0] = n_e
        mat[0][e + 1] = -n_e
    for e in range(n):
        a, b_ = ends[e]
        for f in range(n):
            if f == e:
                continue
            c, d = ends[f]
            sigma = _links(ends, m, f, e)
            mat[e + 1][f + 1] = arc_dot(a, b_, c, d) + sigma
    labels = ("s",) + tuple(("arrow", e) for e in range(n))
    return BasedMatrix(labels, tuple(tuple(row) for row in mat))


def _links(ends, m, f, e) -> int:
    """+1 if f links e positively, -1 negatively, 0 if unlinked."""

    def in_arc(pos, start, stop):
        if start == stop:
            return False
        off = (pos - start) % m
        return 0 < off < (stop - start) % m

    a, b_ = ends[e]
    c, d = ends[f]
    if in_arc(c, a, b_) and in_arc(d, b_, a):
        return 1
    if in_arc(c, b_, a) and in_arc(d, a, b_):
        return -1
    return 0


def classify(m: BasedMatrix) -> ElementClass:
    """Compute all element classes by the definitional linear checks."""
    k = m.size
    ann, core, selfc = [], [], []
    for i in range(1, k):
        if all(m.b[i][h] == 0 for h in range(k)):
            ann.append(i)
        if all(m.b[i][h] == m.b[0][h] for h in range(k)):
            core.append(i)
        if all(2 * m.b[i][h] == m.b[0][h] for h in range(k)):
            selfc.append(i)
    pairs = []
    for i in range(1, k):
        for j in range(i + 1, k):
            if all(m.b[i][h] + m.b[j][h] == m.b[0][h] for h in range(k)):
                pairs.append((i, j))
    s_ann = all(m.b[0][h] == 0 for h in range(k))
    return ElementClass(tuple(ann), tuple(core), tuple(pairs), tuple(selfc), s_ann)


def _available_deletions(m: BasedMatrix):
    c = classify(m)
    out = [("annihilating", (i,)) for i in c.annihilating]
    out += [("core", (i,)) for i in c.core]
    out += [("complementary_pair", pair) for pair in c.complementary_pairs]
    return out


def reduce_to_primitive(
    m: BasedMatrix, rng: random.Random | None = None
) -> tuple[BasedMatrix, Reduction]:
    """Delete annihilating/core elements and complementary pairs until the
    matrix is primitive.

    The deterministic order is: first annihilating element, else first core
    element, else the first complementary pair.  Passing ``rng`` randomizes
    the choice at every step; by uniqueness of the primitive matrix the
    result is the same up to isomorphism either way.
    """
    steps = []
    while True:
        options = _available_deletions(m)
        if not options:
            break
        kind, idxs = options[0] if rng is None else rng.choice(options)
        steps.append((kind, tuple(m.labels[i] for i in idxs)))
        m = m.delete(idxs)
    return m, Reduction(tuple(steps))


def _lex_min_serialization(b, prefix: tuple[int, ...], cap: int) -> tuple:
    """Minimal serialization of ``b`` over permutations extending ``prefix``.

    The serialization lists, for each step t >= 1, the row of the t-th
    chosen index against all previously chosen ones; together with
    skew-symmetry this determines the matrix.  Branch-and-bound: partial
    permutations that are no longer minimal are discarded.
    """
    k = len(b)
    if k - len(prefix) > cap:
        raise CanonicalizationCapExceeded(
            f"{k - 1} non-basepoint elements exceed the cap of {cap}"
        )
    serial: list[int] = []
    for t in range(1, len(prefix)):
        serial.extend(b[prefix[t]][prefix[j]] for j in range(t + 1))
    partials = [prefix]
    for _ in range(len(prefix), k):
        best_sig = None
        extended = []
        for p in partials:
            used = set(p)
            for c in range(1, k):
                if c in used:
                    continue
                sig = tuple(b[c][p[j]] for j in range(len(p))) + (0,)
                if best_sig is None or sig < best_sig:
                    best_sig = sig
                    extended = [p + (c,)]
                elif sig == best_sig:
                    extended.append(p + (c,))
        serial.extend(best_sig)
        partials = extended
    return tuple(serial)


def canonical_form(m: BasedMatrix, cap: int = DEFAULT_CANON_CAP) -> tuple:
    """Canonical key: equal for two matrices iff they are isomorphic by a
    label bijection fixing the basepoint."""
    return (m.size,) + _lex_min_serialization(m.b, (0,), cap)


def rho(g: GaussDiagram) -> int:
    """Size of the primitive matrix minus one; a lower bound on the
    minimal self-intersection number."""
    prim, _ = reduce_to_primitive(based_matrix(g))
    return prim.size - 1


def homologous(m1: BasedMatrix, m2: BasedMatrix, cap: int = DEFAULT_CANON_CAP) -> bool:
    """Decide homology by comparing canonical forms of the reductions."""
    p1, _ = reduce_to_primitive(m1)
    p2, _ = reduce_to_primitive(m2)
    return canonical_form(p1, cap) == canonical_form(p2, cap)
