"""Signed singular based matrices and their homology-class calculus.

A signed singular based matrix is a based matrix with a distinguished
non-basepoint element ``d`` and a sign.  Reduction may delete elements
other than ``s`` and ``d``; when a deletion is blocked because ``d`` sits
in the complementary pair about to be removed, the distinction can jump
to a complementary partner at the cost of a sign flip.  A homology class
contains at most two primitive matrices, and when there are two they
differ by a single distinguished-element rewrite; equivalence is decided
by comparing canonical forms across that one-step neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass

from .based_matrix import (
    DEFAULT_CANON_CAP,
    BasedMatrix,
    _lex_min_serialization,
    based_matrix,
)
from .diagram import SignedDiagram


class NotPrimitiveError(ValueError):
    """Operation requires a primitive signed matrix."""


class NoStandardFormError(ValueError):
    """The distinguished element is not ordinary core or annihilating."""


@dataclass(frozen=True)
class SignedBasedMatrix:
    base: BasedMatrix
    d: int
    sign: int

    def __post_init__(self):
        if not 1 <= self.d < self.base.size:
            raise ValueError("distinguished index out of range (and never s)")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def b(self):
        return self.base.b


@dataclass(frozen=True)
class SignedClass:
    """Element classes relative to the distinguished element."""

    d_annihilating_like: bool
    d_core_like: bool
    d_self_complementary: bool
    d_ordinary: bool  # core/annihilating-like with s not annihilating-like
    complementary_partners_of_d: tuple[int, ...]
    s_annihilating_like: bool
    annihilating: tuple[int, ...]  # among elements other than s and d
    core: tuple[int, ...]
    complementary_pairs: tuple[tuple[int, int], ...]


def signed_matrix(g: SignedDiagram) -> SignedBasedMatrix:
    """Matrix of the underlying diagram with the arrow's index distinguished."""
    return SignedBasedMatrix(based_matrix(g.base), g.d + 1, g.sign)


def signed_classify(m: SignedBasedMatrix) -> SignedClass:
    b = m.b
    k = m.base.size
    d = m.d
    d_ann = all(b[d][h] == 0 for h in range(k))
    d_core = all(b[d][h] == b[0][h] for h in range(k))
    d_selfc = all(2 * b[d][h] == b[0][h] for h in range(k))
    s_ann = all(b[0][h] == 0 for h in range(k))
    partners = tuple(
        g
        for g in range(1, k)
        if g != d and all(b[d][h] + b[g][h] == b[0][h] for h in range(k))
    )
    others = [i for i in range(1, k) if i != d]
    ann = tuple(i for i in others if all(b[i][h] == 0 for h in range(k)))
    core = tuple(i for i in others if all(b[i][h] == b[0][h] for h in range(k)))
    pairs = tuple(
        (i, j)
        for i in others
        for j in others
        if i < j and all(b[i][h] + b[j][h] == b[0][h] for h in range(k))
    )
    return SignedClass(
        d_annihilating_like=d_ann,
        d_core_like=d_core,
        d_self_complementary=d_selfc,
        d_ordinary=(d_ann or d_core) and not s_ann,
        complementary_partners_of_d=partners,
        s_annihilating_like=s_ann,
        annihilating=ann,
        core=core,
        complementary_pairs=pairs,
    )


def _deletions(m: SignedBasedMatrix):
    c = signed_classify(m)
    out = [("annihilating", (i,)) for i in c.annihilating]
    out += [("core", (i,)) for i in c.core]
    out += [("complementary_pair", p) for p in c.complementary_pairs]
    return out


def _delete(m: SignedBasedMatrix, idxs) -> SignedBasedMatrix:
    drop = set(idxs)
    if m.d in drop:
        raise ValueError("cannot delete the distinguished element")
    new_d = m.d - sum(1 for i in drop if i < m.d)
    return SignedBasedMatrix(m.base.delete(idxs), new_d, m.sign)


def _swap_distinguished(m: SignedBasedMatrix, g: int) -> SignedBasedMatrix:
    """The distinction-jump move: requires g complementary to d; flips sign."""
    return SignedBasedMatrix(m.base, g, -m.sign)


def is_primitive_signed(m: SignedBasedMatrix) -> bool:
    """No deletion applies, directly or after one distinction jump."""
    if _deletions(m):
        return False
    c = signed_classify(m)
    for g in c.complementary_partners_of_d:
        if _deletions(_swap_distinguished(m, g)):
            return False
    return True


def reduce_signed(m: SignedBasedMatrix) -> SignedBasedMatrix:
    """Greedy reduction protecting ``s`` and the distinguished element.

    When only pairs through the distinguished element remain, the
    distinction jumps to the first partner that unblocks a deletion (sign
    flips); otherwise the matrix is already primitive and is returned.
    """
    while True:
        options = _deletions(m)
        if options:
            kind, idxs = options[0]
            m = _delete(m, idxs)
            continue
        c = signed_classify(m)
        jumped = False
        for g in c.complementary_partners_of_d:
            swapped = _swap_distinguished(m, g)
            if _deletions(swapped):
                m = swapped
                jumped = True
                break
        if not jumped:
            return m


def d_moves(m: SignedBasedMatrix) -> list[SignedBasedMatrix]:
    """One-step neighborhood of a primitive matrix under the
    distinguished-element rewrites (each flips the sign):

    - annihilating-like d: rewrite d's row/column to copy s's;
    - core-like d: zero d's row/column;
    - self-complementary d: sign flip only;
    - for each complementary partner: jump the distinction to it.
    """
    if not is_primitive_signed(m):
        raise NotPrimitiveError("one-step neighborhood is defined for primitives only")
    c = signed_classify(m)
    out = []
    k = m.base.size
    if c.d_annihilating_like:
        rows = [list(r) for r in m.b]
        for h in range(k):
            rows[m.d][h] = m.b[0][h]
            rows[h][m.d] = m.b[h][0]
        rows[m.d][m.d] = 0
        base = BasedMatrix(m.base.labels, tuple(tuple(r) for r in rows))
        out.append(SignedBasedMatrix(base, m.d, -m.sign))
    if c.d_core_like:
        rows = [list(r) for r in m.b]
        for h in range(k):
            rows[m.d][h] = 0
            rows[h][m.d] = 0
        base = BasedMatrix(m.base.labels, tuple(tuple(r) for r in rows))
        out.append(SignedBasedMatrix(base, m.d, -m.sign))
    if c.d_self_complementary:
        out.append(SignedBasedMatrix(m.base, m.d, -m.sign))
    for g in c.complementary_partners_of_d:
        out.append(_swap_distinguished(m, g))
    return out


def signed_canonical_form(m: SignedBasedMatrix, cap: int = DEFAULT_CANON_CAP) -> tuple:
    """Key equal iff isomorphic by a bijection fixing s, d, and the sign."""
    return (m.base.size, m.sign) + _lex_min_serialization(m.b, (0, m.d), cap)


def signed_homology_equivalent(
    m1: SignedBasedMatrix, m2: SignedBasedMatrix, cap: int = DEFAULT_CANON_CAP
) -> bool:
    """Decide homology of two primitive matrices: isomorphic, or one
    distinguished-element rewrite apart."""
    for m in (m1, m2):
        if not is_primitive_signed(m):
            raise NotPrimitiveError("reduce before comparing")
    k2 = signed_canonical_form(m2, cap)
    if signed_canonical_form(m1, cap) == k2:
        return True
    return any(signed_canonical_form(x, cap) == k2 for x in d_moves(m1))


def primitive_orbit_key(m: SignedBasedMatrix, cap: int = DEFAULT_CANON_CAP) -> frozenset:
    """Class invariant: the set of canonical forms of all primitives in the
    homology class of the (already primitive) matrix."""
    keys = {signed_canonical_form(m, cap)}
    for x in d_moves(m):
        keys.add(signed_canonical_form(x, cap))
    return frozenset(keys)


def standard_primitive(m: SignedBasedMatrix) -> SignedBasedMatrix:
    """The unique primitive in the class of ``m`` whose sign equals
    ``m.sign``; defined only when the reduced distinguished element is
    ordinary core or annihilating."""
    p = reduce_signed(m)
    c = signed_classify(p)
    if not c.d_ordinary:
        raise NoStandardFormError(
            "distinguished element is not ordinary core/annihilating"
        )
    if p.sign == m.sign:
        return p
    for x in d_moves(p):
        if x.sign == m.sign:
            cx = signed_classify(x)
            if cx.d_annihilating_like or cx.d_core_like:
                return x
    raise NoStandardFormError("no sign-matching primitive found")
