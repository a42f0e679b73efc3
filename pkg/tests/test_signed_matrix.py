import random

import pytest

from virtstring.acceptance import GOLDEN_T_M
from virtstring.based_matrix import BasedMatrix, based_matrix
from virtstring.diagram import (
    HEAD,
    TAIL,
    GaussDiagram,
    SignedDiagram,
    make_example_M,
    parse_diagram,
)
from virtstring.moves import apply_signed_move, signed_applicable_moves
from virtstring.signed_matrix import (
    NoStandardFormError,
    NotPrimitiveError,
    SignedBasedMatrix,
    d_moves,
    is_primitive_signed,
    reduce_signed,
    signed_canonical_form,
    signed_classify,
    signed_homology_equivalent,
    signed_matrix,
    standard_primitive,
)


def random_diagram(rng, n):
    slots = [(a, r) for a in range(n) for r in (TAIL, HEAD)]
    rng.shuffle(slots)
    return GaussDiagram(tuple(slots))


def M_term(arrow, sign=+1):
    return signed_matrix(SignedDiagram(make_example_M(), arrow, sign))


GOLDEN_WITHOUT_C = tuple(
    tuple(row[:3] + row[4:]) for row in (GOLDEN_T_M[:3] + GOLDEN_T_M[4:])
)


class TestConstruction:
    def test_C_term_matches_base_matrix(self):
        m = M_term(2)
        assert m.b == GOLDEN_T_M and m.d == 3 and m.sign == +1

    def test_single_arrow(self):
        m = signed_matrix(SignedDiagram(parse_diagram("T0 H0"), 0, -1))
        assert m.base.size == 2 and m.sign == -1

    def test_rejects_basepoint_as_distinguished(self):
        with pytest.raises(ValueError):
            SignedBasedMatrix(based_matrix(make_example_M()), 0, +1)


class TestClassify:
    def test_C_is_ordinary_annihilating(self):
        c = signed_classify(M_term(2))
        assert c.d_annihilating_like and not c.s_annihilating_like and c.d_ordinary

    def test_reduced_A_term_is_nothing_special(self):
        c = signed_classify(reduce_signed(M_term(0)))
        assert not (
            c.d_annihilating_like
            or c.d_core_like
            or c.d_self_complementary
            or c.complementary_partners_of_d
        )

    def test_zero_base_not_ordinary(self):
        base = BasedMatrix(("s", ("synthetic", 0)), ((0, 0), (0, 0)))
        c = signed_classify(SignedBasedMatrix(base, 1, +1))
        assert c.d_annihilating_like and c.s_annihilating_like and not c.d_ordinary

    def test_core_or_annihilating_selfcomp_iff_s_annihilating_like(self):
        rng = random.Random(0)
        for _ in range(200):
            g = random_diagram(rng, rng.randint(1, 5))
            for d in range(g.n):
                c = signed_classify(signed_matrix(SignedDiagram(g, d, +1)))
                if c.d_core_like or c.d_annihilating_like:
                    assert c.d_self_complementary == c.s_annihilating_like


class TestPrimitivity:
    def test_C_term_primitive(self):
        assert is_primitive_signed(M_term(2))

    def test_A_term_not_primitive(self):
        assert not is_primitive_signed(M_term(0))

    def test_primitive_base_implies_primitive_signed(self):
        rng = random.Random(1)
        from virtstring.based_matrix import reduce_to_primitive

        checked = 0
        while checked < 50:
            g = random_diagram(rng, rng.randint(1, 5))
            m = based_matrix(g)
            if reduce_to_primitive(m)[0].size != m.size:
                continue
            d = rng.randint(0, g.n - 1)
            assert is_primitive_signed(signed_matrix(SignedDiagram(g, d, +1)))
            checked += 1


class TestReduction:
    def test_A_term_reduces_to_golden(self):
        r = reduce_signed(M_term(0))
        assert r.b == GOLDEN_WITHOUT_C and r.sign == +1 and r.d == 1

    def test_primitive_is_fixed(self):
        m = M_term(2)
        assert reduce_signed(m) == m

    def test_moved_diagrams_reduce_to_equivalent_matrices(self):
        rng = random.Random(2)
        checked = 0
        while checked < 60:
            g = random_diagram(rng, rng.randint(1, 5))
            sd = SignedDiagram(g, rng.randint(0, g.n - 1), rng.choice((1, -1)))
            moves = signed_applicable_moves(sd)
            if not moves:
                continue
            out = apply_signed_move(sd, rng.choice(moves))
            a = reduce_signed(signed_matrix(sd))
            b = reduce_signed(signed_matrix(out))
            assert signed_homology_equivalent(a, b)
            checked += 1


class TestDMoves:
    def test_C_term_has_one_neighbor(self):
        nb = d_moves(M_term(2))
        assert len(nb) == 1 and nb[0].sign == -1
        # the rewrite copies the basepoint row into the distinguished one
        assert nb[0].b[3] == nb[0].b[0][:3] + (0,) + nb[0].b[0][4:]

    def test_reduced_A_term_has_none(self):
        assert d_moves(reduce_signed(M_term(0))) == []

    def test_requires_primitive(self):
        with pytest.raises(NotPrimitiveError):
            d_moves(M_term(0))

    def test_d12_then_d21_is_identity(self):
        m = M_term(2)
        (once,) = d_moves(m)
        back = [x for x in d_moves(once) if x.d == m.d and x.b == m.b]
        assert back and back[0].sign == m.sign

    def test_self_complementary_d_gives_sign_flip(self):
        base = BasedMatrix(("s", ("synthetic", 0)), ((0, 0), (0, 0)))
        m = SignedBasedMatrix(base, 1, +1)
        flips = [x for x in d_moves(m) if x.base == m.base and x.d == m.d]
        assert any(x.sign == -1 for x in flips)


class TestCanonicalForm:
    def test_permutation_fixing_s_and_d(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_diagram(rng, rng.randint(2, 5))
            m = signed_matrix(SignedDiagram(g, rng.randint(0, g.n - 1), 1))
            # build a permutation of indices that fixes 0 and m.d
            full = list(range(m.base.size))
            spots = [i for i in full if i not in (0, m.d)]
            images = spots[:]
            rng.shuffle(images)
            mapping = {0: 0, m.d: m.d}
            mapping.update(dict(zip(spots, images)))
            inv = {v: k for k, v in mapping.items()}
            order = [inv[i] for i in range(m.base.size)]
            shuffled = SignedBasedMatrix(
                BasedMatrix(
                    tuple(m.base.labels[i] for i in order),
                    tuple(tuple(m.b[i][j] for j in order) for i in order),
                ),
                order.index(m.d),
                m.sign,
            )
            assert signed_canonical_form(shuffled) == signed_canonical_form(m)

    def test_sign_flip_changes_key(self):
        m = M_term(2)
        flipped = SignedBasedMatrix(m.base, m.d, -1)
        assert signed_canonical_form(m) != signed_canonical_form(flipped)


class TestEquivalence:
    def test_opposite_signs_of_C_inequivalent(self):
        assert not signed_homology_equivalent(M_term(2), M_term(2, -1))

    def test_C_equivalent_to_its_rewrite(self):
        m = M_term(2)
        (nb,) = d_moves(m)
        assert signed_homology_equivalent(m, nb)
        assert signed_homology_equivalent(nb, m)

    def test_reflexive(self):
        m = M_term(2)
        assert signed_homology_equivalent(m, m)

    def test_requires_primitive(self):
        with pytest.raises(NotPrimitiveError):
            signed_homology_equivalent(M_term(0), M_term(2))


class TestStandardPrimitive:
    def test_C_term_is_its_own_standard(self):
        m = M_term(2)
        assert standard_primitive(m) == m

    def test_negative_C_term(self):
        m = M_term(2, -1)
        std = standard_primitive(m)
        assert std.sign == -1 and is_primitive_signed(std)

    def test_A_term_has_no_standard(self):
        with pytest.raises(NoStandardFormError):
            standard_primitive(M_term(0))
