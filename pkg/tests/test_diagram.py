import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virtstring import _canonical_py
from virtstring.based_matrix import based_matrix
from virtstring.diagram import (
    HEAD,
    TAIL,
    DiagramError,
    GaussDiagram,
    SignedDiagram,
    canonical_key,
    canonical_key_signed,
    is_semi_trivial,
    make_alpha_pq,
    make_example_M,
    parse_diagram,
    rotate,
    serialize_diagram,
)


def random_slots(rng, n):
    slots = [(a, r) for a in range(n) for r in (TAIL, HEAD)]
    rng.shuffle(slots)
    return tuple(slots)


diagrams = st.integers(min_value=0, max_value=7).flatmap(
    lambda n: st.permutations([(a, r) for a in range(n) for r in (TAIL, HEAD)]).map(
        lambda slots: GaussDiagram(tuple(slots))
    )
)


class TestParseSerialize:
    def test_empty(self):
        g = parse_diagram("")
        assert g.n == 0
        assert serialize_diagram(g) == ""

    def test_single_arrow(self):
        g = parse_diagram("T0 H0")
        assert g.n == 1
        assert g.slots == ((0, TAIL), (0, HEAD))
        assert serialize_diagram(g) == "T0 H0"

    def test_example_M_round_trip(self):
        text = serialize_diagram(make_example_M())
        assert text == "H0 H1 H2 T0 H3 T1 H4 T2 T3 T4"
        assert parse_diagram(text) == make_example_M()

    @pytest.mark.parametrize(
        "bad",
        ["X0", "T0 T0", "T0 H0 H1", "T0 H1", "Tx", "T-1 H-1", "T1 H1"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(DiagramError):
            parse_diagram(bad)

    @given(diagrams)
    @settings(max_examples=200)
    def test_round_trip_property(self, g):
        assert parse_diagram(serialize_diagram(g)) == g


class TestCanonicalKey:
    def test_rotation_orbit_of_M(self):
        M = make_example_M()
        keys = {canonical_key(rotate(M, k)) for k in range(10)}
        assert len(keys) == 1

    def test_single_arrow_rotations_agree(self):
        assert canonical_key(parse_diagram("T0 H0")) == canonical_key(
            parse_diagram("H0 T0")
        )

    def test_mirror_M_differs(self):
        M = make_example_M()
        mirror = GaussDiagram(tuple(reversed(M.slots)))
        assert canonical_key(M) != canonical_key(mirror)

    @given(diagrams, st.integers(0, 13), st.randoms(use_true_random=False))
    @settings(max_examples=300)
    def test_rotation_and_relabeling_invariance(self, g, k, rng):
        perm = list(range(g.n))
        rng.shuffle(perm)
        relabeled = GaussDiagram(tuple((perm[a], r) for a, r in rotate(g, k).slots))
        assert canonical_key(relabeled) == canonical_key(g)

    @given(diagrams)
    @settings(max_examples=200)
    def test_pure_kernel_agrees(self, g):
        arrows = tuple(a for a, _ in g.slots)
        roles = tuple(r for _, r in g.slots)
        assert canonical_key(g) == _canonical_py.canonical_bytes(arrows, roles)

    def test_distinguishes_different_linking_data(self):
        g = parse_diagram("T0 T1 H0 H1")  # linked pair
        h = parse_diagram("T0 H0 T1 H1")  # unlinked pair
        assert canonical_key(g) != canonical_key(h)


class TestSignedKey:
    def test_rotations_one_key(self):
        M = make_example_M()
        keys = {
            canonical_key_signed(SignedDiagram(rotate(M, k), 2, +1)) for k in range(10)
        }
        assert len(keys) == 1

    def test_sign_embedded(self):
        M = make_example_M()
        assert canonical_key_signed(SignedDiagram(M, 2, +1)) != canonical_key_signed(
            SignedDiagram(M, 2, -1)
        )

    def test_distinguished_arrow_fixed(self):
        M = make_example_M()
        assert canonical_key_signed(SignedDiagram(M, 0, +1)) != canonical_key_signed(
            SignedDiagram(M, 1, +1)
        )


class TestSemiTrivial:
    def test_single_arrow(self):
        assert is_semi_trivial(SignedDiagram(parse_diagram("T0 H0"), 0, +1))

    @pytest.mark.parametrize("d", [0, 2])
    def test_M_terms_not_semi_trivial(self, d):
        assert not is_semi_trivial(SignedDiagram(make_example_M(), d, +1))

    @given(diagrams.filter(lambda g: g.n > 0), st.integers(0, 13), st.data())
    @settings(max_examples=200)
    def test_invariant_under_rotation(self, g, k, data):
        d = data.draw(st.integers(0, g.n - 1))
        sd = SignedDiagram(g, d, +1)
        assert is_semi_trivial(SignedDiagram(rotate(g, k), d, +1)) == is_semi_trivial(sd)


class TestGenerators:
    def test_M_has_five_arrows(self):
        assert make_example_M().n == 5

    def test_M_matrix_headline_entries(self):
        m = based_matrix(make_example_M())
        assert m.b[1][0] == 2  # n(A) = 2
        assert all(v == 0 for v in m.b[3])  # C is annihilating

    @pytest.mark.parametrize("p", range(1, 7))
    @pytest.mark.parametrize("q", range(1, 7))
    def test_alpha_arrow_count(self, p, q):
        assert make_alpha_pq(p, q).n == p + q

    def test_alpha_1_2_matrix_values(self):
        m = based_matrix(make_alpha_pq(1, 2))
        assert m.b[1][0] == 2
        assert m.b[2][0] == -1 and m.b[3][0] == -1

    def test_alpha_rejects_bad_args(self):
        with pytest.raises(DiagramError):
            make_alpha_pq(0, 2)
        with pytest.raises(DiagramError):
            make_alpha_pq(2, 0)
