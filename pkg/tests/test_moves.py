import random

import pytest

from virtstring.based_matrix import based_matrix, canonical_form, classify, reduce_to_primitive
from virtstring.diagram import (
    HEAD,
    TAIL,
    GaussDiagram,
    SignedDiagram,
    canonical_key,
    canonical_key_signed,
    make_example_M,
    parse_diagram,
    rotate,
    serialize_diagram,
)
from virtstring.moves import (
    ORDINARY_KINDS,
    BudgetExceeded,
    Move,
    MoveError,
    applicable_moves,
    apply_move,
    apply_signed_move,
    homotopic_bounded,
    homotopic_signed_bounded,
    path_from_json,
    path_to_json,
    signed_applicable_moves,
    type3_orbit,
)


def random_diagram(rng, n):
    slots = [(a, r) for a in range(n) for r in (TAIL, HEAD)]
    rng.shuffle(slots)
    return GaussDiagram(tuple(slots))


class TestEnumeration:
    def test_single_arrow_t1remove(self):
        moves = applicable_moves(parse_diagram("T0 H0"), ("T1Remove",))
        assert moves == [Move("T1Remove", (0,))]

    def test_empty_diagram_no_removals(self):
        assert applicable_moves(GaussDiagram(()), ("T2Remove", "T3a")) == []

    def test_M_admits_no_removals(self):
        assert applicable_moves(make_example_M(), ("T1Remove", "T2Remove")) == []

    def test_deterministic_order(self):
        g = make_example_M()
        assert applicable_moves(g) == applicable_moves(g)


class TestApply:
    def test_t1_add_then_remove(self):
        g = parse_diagram("T0 H1 H0 T1")
        for mv in applicable_moves(g, ("T1Add",)):
            h = apply_move(g, mv)
            assert h.n == g.n + 1
            back = [m for m in applicable_moves(h, ("T1Remove",))]
            assert any(
                canonical_key(apply_move(h, m)) == canonical_key(g) for m in back
            )

    def test_t2_add_then_remove(self):
        g = parse_diagram("T0 H0")
        for mv in applicable_moves(g, ("T2Add",))[:20]:
            h = apply_move(g, mv)
            assert h.n == g.n + 2
            back = applicable_moves(h, ("T2Remove",))
            assert any(
                canonical_key(apply_move(h, m)) == canonical_key(g) for m in back
            )

    def test_t3_preserves_arrow_count(self):
        rng = random.Random(0)
        seen = 0
        while seen < 30:
            g = random_diagram(rng, rng.randint(3, 6))
            for mv in applicable_moves(g, ("T3a", "T3b")):
                h = apply_move(g, mv)
                assert h.n == g.n
                seen += 1

    def test_every_move_has_inverse(self):
        rng = random.Random(1)
        checked = 0
        while checked < 150:
            g = random_diagram(rng, rng.randint(1, 5))
            moves = applicable_moves(g)
            if not moves:
                continue
            mv = rng.choice(moves)
            h = apply_move(g, mv)
            inverses = applicable_moves(h)
            assert any(
                canonical_key(apply_move(h, inv)) == canonical_key(g)
                for inv in inverses
            ), f"no inverse for {mv} on {serialize_diagram(g)}"
            checked += 1

    def test_inapplicable_raises(self):
        g = make_example_M()  # admits no removals at all
        with pytest.raises(MoveError):
            apply_move(g, Move("T1Remove", (0,)))
        with pytest.raises(MoveError):
            apply_move(g, Move("T2Remove", (0, 1)))


class TestMatrixEffects:
    def test_t2_add_creates_complementary_pair(self):
        rng = random.Random(2)
        for _ in range(30):
            g = random_diagram(rng, rng.randint(1, 4))
            mv = rng.choice(applicable_moves(g, ("T2Add",)))
            h = apply_move(g, mv)
            cls = classify(based_matrix(h))
            new = {h.n, h.n - 1}  # the two appended arrows sit at indices n-1, n
            assert any({i, j} == new for i, j in cls.complementary_pairs)

    def test_t1_add_creates_core_or_annihilating(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_diagram(rng, rng.randint(1, 4))
            mv = rng.choice(applicable_moves(g, ("T1Add",)))
            h = apply_move(g, mv)
            cls = classify(based_matrix(h))
            assert h.n in cls.core or h.n in cls.annihilating


class TestSignedMoves:
    def test_sst2_is_an_involution(self):
        g = parse_diagram("T0 H1 T2 H2 H0 T1")
        sd = SignedDiagram(g, 0, +1)
        sst2 = [m for m in signed_applicable_moves(sd) if m.kind == "SST2"]
        assert sst2
        once = apply_signed_move(sd, sst2[0])
        assert once.d == 1 and once.sign == -1
        again = apply_signed_move(once, sst2[0])
        assert again == sd

    def test_sst3_preserves_sign(self):
        rng = random.Random(4)
        seen = 0
        while seen < 20:
            g = random_diagram(rng, rng.randint(3, 6))
            for d in range(g.n):
                sd = SignedDiagram(g, d, +1)
                for mv in signed_applicable_moves(sd, ("SST3a", "SST3b")):
                    out = apply_signed_move(sd, mv)
                    assert out.sign == +1
                    seen += 1

    def test_ordinary_moves_never_touch_d(self):
        M = make_example_M()
        sd = SignedDiagram(M, 2, +1)
        for mv in signed_applicable_moves(sd, ("T1Remove", "T2Remove")):
            assert 2 not in mv.site

    def test_t1_add_leaves_d_and_sign(self):
        sd = SignedDiagram(make_example_M(), 2, +1)
        mv = signed_applicable_moves(sd, ("T1Add",))[0]
        out = apply_signed_move(sd, mv)
        assert out.d == 2 and out.sign == +1

    def test_removals_shift_d(self):
        g = parse_diagram("T0 H0 T1 H1")
        sd = SignedDiagram(g, 1, -1)
        out = apply_signed_move(sd, Move("T1Remove", (0,)))
        assert out.base.n == 1 and out.d == 0 and out.sign == -1


class TestOrbit:
    def test_single_arrow_is_reducible(self):
        cert = type3_orbit(parse_diagram("T0 H0"))
        assert cert.orbit_size == 1
        assert not cert.irreducible
        assert cert.witness[1].kind == "T1Remove"

    def test_M_is_irreducible_with_orbit_size_one(self):
        cert = type3_orbit(make_example_M())
        assert cert.irreducible
        assert cert.orbit_size == 1
        assert cert.witness is None

    def test_orbit_is_well_defined_on_members(self):
        rng = random.Random(5)
        for _ in range(10):
            g = random_diagram(rng, 4)
            cert = type3_orbit(g)
            for mv in applicable_moves(g, ("T3a", "T3b"))[:2]:
                cert2 = type3_orbit(apply_move(g, mv))
                assert cert2.orbit_size == cert.orbit_size
                assert cert2.irreducible == cert.irreducible

    def test_budget_is_an_error_not_a_verdict(self):
        rng = random.Random(6)
        for _ in range(100):
            g = random_diagram(rng, 6)
            if type3_orbit(g).orbit_size > 1:
                with pytest.raises(BudgetExceeded):
                    type3_orbit(g, max_states=1)
                return
        pytest.fail("no diagram with a nontrivial triangle orbit found")


class TestBoundedSearch:
    def test_rotation_is_trivially_yes(self):
        M = make_example_M()
        r = homotopic_bounded(M, rotate(M, 3))
        assert r.status == "yes" and r.path == ()

    def test_single_arrow_to_empty(self):
        r = homotopic_bounded(parse_diagram("T0 H0"), GaussDiagram(()))
        assert r.status == "yes"
        assert [m.kind for m in r.path] == ["T1Remove"]

    def test_M_not_reachable_from_empty_within_bounds(self):
        r = homotopic_bounded(
            make_example_M(), GaussDiagram(()), max_arrows=6, max_states=100_000
        )
        assert r.status == "no_within_bounds"

    def test_found_paths_replay(self):
        rng = random.Random(7)
        for _ in range(10):
            g = random_diagram(rng, 3)
            h = g
            for _ in range(3):
                h = apply_move(h, rng.choice(applicable_moves(h)))
            r = homotopic_bounded(g, h, max_arrows=max(g.n, h.n) + 3)
            assert r.status == "yes"
            state = g
            for mv in r.path:
                state = apply_move(state, mv)
            assert canonical_key(state) == canonical_key(h)
            replayed = path_from_json(path_to_json(r.path))
            assert replayed == r.path

    def test_budget_exceeded_status(self):
        r = homotopic_bounded(
            make_example_M(), GaussDiagram(()), max_arrows=7, max_states=50
        )
        assert r.status == "budget_exceeded"


class TestSignedSearch:
    def test_reflexive(self):
        sd = SignedDiagram(make_example_M(), 2, +1)
        assert homotopic_signed_bounded(sd, sd).status == "yes"

    def test_sst2_cancellation_pair(self):
        # two arrows forming a Type-2-cancellable pair: the two choices of
        # distinguished arrow with opposite signs are signed-homotopic
        g = parse_diagram("T0 H1 T2 H2 H0 T1")
        a = SignedDiagram(g, 0, +1)
        b = SignedDiagram(g, 1, -1)
        r = homotopic_signed_bounded(a, b)
        assert r.status == "yes"
        state = a
        for mv in r.path:
            state = apply_signed_move(state, mv)
        assert canonical_key_signed(state) == canonical_key_signed(b)

    def test_opposite_signs_on_M_not_found(self):
        M = make_example_M()
        r = homotopic_signed_bounded(
            SignedDiagram(M, 2, +1),
            SignedDiagram(M, 2, -1),
            max_arrows=6,
            max_states=5_000,
        )
        assert r.status == "no_within_bounds"


class TestMoveInvariance:
    def test_primitive_key_preserved_by_all_kinds(self):
        rng = random.Random(8)
        per_kind = {k: 0 for k in ORDINARY_KINDS}
        while min(per_kind.values()) < 10:
            g = random_diagram(rng, rng.randint(2, 6))
            for mv in applicable_moves(g):
                if per_kind[mv.kind] >= 10:
                    continue
                h = apply_move(g, mv)
                pg, _ = reduce_to_primitive(based_matrix(g))
                ph, _ = reduce_to_primitive(based_matrix(h))
                assert canonical_form(pg) == canonical_form(ph), mv
                per_kind[mv.kind] += 1
