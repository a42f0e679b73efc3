"""Homotopy moves on Gauss diagrams and bounded search built on them.

Move kinds
----------
``T1Add``/``T1Remove``
    Add or delete an arrow whose endpoints are adjacent.
``T2Add``/``T2Remove``
    Add or delete a pair of oppositely-directed arrows whose tail/head
    endpoints sit in two empty arcs.
``T3a``/``T3b``
    Triangle moves: three arrows with endpoints in three empty two-slot
    arcs exchange positions within each arc.  Each carries a direction
    flag because the forward and inverse endpoint patterns differ.
``SST2``
    Signed singular move on a Type-2-cancellable arrow pair containing
    the distinguished arrow: the distinction jumps to the partner arrow
    and the sign flips; the underlying diagram is unchanged.

Sites use slot indices valid only for the diagram the move was
enumerated on; arrow ids above a removed arrow shift down to keep ids
compact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .diagram import (
    HEAD,
    TAIL,
    GaussDiagram,
    SignedDiagram,
    canonical_key,
    canonical_key_signed,
    serialize_diagram,
)

ORDINARY_KINDS = ("T1Add", "T1Remove", "T2Add", "T2Remove", "T3a", "T3b")
SIGNED_KINDS = ORDINARY_KINDS + ("SST2", "SST3a", "SST3b")

DEFAULT_MAX_STATES = 10**6


class MoveError(ValueError):
    """Move not applicable to the given diagram."""


class BudgetExceeded(RuntimeError):
    """Search aborted on its state budget; the question is unresolved."""


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    site: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": list(self.site)}

    @staticmethod
    def from_json(obj: dict) -> "Move":
        site = obj["site"]
        return Move(obj["kind"], tuple(tuple(x) if isinstance(x, list) else x for x in site))


def _gap_count(g: GaussDiagram) -> int:
    return max(1, len(g.slots))


def _adjacent_pairs(g: GaussDiagram):
    """Slot indices p such that slots p and p+1 (cyclically) exist and
    belong to two different arrows."""
    m = len(g.slots)
    for p in range(m):
        q = (p + 1) % m
        if q != p and g.slots[p][0] != g.slots[q][0]:
            yield p


def _t3_sites(g: GaussDiagram):
    """All (kind, direction, pair-triple) triangle sites."""
    m = len(g.slots)
    pairs = list(_adjacent_pairs(g))
    out = []
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            for k in range(j + 1, len(pairs)):
                triple = (pairs[i], pairs[j], pairs[k])
                used = set()
                for p in triple:
                    used.add(p)
                    used.add((p + 1) % m)
                if len(used) != 6:
                    continue
                arrows = [g.slots[p][0] for p in triple] + [
                    g.slots[(p + 1) % m][0] for p in triple
                ]
                if len(set(arrows)) != 3:
                    continue
                site = _classify_triangle(g, triple)
                if site is not None:
                    out.append(site + (triple,))
    return out


def _classify_triangle(g: GaussDiagram, triple):
    """Return (kind, direction) if the three adjacent pairs form a legal
    triangle move site, else None."""
    m = len(g.slots)
    left = [g.slots[p] for p in triple]
    right = [g.slots[(p + 1) % m] for p in triple]
    forms = [(left[i][1], right[i][1]) for i in range(3)]
    if all(f == (HEAD, TAIL) for f in forms):
        # forward 3a: the arrow tailed in one pair must be headed in another
        if any(left[i][0] == right[i][0] for i in range(3)):
            return None
        return ("T3a", "fwd")
    if all(f == (TAIL, HEAD) for f in forms):
        if any(left[i][0] == right[i][0] for i in range(3)):
            return None
        return ("T3a", "rev")
    by_form = {}
    for i in range(3):
        by_form.setdefault(forms[i], []).append(i)
    if sorted(by_form) == sorted([(TAIL, TAIL), (HEAD, TAIL), (HEAD, HEAD)]):
        tt, ht, hh = (by_form[f][0] for f in [(TAIL, TAIL), (HEAD, TAIL), (HEAD, HEAD)])
        x, y = left[tt][0], right[tt][0]
        if (
            left[ht][0] == x
            and left[hh][0] == y
            and right[hh][0] == right[ht][0]
        ):
            return ("T3b", "fwd")
        return None
    if sorted(by_form) == sorted([(TAIL, TAIL), (TAIL, HEAD), (HEAD, HEAD)]):
        tt, th, hh = (by_form[f][0] for f in [(TAIL, TAIL), (TAIL, HEAD), (HEAD, HEAD)])
        y, x = left[tt][0], right[tt][0]
        if (
            right[th][0] == x
            and right[hh][0] == y
            and left[hh][0] == left[th][0]
        ):
            return ("T3b", "rev")
        return None
    return None


def _t2_remove_sites(g: GaussDiagram):
    """Arrow pairs (e, f) removable by the inverse Type 2 move."""
    m = len(g.slots)

    def adjacent(p, q):
        return (p + 1) % m == q or (q + 1) % m == p

    out = []
    for e in range(g.n):
        te, he = g.endpoints(e)
        for f in range(e + 1, g.n):
            tf, hf = g.endpoints(f)
            if adjacent(te, hf) and adjacent(he, tf):
                out.append((e, f))
    return out


def applicable_moves(g: GaussDiagram, kinds: Iterable[str] | None = None) -> list[Move]:
    """Complete, deterministically ordered enumeration of legal moves."""
    kinds = set(ORDINARY_KINDS if kinds is None else kinds)
    moves = []
    m = len(g.slots)
    if "T1Add" in kinds:
        for gap in range(_gap_count(g)):
            for direction in ("TH", "HT"):
                moves.append(Move("T1Add", (gap, direction)))
    if "T1Remove" in kinds:
        for e in range(g.n):
            t, h = g.endpoints(e)
            if (t + 1) % m == h or (h + 1) % m == t:
                moves.append(Move("T1Remove", (e,)))
    if "T2Add" in kinds:
        gaps = _gap_count(g)
        for g1 in range(gaps):
            for g2 in range(g1, gaps):
                for form in range(4):
                    moves.append(Move("T2Add", (g1, g2, form)))
    if "T2Remove" in kinds:
        for e, f in _t2_remove_sites(g):
            moves.append(Move("T2Remove", (e, f)))
    if "T3a" in kinds or "T3b" in kinds:
        for kind, direction, triple in _t3_sites(g):
            if kind in kinds:
                moves.append(Move(kind, (direction, triple)))
    moves.sort()
    return moves


def _insert(slots: list, gap: int, items: list) -> list:
    return slots[:gap] + items + slots[gap:]


def _remove_arrows(slots, drop: set[int]):
    """Delete all endpoints of the given arrows and compact the ids."""
    kept = [(a, r) for a, r in slots if a not in drop]
    remap = {}
    for a, _ in kept:
        if a not in remap:
            remap[a] = None
    ids = sorted(remap)
    remap = {a: i for i, a in enumerate(ids)}
    return [(remap[a], r) for a, r in kept], remap


def apply_move(g: GaussDiagram, move: Move) -> GaussDiagram:
    """Apply a move enumerated on ``g``; raises MoveError on a bad site."""
    slots = list(g.slots)
    m = len(slots)
    n = g.n
    if move.kind == "T1Add":
        gap, direction = move.site
        if not 0 <= gap < _gap_count(g) or direction not in ("TH", "HT"):
            raise MoveError(f"bad T1Add site {move.site}")
        pair = [(n, TAIL), (n, HEAD)] if direction == "TH" else [(n, HEAD), (n, TAIL)]
        return GaussDiagram(tuple(_insert(slots, gap, pair)))
    if move.kind == "T1Remove":
        (e,) = move.site
        if not 0 <= e < n:
            raise MoveError(f"no arrow {e}")
        t, h = g.endpoints(e)
        if (t + 1) % m != h and (h + 1) % m != t:
            raise MoveError(f"arrow {e} endpoints are not adjacent")
        new, _ = _remove_arrows(slots, {e})
        return GaussDiagram(tuple(new))
    if move.kind == "T2Add":
        g1, g2, form = move.site
        gaps = _gap_count(g)
        if not (0 <= g1 <= g2 < gaps and 0 <= form < 4):
            raise MoveError(f"bad T2Add site {move.site}")
        e, f = n, n + 1
        first = [(e, TAIL), (f, HEAD)]  # endpoints a, a'
        second = [(e, HEAD), (f, TAIL)]  # endpoints b, b'
        if form & 1:
            first.reverse()
        if form & 2:
            second.reverse()
        slots = _insert(slots, g2, second)
        slots = _insert(slots, g1, first)
        return GaussDiagram(tuple(slots))
    if move.kind == "T2Remove":
        e, f = move.site
        if tuple(sorted((e, f))) not in {tuple(sorted(p)) for p in _t2_remove_sites(g)}:
            raise MoveError(f"arrows {e},{f} are not a Type-2-cancellable pair")
        new, _ = _remove_arrows(slots, {e, f})
        return GaussDiagram(tuple(new))
    if move.kind in ("T3a", "T3b"):
        direction, triple = move.site
        site = _classify_triangle(g, triple)
        if site != (move.kind, direction):
            raise MoveError(f"slots {triple} are not a {move.kind}/{direction} site")
        for p in triple:
            q = (p + 1) % m
            slots[p], slots[q] = slots[q], slots[p]
        return GaussDiagram(tuple(slots))
    raise MoveError(f"unknown move kind {move.kind!r}")


def signed_applicable_moves(
    sg: SignedDiagram, kinds: Iterable[str] | None = None
) -> list[Move]:
    """Moves legal on a signed diagram.

    Ordinary Type 1/2 moves must not touch the distinguished arrow;
    Type 3 moves may involve it (sign preserved).  ``SST2`` sites are the
    Type-2-cancellable pairs containing the distinguished arrow.
    """
    kinds = set(SIGNED_KINDS if kinds is None else kinds)
    g, d = sg.base, sg.d
    # Type 3 moves involving the distinguished arrow are the signed
    # singular variants; relabel the kind so replay records say so.
    want_t3 = {"T3a", "T3b", "SST3a", "SST3b"} & kinds
    enum_kinds = (kinds & {"T1Add", "T1Remove", "T2Add", "T2Remove"}) | (
        {"T3a", "T3b"} if want_t3 else set()
    )
    moves = []
    for mv in applicable_moves(g, enum_kinds):
        if mv.kind == "T1Remove" and mv.site[0] == d:
            continue
        if mv.kind == "T2Remove" and d in mv.site:
            continue
        if mv.kind in ("T3a", "T3b"):
            _, triple = mv.site
            m = len(g.slots)
            touched = {g.slots[p][0] for p in triple} | {
                g.slots[(p + 1) % m][0] for p in triple
            }
            kind = ("SS" + mv.kind) if d in touched else mv.kind
            if kind not in kinds:
                continue
            mv = Move(kind, mv.site)
        moves.append(mv)
    if "SST2" in kinds:
        for e, f in _t2_remove_sites(g):
            if d in (e, f):
                moves.append(Move("SST2", (e, f)))
    moves.sort()
    return moves


def apply_signed_move(sg: SignedDiagram, move: Move) -> SignedDiagram:
    """Apply a signed-legal move, tracking the distinguished arrow."""
    g, d, sign = sg.base, sg.d, sg.sign
    if move.kind == "SST2":
        e, f = move.site
        if d not in (e, f):
            raise MoveError("SST2 must involve the distinguished arrow")
        if tuple(sorted((e, f))) not in {tuple(sorted(p)) for p in _t2_remove_sites(g)}:
            raise MoveError(f"arrows {e},{f} are not a Type-2-cancellable pair")
        return SignedDiagram(g, f if d == e else e, -sign)
    if move.kind == "T1Remove" and move.site[0] == d:
        raise MoveError("ordinary move may not remove the distinguished arrow")
    if move.kind == "T2Remove" and d in move.site:
        raise MoveError("ordinary move may not remove the distinguished arrow")
    if move.kind in ("SST3a", "SST3b"):
        move = Move(move.kind[2:], move.site)
    new = apply_move(g, move)
    if move.kind == "T1Remove":
        d = d - 1 if d > move.site[0] else d
    elif move.kind == "T2Remove":
        d = d - sum(1 for e in move.site if e < d)
    return SignedDiagram(new, d, sign)


@dataclass(frozen=True)
class OrbitCertificate:
    """Result of closing a diagram under the triangle moves."""

    start_key: bytes
    orbit_size: int
    irreducible: bool
    witness: tuple | None  # (diagram text, Move) if reducible
    max_states: int

    def to_json(self) -> dict:
        return {
            "start_key": self.start_key.hex(),
            "orbit_size": self.orbit_size,
            "irreducible": self.irreducible,
            "witness": None
            if self.witness is None
            else {"diagram": self.witness[0], "move": self.witness[1].to_json()},
            "max_states": self.max_states,
        }


def type3_orbit(g: GaussDiagram, max_states: int = DEFAULT_MAX_STATES) -> OrbitCertificate:
    """BFS closure of the diagram under both triangle moves.

    The certificate is an irreducibility proof: if no orbit member admits
    a crossing-removing Type 1 or Type 2 move, the diagram realizes its
    minimal self-intersection number.  Exceeding the budget raises
    BudgetExceeded instead of returning a false verdict.
    """
    start = canonical_key(g)
    seen = {start: g}
    frontier = [start]
    witness = None
    while frontier:
        next_frontier = []
        for key in sorted(frontier):
            state = seen[key]
            if witness is None:
                reducing = applicable_moves(state, ("T1Remove", "T2Remove"))
                if reducing:
                    witness = (serialize_diagram(state), reducing[0])
            for mv in applicable_moves(state, ("T3a", "T3b")):
                new = apply_move(state, mv)
                nk = canonical_key(new)
                if nk not in seen:
                    if len(seen) >= max_states:
                        raise BudgetExceeded(
                            f"triangle orbit exceeded {max_states} states"
                        )
                    seen[nk] = new
                    next_frontier.append(nk)
        frontier = next_frontier
    return OrbitCertificate(start, len(seen), witness is None, witness, max_states)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded homotopy search."""

    status: str  # "yes" | "no_within_bounds" | "budget_exceeded"
    path: tuple[Move, ...] | None = None

    @property
    def found(self) -> bool:
        return self.status == "yes"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "path": None if self.path is None else [m.to_json() for m in self.path],
        }


def _neighbors(g: GaussDiagram, max_arrows: int):
    for mv in applicable_moves(g):
        if mv.kind in ("T1Add",) and g.n + 1 > max_arrows:
            continue
        if mv.kind in ("T2Add",) and g.n + 2 > max_arrows:
            continue
        yield mv, apply_move(g, mv)


def _signed_neighbors(sg: SignedDiagram, max_arrows: int):
    for mv in signed_applicable_moves(sg):
        if mv.kind == "T1Add" and sg.base.n + 1 > max_arrows:
            continue
        if mv.kind == "T2Add" and sg.base.n + 2 > max_arrows:
            continue
        yield mv, apply_signed_move(sg, mv)


def _bidirectional_search(start, goal, key_fn, neighbor_fn, max_states):
    """Generic bidirectional BFS; returns the meeting chains or None.

    Returns (status, fwd_chain, bwd_chain) where the chains are state
    lists from start to the meeting state and from goal to the meeting
    state respectively.
    """
    ks, kg = key_fn(start), key_fn(goal)
    sides = [
        {"seen": {ks: (None, start)}, "frontier": [ks]},
        {"seen": {kg: (None, goal)}, "frontier": [kg]},
    ]
    if ks == kg:
        return "yes", [ks], [kg]

    def chain(side_idx, key):
        out = []
        while key is not None:
            out.append(key)
            key = sides[side_idx]["seen"][key][0]
        out.reverse()
        return out

    states = 2
    while sides[0]["frontier"] and sides[1]["frontier"]:
        idx = 0 if len(sides[0]["frontier"]) <= len(sides[1]["frontier"]) else 1
        side, other = sides[idx], sides[1 - idx]
        next_frontier = []
        for key in sorted(side["frontier"]):
            state = side["seen"][key][1]
            for _, new in neighbor_fn(state):
                nk = key_fn(new)
                if nk in side["seen"]:
                    continue
                states += 1
                if states > max_states:
                    return "budget_exceeded", None, None
                side["seen"][nk] = (key, new)
                if nk in other["seen"]:
                    return "yes", chain(0, nk), chain(1, nk)
                next_frontier.append(nk)
        side["frontier"] = next_frontier
    return "no_within_bounds", None, None


def _recover_path(start, key_seq, key_fn, neighbor_fn):
    """Rebuild a concrete move path visiting the given key sequence."""
    path = []
    state = start
    for target in key_seq[1:]:
        for mv, new in neighbor_fn(state):
            if key_fn(new) == target:
                path.append(mv)
                state = new
                break
        else:
            raise RuntimeError("path reconstruction failed")
    return path, state


def homotopic_bounded(
    g: GaussDiagram,
    h: GaussDiagram,
    max_arrows: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> SearchResult:
    """Bidirectional move search for a homotopy between two diagrams.

    ``no_within_bounds`` is not a proof of inequivalence, only that no
    path exists through diagrams of at most ``max_arrows`` arrows.
    """
    if max_arrows is None:
        max_arrows = max(g.n, h.n) + 2
    if max_arrows < max(g.n, h.n):
        raise ValueError("max_arrows below the arrow count of an endpoint")

    def neighbor_fn(state):
        return _neighbors(state, max_arrows)

    status, fwd, bwd = _bidirectional_search(g, h, canonical_key, neighbor_fn, max_states)
    if status != "yes":
        return SearchResult(status)
    path, meet_state = _recover_path(g, fwd, canonical_key, neighbor_fn)
    # walk the goal-side chain backwards from the meeting state
    back, _ = _recover_path(meet_state, list(reversed(bwd)), canonical_key, neighbor_fn)
    return SearchResult("yes", tuple(path + back))


def homotopic_signed_bounded(
    g: SignedDiagram,
    h: SignedDiagram,
    max_arrows: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> SearchResult:
    """Signed-move analogue of :func:`homotopic_bounded`."""
    if max_arrows is None:
        max_arrows = max(g.base.n, h.base.n) + 2
    if max_arrows < max(g.base.n, h.base.n):
        raise ValueError("max_arrows below the arrow count of an endpoint")

    def neighbor_fn(state):
        return _signed_neighbors(state, max_arrows)

    status, fwd, bwd = _bidirectional_search(
        g, h, canonical_key_signed, neighbor_fn, max_states
    )
    if status != "yes":
        return SearchResult(status)
    path, meet_state = _recover_path(g, fwd, canonical_key_signed, neighbor_fn)
    back, _ = _recover_path(meet_state, list(reversed(bwd)), canonical_key_signed, neighbor_fn)
    return SearchResult("yes", tuple(path + back))


def path_to_json(path: Iterable[Move]) -> str:
    return json.dumps([m.to_json() for m in path])


def path_from_json(text: str) -> tuple[Move, ...]:
    return tuple(Move.from_json(obj) for obj in json.loads(text))
