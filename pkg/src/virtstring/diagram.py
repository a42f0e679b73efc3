"""Gauss diagrams of virtual strings and their signed singular variants.

A diagram is an oriented circle carrying ``n`` arrows; each arrow has a
tail and a head endpoint, and the ``2n`` endpoints occupy distinct slots
read counterclockwise around the circle.  Slot ``2n-1`` is adjacent to
slot ``0``.  The basepoint of the slot sequence is not meaningful: all
comparisons go through rotation-invariant canonical keys.

Text encoding: whitespace-separated tokens in slot order, each token a
role letter (``T`` tail, ``H`` head) followed by a decimal arrow id, e.g.
``"T0 H1 H0 T1"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

if os.environ.get("VIRTSTRING_PURE"):
    from . import _canonical_py as _kernel
else:
    try:
        from . import _canonical as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _canonical_py as _kernel

KERNEL_IMPLEMENTATION = _kernel.IMPLEMENTATION

TAIL = 0
HEAD = 1

_ROLE_CHAR = {TAIL: "T", HEAD: "H"}
_CHAR_ROLE = {"T": TAIL, "H": HEAD}


class DiagramError(ValueError):
    """Malformed diagram text or inconsistent endpoint data."""


@dataclass(frozen=True)
class GaussDiagram:
    """Immutable Gauss diagram; ``slots[i] = (arrow_id, role)``."""

    slots: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen: dict[int, set[int]] = {}
        for arrow, role in self.slots:
            if role not in (TAIL, HEAD):
                raise DiagramError(f"bad role {role!r}")
            roles = seen.setdefault(arrow, set())
            if role in roles:
                raise DiagramError(f"arrow {arrow} has two {_ROLE_CHAR[role]} endpoints")
            roles.add(role)
        n = len(seen)
        if sorted(seen) != list(range(n)):
            raise DiagramError("arrow ids must be 0..n-1")
        for arrow, roles in seen.items():
            if len(roles) != 2:
                raise DiagramError(f"arrow {arrow} is missing a head or tail")

    @property
    def n(self) -> int:
        return len(self.slots) // 2

    def endpoints(self, arrow: int) -> tuple[int, int]:
        """Slot positions ``(tail, head)`` of the given arrow."""
        tail = head = -1
        for i, (a, role) in enumerate(self.slots):
            if a == arrow:
                if role == TAIL:
                    tail = i
                else:
                    head = i
        if tail < 0 or head < 0:
            raise DiagramError(f"no arrow {arrow}")
        return tail, head

    def arc_interior(self, start: int, stop: int) -> Iterator[int]:
        """Slots strictly between ``start`` and ``stop`` counterclockwise."""
        m = len(self.slots)
        i = (start + 1) % m
        while i != stop:
            yield i
            i = (i + 1) % m


@dataclass(frozen=True)
class SignedDiagram:
    """Gauss diagram with a distinguished arrow carrying a sign."""

    base: GaussDiagram
    d: int
    sign: int

    def __post_init__(self):
        if not 0 <= self.d < self.base.n:
            raise DiagramError(f"distinguished arrow {self.d} out of range")
        if self.sign not in (+1, -1):
            raise DiagramError(f"sign must be +1 or -1, got {self.sign}")


def parse_diagram(text: str) -> GaussDiagram:
    """Parse the arrow-list encoding; inverse of :func:`serialize_diagram`."""
    slots = []
    for tok in text.split():
        role = _CHAR_ROLE.get(tok[0])
        if role is None:
            raise DiagramError(f"bad token {tok!r}: must start with T or H")
        try:
            arrow = int(tok[1:])
        except ValueError:
            raise DiagramError(f"bad token {tok!r}: arrow id is not an integer") from None
        if arrow < 0:
            raise DiagramError(f"bad token {tok!r}: negative arrow id")
        slots.append((arrow, role))
    return GaussDiagram(tuple(slots))


def serialize_diagram(g: GaussDiagram) -> str:
    return " ".join(f"{_ROLE_CHAR[role]}{arrow}" for arrow, role in g.slots)


def rotate(g: GaussDiagram, k: int) -> GaussDiagram:
    """Rotate the slot sequence so old slot ``k`` becomes slot ``0``."""
    m = len(g.slots)
    if m == 0:
        return g
    k %= m
    return GaussDiagram(g.slots[k:] + g.slots[:k])


def canonical_key(g: GaussDiagram) -> bytes:
    """Equal for two diagrams iff they differ by rotation and relabeling."""
    arrows = tuple(a for a, _ in g.slots)
    roles = tuple(r for _, r in g.slots)
    return _kernel.canonical_bytes(arrows, roles)


def canonical_key_signed(g: SignedDiagram) -> bytes:
    """Signed analogue; the relabeling must fix the distinguished arrow and
    the sign is embedded in the key."""
    arrows = tuple(a for a, _ in g.base.slots)
    roles = tuple(r for _, r in g.base.slots)
    return _kernel.canonical_bytes_signed(arrows, roles, g.d, g.sign)


def is_semi_trivial(g: SignedDiagram) -> bool:
    """True iff the distinguished arrow's endpoints occupy adjacent slots,
    i.e. one of the two arcs it bounds is empty."""
    m = len(g.base.slots)
    tail, head = g.base.endpoints(g.d)
    return (tail + 1) % m == head or (head + 1) % m == tail


def make_example_M() -> GaussDiagram:
    """The 5-arrow benchmark string with arrows A..E mapped to ids 0..4.

    Convention resolution: reading the cyclic word ABCADBECDE with the
    first occurrence of each letter as the arrow head and the second as
    the tail reproduces the published based matrix exactly (the opposite
    role assignment yields its transpose).
    """
    word = "ABCADBECDE"
    first_seen: dict[str, int] = {}
    slots = []
    for ch in word:
        arrow = ord(ch) - ord("A")
        if ch not in first_seen:
            first_seen[ch] = 1
            slots.append((arrow, HEAD))
        else:
            slots.append((arrow, TAIL))
    return GaussDiagram(tuple(slots))


def make_alpha_pq(p: int, q: int) -> GaussDiagram:
    """The (p+q)-arrow string with p "vertical" and q "horizontal" arrows.

    Arrows 0..p-1 are vertical, arrows p..p+q-1 horizontal.  The circle is
    split into four blocks of endpoints; the block order below is pinned by
    the construction-time self-check of the matrix identities
    ``b(vertical, s) = q``, ``b(horizontal, s) = -p`` and the vanishing of
    ``b`` on vertical-vertical and horizontal-horizontal pairs.
    """
    if p < 1 or q < 1:
        raise DiagramError("make_alpha_pq requires p >= 1 and q >= 1")
    vert = list(range(p))
    horiz = list(range(p, p + q))
    slots = []
    slots += [(a, TAIL) for a in vert]
    slots += [(a, TAIL) for a in horiz]
    slots += [(a, HEAD) for a in reversed(vert)]
    slots += [(a, HEAD) for a in reversed(horiz)]
    g = GaussDiagram(tuple(slots))
    _check_alpha_pq(g, p, q)
    return g


def _check_alpha_pq(g: GaussDiagram, p: int, q: int) -> None:
    # Guards the block order above; a wrong arrangement cannot ship silently.
    from .based_matrix import based_matrix

    m = based_matrix(g)
    for i in range(p):
        if m.b[1 + i][0] != q:
            raise AssertionError("alpha_pq self-check failed: b(vertical, s) != q")
    for j in range(q):
        if m.b[1 + p + j][0] != -p:
            raise AssertionError("alpha_pq self-check failed: b(horizontal, s) != -p")
    for i in range(p):
        for j in range(p):
            if i != j and m.b[1 + i][1 + j] != 0:
                raise AssertionError("alpha_pq self-check failed: vertical pair")
    for i in range(q):
        for j in range(q):
            if i != j and m.b[1 + p + i][1 + p + j] != 0:
                raise AssertionError("alpha_pq self-check failed: horizontal pair")
