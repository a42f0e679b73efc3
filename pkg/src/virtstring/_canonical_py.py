"""Pure-Python canonical-form kernels for Gauss diagram keys.

These are the reference implementations of the hot loops; a compiled
Cython twin lives in ``_canonical.pyx`` and is preferred at import time
when available.  Both must produce byte-identical output.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def canonical_bytes(arrows: tuple, roles: tuple) -> bytes:
    """Lexicographically least serialization over all rotations.

    ``arrows[i]``/``roles[i]`` describe slot ``i`` on the circle.  For each
    rotation the arrows are relabeled in order of first appearance, so the
    result is invariant under rotation and arrow relabeling.  Each slot is
    encoded as one byte ``2*label + role``.
    """
    m = len(arrows)
    if m == 0:
        return b""
    best = None
    for r in range(m):
        relabel = {}
        out = bytearray(m)
        for i in range(m):
            j = i + r
            if j >= m:
                j -= m
            a = arrows[j]
            k = relabel.get(a)
            if k is None:
                k = len(relabel)
                relabel[a] = k
            out[i] = 2 * k + roles[j]
        cand = bytes(out)
        if best is None or cand < best:
            best = cand
    return best


def canonical_bytes_signed(arrows: tuple, roles: tuple, dist: int, sign: int) -> bytes:
    """Like :func:`canonical_bytes` but the key also pins the distinguished
    arrow (via its rotation-dependent relabel) and the sign.

    ``sign`` must be +1 or -1; it is encoded in the final byte.
    """
    m = len(arrows)
    sign_byte = 1 if sign > 0 else 0
    if m == 0:
        return bytes([sign_byte])
    best = None
    for r in range(m):
        relabel = {}
        out = bytearray(m + 2)
        for i in range(m):
            j = i + r
            if j >= m:
                j -= m
            a = arrows[j]
            k = relabel.get(a)
            if k is None:
                k = len(relabel)
                relabel[a] = k
            out[i] = 2 * k + roles[j]
        out[m] = relabel[dist]
        out[m + 1] = sign_byte
        cand = bytes(out)
        if best is None or cand < best:
            best = cand
    return best
