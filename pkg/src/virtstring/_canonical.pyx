# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical-form kernels.  Mirrors ``_canonical_py`` exactly."""

IMPLEMENTATION = "cython"


def canonical_bytes(tuple arrows, tuple roles):
    cdef int m = len(arrows)
    if m == 0:
        return b""
    cdef int i, j, r, a, k, nlab
    cdef int arr[256]
    cdef int rol[256]
    cdef int relabel[256]
    cdef unsigned char out[256]
    cdef unsigned char best[256]
    cdef bint have_best = False, smaller
    if m > 256:
        raise ValueError("diagram too large for compiled kernel")
    for i in range(m):
        arr[i] = arrows[i]
        rol[i] = roles[i]
    for r in range(m):
        for i in range(m):
            relabel[i] = -1
        nlab = 0
        for i in range(m):
            j = i + r
            if j >= m:
                j -= m
            a = arr[j]
            k = relabel[a]
            if k < 0:
                k = nlab
                relabel[a] = k
                nlab += 1
            out[i] = 2 * k + rol[j]
        if not have_best:
            for i in range(m):
                best[i] = out[i]
            have_best = True
        else:
            smaller = False
            for i in range(m):
                if out[i] != best[i]:
                    smaller = out[i] < best[i]
                    break
            if smaller:
                for i in range(m):
                    best[i] = out[i]
    return bytes(bytearray([best[i] for i in range(m)]))


def canonical_bytes_signed(tuple arrows, tuple roles, int dist, int sign):
    cdef int m = len(arrows)
    cdef unsigned char sign_byte = 1 if sign > 0 else 0
    if m == 0:
        return bytes(bytearray([sign_byte]))
    cdef int i, j, r, a, k, nlab
    cdef int arr[256]
    cdef int rol[256]
    cdef int relabel[256]
    cdef unsigned char out[258]
    cdef unsigned char best[258]
    cdef bint have_best = False, smaller
    if m > 256:
        raise ValueError("diagram too large for compiled kernel")
    for i in range(m):
        arr[i] = arrows[i]
        rol[i] = roles[i]
    for r in range(m):
        for i in range(m):
            relabel[i] = -1
        nlab = 0
        for i in range(m):
            j = i + r
            if j >= m:
                j -= m
            a = arr[j]
            k = relabel[a]
            if k < 0:
                k = nlab
                relabel[a] = k
                nlab += 1
            out[i] = 2 * k + rol[j]
        out[m] = relabel[dist]
        out[m + 1] = sign_byte
        if not have_best:
            for i in range(m + 2):
                best[i] = out[i]
            have_best = True
        else:
            smaller = False
            for i in range(m + 2):
                if out[i] != best[i]:
                    smaller = out[i] < best[i]
                    break
            if smaller:
                for i in range(m + 2):
                    best[i] = out[i]
    return bytes(bytearray([best[i] for i in range(m + 2)]))
