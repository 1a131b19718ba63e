# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels over M_m(F_p); same encoding as the fallback."""

from libc.stdlib cimport malloc, free


cdef void _decode_all(long* out, long total, long p, long n):
    cdef long c, k, v
    for c in range(total):
        v = c
        for k in range(n):
            out[c * n + k] = v % p
            v //= p


cdef inline long _encode(long* x, long p, long n):
    cdef long code = 0
    cdef long k
    for k in range(n - 1, -1, -1):
        code = code * p + x[k]
    return code


cdef inline void _mul(long* x, long* y, long* out, long p, long m):
    cdef long r, s, t, acc
    for r in range(m):
        for s in range(m):
            acc = 0
            for t in range(m):
                acc += x[r * m + t] * y[t * m + s]
            out[r * m + s] = acc % p


def commutator_bitmap(long p, long m):
    cdef long n = m * m
    cdef long total = p ** n
    cdef long i, j, k
    cdef long* mats = <long*> malloc(total * n * sizeof(long))
    cdef long* xy = <long*> malloc(n * sizeof(long))
    cdef long* yx = <long*> malloc(n * sizeof(long))
    cdef long* d = <long*> malloc(n * sizeof(long))
    hit = bytearray(total)
    cdef unsigned char[:] h = hit
    try:
        _decode_all(mats, total, p, n)
        for i in range(total):
            for j in range(i + 1, total):
                _mul(&mats[i * n], &mats[j * n], xy, p, m)
                _mul(&mats[j * n], &mats[i * n], yx, p, m)
                for k in range(n):
                    d[k] = (xy[k] - yx[k] + p) % p
                h[_encode(d, p, n)] = 1
                for k in range(n):
                    d[k] = (p - d[k]) % p
                h[_encode(d, p, n)] = 1
        h[0] = 1
    finally:
        free(mats)
        free(xy)
        free(yx)
        free(d)
    return hit


def product_bitmap(long p, long m, codes):
    cdef long n = m * m
    cdef long total = p ** n
    cdef long count = len(codes)
    cdef long i, j, k, v
    cdef long* mats = <long*> malloc(max(count, 1) * n * sizeof(long))
    cdef long* out = <long*> malloc(n * sizeof(long))
    hit = bytearray(total)
    cdef unsigned char[:] h = hit
    try:
        for i in range(count):
            v = codes[i]
            for k in range(n):
                mats[i * n + k] = v % p
                v //= p
        for i in range(count):
            for j in range(count):
                _mul(&mats[i * n], &mats[j * n], out, p, m)
                h[_encode(out, p, n)] = 1
    finally:
        free(mats)
        free(out)
    return hit
