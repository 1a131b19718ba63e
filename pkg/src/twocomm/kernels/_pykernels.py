"""Pure-Python enumeration kernels over M_m(F_p).

A matrix is encoded as the integer ``sum_k x_k p^k`` with ``x_k`` the entries
in row-major order.
"""


def decode(code, p, m):
    n = m * m
    out = [0] * n
    for k in range(n):
        code, out[k] = divmod(code, p)
    return out


def encode(entries, p):
    code = 0
    for x in reversed(entries):
        code = code * p + x
    return code


def _mul(x, y, p, m):
    out = [0] * (m * m)
    for r in range(m):
        for s in range(m):
            acc = 0
            for t in range(m):
                acc += x[r * m + t] * y[t * m + s]
            out[r * m + s] = acc % p
    return out


def commutator_bitmap(p, m):
    """Byte ``c`` is 1 iff the matrix with code ``c`` equals some ``xy - yx``."""
    total = p ** (m * m)
    mats = [decode(c, p, m) for c in range(total)]
    hit = bytearray(total)
    for i in range(total):
        x = mats[i]
        # [y, x] = -[x, y], so each unordered pair yields both
        for j in range(i + 1, total):
            y = mats[j]
            xy = _mul(x, y, p, m)
            yx = _mul(y, x, p, m)
            hit[encode([(a - b) % p for a, b in zip(xy, yx)], p)] = 1
            hit[encode([(b - a) % p for a, b in zip(xy, yx)], p)] = 1
    hit[0] = 1
    return hit


def product_bitmap(p, m, codes):
    """Byte ``c`` is 1 iff ``c`` encodes ``x y`` for some ``x, y`` among ``codes``."""
    total = p ** (m * m)
    mats = [decode(c, p, m) for c in codes]
    hit = bytearray(total)
    for x in mats:
        for y in mats:
            hit[encode(_mul(x, y, p, m), p)] = 1
    return hit
