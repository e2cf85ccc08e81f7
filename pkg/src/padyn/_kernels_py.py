"""Pure-Python polynomial kernels over Z/mZ.

Products use Kronecker substitution: both operands are packed into single
Python integers, multiplied once (CPython uses Karatsuba for large ints) and
unpacked. All inputs are lists of nonnegative ints already reduced mod m;
all outputs are reduced mod m.
"""

BACKEND = "python"


def _width(m, n):
    # bytes per slot: a product coefficient is a sum of n terms < m*m
    bits = 2 * (m - 1).bit_length() + max(n, 1).bit_length() + 1
    return (bits + 7) // 8


def _pack(a, w):
    return int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")


def _unpack(z, w, n, m):
    nbytes = w * n
    if z.bit_length() > 8 * nbytes:
        z &= (1 << (8 * nbytes)) - 1
    raw = z.to_bytes(nbytes, "little")
    return [int.from_bytes(raw[i * w:(i + 1) * w], "little") % m for i in range(n)]


def mul(a, b, m):
    """Full product of two coefficient lists mod m."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if la == 1 or lb == 1:
        s, v = (a[0], b) if la == 1 else (b[0], a)
        return [(s * c) % m for c in v]
    w = _width(m, min(la, lb))
    z = _pack(a, w) * _pack(b, w)
    if z == 0:
        return [0] * n
    return _unpack(z, w, n, m)


def mul_trunc(a, b, n, m):
    """Product mod (X^n, m)."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    w = _width(m, min(len(a), len(b)))
    z = _pack(a, w) * _pack(b, w)
    out_len = min(n, len(a) + len(b) - 1)
    out = _unpack(z, w, out_len, m) if z else [0] * out_len
    out.extend([0] * (n - out_len))
    return out


def compose_trunc(f, g, n, m):
    """f(g(X)) mod (X^n, m) by Horner; g[0] must be 0."""
    acc = [0] * n
    top = min(len(f), n) - 1
    while top > 0 and f[top] == 0:
        top -= 1
    if top <= 0:
        acc[0] = f[0] % m if f else 0
        return acc
    acc[0] = f[top]
    for k in range(top - 1, -1, -1):
        acc = mul_trunc(acc, g, n, m)
        acc[0] = (acc[0] + f[k]) % m
    return acc


def rem_monic(a, g, m):
    """Remainder of a modulo the monic polynomial g, coefficients mod m."""
    k = len(g) - 1
    r = [c % m for c in a]
    if len(r) <= k:
        return r + [0] * (k - len(r))
    low = g[:k]
    for i in range(len(r) - 1, k - 1, -1):
        c = r[i]
        if c:
            base = i - k
            for j in range(k):
                r[base + j] = (r[base + j] - c * low[j]) % m
    return r[:k]
