# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over Z/mZ.

Moduli below 2**62 run in C with 128-bit accumulators. Larger moduli are
handed to the Kronecker-substitution routines of the pure-Python module,
which already spend their time inside CPython's bignum multiply.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

from padyn import _kernels_py as _py

BACKEND = "cython"

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

cdef int SMALL_BITS = 62
# products are < 2**124, so 15 of them fit in an unsigned 128-bit word
cdef int FLUSH = 15


cdef inline bint _small(object m):
    return m.bit_length() <= SMALL_BITS


cdef uint64_t* _load(object a, Py_ssize_t n, uint64_t mod) except NULL:
    cdef uint64_t* buf = <uint64_t*>malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef Py_ssize_t la = len(a)
    for i in range(n):
        buf[i] = (<uint64_t>(a[i] % mod)) if i < la else 0
    return buf


cdef void _conv(uint64_t* a, Py_ssize_t la, uint64_t* b, Py_ssize_t lb,
                uint64_t* out, Py_ssize_t n, uint64_t mod) nogil:
    cdef Py_ssize_t k, i, lo, hi, cnt
    cdef u128 acc
    for k in range(n):
        lo = k - lb + 1
        if lo < 0:
            lo = 0
        hi = k
        if hi > la - 1:
            hi = la - 1
        acc = 0
        cnt = 0
        for i in range(lo, hi + 1):
            acc += <u128>a[i] * b[k - i]
            cnt += 1
            if cnt == FLUSH:
                acc %= mod
                cnt = 0
        out[k] = <uint64_t>(acc % mod)


def mul(a, b, m):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    if not _small(m):
        return _py.mul(a, b, m)
    cdef uint64_t mod = m
    cdef Py_ssize_t n = la + lb - 1
    cdef uint64_t* pa = _load(a, la, mod)
    cdef uint64_t* pb = _load(b, lb, mod)
    cdef uint64_t* po = <uint64_t*>malloc(n * sizeof(uint64_t))
    try:
        with nogil:
            _conv(pa, la, pb, lb, po, n, mod)
        return [po[i] for i in range(n)]
    finally:
        free(pa)
        free(pb)
        free(po)


def mul_trunc(a, b, Py_ssize_t n, m):
    if not _small(m):
        return _py.mul_trunc(a, b, n, m)
    cdef uint64_t mod = m
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    if la == 0 or lb == 0:
        return [0] * n
    cdef uint64_t* pa = _load(a, la, mod)
    cdef uint64_t* pb = _load(b, lb, mod)
    cdef uint64_t* po = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef Py_ssize_t i
    try:
        with nogil:
            for i in range(n):
                po[i] = 0
            _conv(pa, la, pb, lb, po, min(n, la + lb - 1), mod)
        return [po[i] for i in range(n)]
    finally:
        free(pa)
        free(pb)
        free(po)


def compose_trunc(f, g, Py_ssize_t n, m):
    if not _small(m):
        return _py.compose_trunc(f, g, n, m)
    cdef uint64_t mod = m
    cdef Py_ssize_t lf = min(len(f), n)
    cdef Py_ssize_t top = lf - 1
    while top > 0 and f[top] % m == 0:
        top -= 1
    if top <= 0:
        out = [0] * n
        out[0] = f[0] % m if lf else 0
        return out
    cdef uint64_t* pf = _load(f, lf, mod)
    cdef uint64_t* pg = _load(g, n, mod)
    cdef uint64_t* acc = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* tmp = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* swap
    cdef Py_ssize_t k, i
    try:
        with nogil:
            for i in range(n):
                acc[i] = 0
            acc[0] = pf[top]
            for k in range(top - 1, -1, -1):
                # g has zero constant term, so acc*g only needs acc[0..n-2]
                _conv(acc, n - 1, pg, n, tmp, n, mod)
                tmp[0] = (tmp[0] + pf[k]) % mod
                swap = acc
                acc = tmp
                tmp = swap
        return [acc[i] for i in range(n)]
    finally:
        free(pf)
        free(pg)
        free(acc)
        free(tmp)


def rem_monic(a, g, m):
    if not _small(m):
        return _py.rem_monic(a, g, m)
    cdef uint64_t mod = m
    cdef Py_ssize_t k = len(g) - 1
    cdef Py_ssize_t la = len(a)
    if la <= k:
        return [c % m for c in a] + [0] * (k - la)
    cdef uint64_t* pa = _load(a, la, mod)
    cdef uint64_t* pg = _load(g, k, mod)
    cdef Py_ssize_t i, j, base
    cdef uint64_t c, t
    try:
        with nogil:
            for i in range(la - 1, k - 1, -1):
                c = pa[i]
                if c:
                    base = i - k
                    for j in range(k):
                        t = <uint64_t>((<u128>c * pg[j]) % mod)
                        pa[base + j] = (pa[base + j] + mod - t) % mod
        return [pa[i] for i in range(k)]
    finally:
        free(pa)
        free(pg)
