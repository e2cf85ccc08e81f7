"""Independent oracles shared by the tests.

Nothing here imports padyn: every value is produced with plain integers,
Fractions and schoolbook loops.
"""

from fractions import Fraction
from math import comb
import random


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def binomial_series(a, n, m=None):
    """Coefficients 0..n-1 of (1+T)^a - 1, optionally reduced mod m."""
    c = [0] + [comb(a, k) for k in range(1, n)]
    return [x % m for x in c] if m else c


def vp(n, p):
    if n == 0:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def random_factored_polynomial(rng, p, max_degree=6):
    """A monic integer polynomial built from linear and Eisenstein factors.

    Returns (coefficients from the constant term, sorted root valuations).
    Linear factors T - r use r = p^k * u with u prime to p. An Eisenstein
    factor of degree k is T^k + p*(middle terms) + p*u, all of whose roots
    have valuation 1/k.
    """
    degree = rng.randint(1, max_degree)
    poly = [1]
    vals = []
    left = degree
    while left:
        if left >= 2 and rng.random() < 0.4:
            k = rng.randint(2, left)
            unit = rng.choice([u for u in range(1, 4 * p) if u % p])
            f = [p * unit] + [p * rng.randint(-3, 3) for _ in range(k - 1)] + [1]
            vals.extend([Fraction(1, k)] * k)
        else:
            k = 1
            e = rng.randint(0, 4)
            unit = rng.choice([u for u in range(-4 * p, 4 * p) if u % p])
            r = p ** e * unit
            f = [-r, 1]
            vals.append(Fraction(e))
        poly = poly_mul(poly, f)
        left -= k
    return poly, sorted(vals)


def random_residue_series(rng, q_elements, length, nonzero_linear=True):
    """Random H = sum H_i S^i (i >= 1) with H_1 != 0, as a dict."""
    zero = q_elements[0]
    H = {}
    for i in range(1, length):
        c = rng.choice(q_elements)
        if i == 1 and nonzero_linear:
            c = rng.choice(q_elements[1:])
        if c != zero:
            H[i] = c
    return H


def make_rng(seed):
    return random.Random(seed)
