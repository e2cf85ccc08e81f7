"""Arithmetic in the ring of integers of a finite extension K/Q_p.

O_K is modelled as a tower: the unramified subring W = Z_p[t]/(g(t)) of rank
h, then O_K = W[pi]/(E(pi)) for an Eisenstein polynomial E of degree e whose
coefficients are rational integers. An element is stored as its coordinates
in the basis pi^i t^j (i < e, j < h), each an integer mod p^N with
N = ceil(M/e); it is *known* modulo pi^M' for its own precision M' <= M.

Raw values are plain ints when e*h == 1 and tuples of e*h ints otherwise.
Everything above this module manipulates raw values through a
:class:`RawArith`; :class:`OKElement` is the user-facing immutable wrapper.
"""

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
import json

from padyn import kernels
from padyn.errors import NotAUnit, NotEisenstein, NotPrime, SpecMismatch


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp_int(n, p, cap):
    """p-adic valuation of an integer, capped at ``cap`` (0 maps to cap)."""
    if n == 0:
        return cap
    if p == 2:
        v = (n & -n).bit_length() - 1
        return v if v < cap else cap
    v = 0
    while n % p == 0:
        n //= p
        v += 1
        if v >= cap:
            return cap
    return v


def _poly_mulmod_p(a, b, g, p):
    # product of two polynomials over F_p reduced mod monic g
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return kernels.rem_monic(prod, list(g), p)


def _is_irreducible_mod_p(g, p):
    """Rabin test for a monic polynomial g over F_p."""
    h = len(g) - 1
    if h == 1:
        return True

    def xpow(k):
        # X^(p^k) mod g by repeated p-th powering
        r = [0, 1] + [0] * (h - 2)
        for _ in range(k):
            acc = [1] + [0] * (h - 1)
            base = r
            e = p
            while e:
                if e & 1:
                    acc = _poly_mulmod_p(acc, base, g, p)
                base = _poly_mulmod_p(base, base, g, p)
                e >>= 1
            r = acc
        return r

    def gcd_is_one(a):
        x = list(g)
        y = [c % p for c in a]
        while any(y):
            while y and y[-1] == 0:
                y.pop()
            inv = pow(y[-1], -1, p)
            while len(x) >= len(y) and any(x):
                c = x[-1] * inv % p
                shift = len(x) - len(y)
                for i, yc in enumerate(y):
                    x[shift + i] = (x[shift + i] - c * yc) % p
                while x and x[-1] == 0:
                    x.pop()
            x, y = y, x
        while x and x[-1] == 0:
            x.pop()
        return len(x) == 1

    x_id = [0, 1] + [0] * (h - 2)
    if xpow(h) != x_id:
        return False
    for q in range(2, h + 1):
        if h % q == 0 and is_prime(q):
            d = xpow(h // q)
            d = [(c - x) % p for c, x in zip(d, x_id)]
            if not gcd_is_one(d):
                return False
    return True


def unramified_modulus(p, h):
    """The lexicographically first monic irreducible polynomial of degree h
    over F_p, coefficients listed from the constant term."""
    if h == 1:
        return (0, 1)
    for code in range(p ** h):
        low = []
        c = code
        for _ in range(h):
            low.append(c % p)
            c //= p
        if low[0] == 0:
            continue
        g = tuple(low) + (1,)
        if _is_irreducible_mod_p(g, p):
            return g
    raise AssertionError("no irreducible polynomial found")


def _center(c, m):
    """Representative of c mod m in (-m/2, m/2]."""
    c %= m
    return c - m if 2 * c > m else c


class RawArith:
    """Arithmetic on raw coordinate vectors of Z/m[t,pi]/(g(t), E(pi)).

    With m = p^N this is O_K / p^N; with m = p, e = 1 it is the residue field.
    """

    def __init__(self, p, m, g, eis):
        self.p = p
        self.m = m
        self.g = tuple(g)
        self.eis = tuple(eis)
        self.h = len(g) - 1
        self.e = len(eis) - 1
        self.r = self.e * self.h
        self.scalar = self.r == 1
        self.bw = 2 * self.h - 1
        self.block = (2 * self.e - 1) * self.bw
        # pi^e = -sum E_i pi^i
        self._eis_low = [(-c) % m for c in self.eis[:-1]]

    # -- construction
    @property
    def zero(self):
        return 0 if self.scalar else (0,) * self.r

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.scalar:
            return n % self.m
        v = [0] * self.r
        v[0] = n % self.m
        return tuple(v)

    def from_coords(self, coords):
        if self.scalar:
            if isinstance(coords, int):
                return coords % self.m
            (c,) = coords
            return c % self.m
        if isinstance(coords, int):
            return self.from_int(coords)
        coords = list(coords)
        if len(coords) > self.r:
            raise ValueError(f"expected at most {self.r} coordinates")
        coords += [0] * (self.r - len(coords))
        return tuple(c % self.m for c in coords)

    def coords(self, x):
        return [x] if self.scalar else list(x)

    def pi(self):
        if self.e == 1:
            return self.from_int(-self.eis[0])
        v = [0] * self.r
        v[self.h] = 1
        return tuple(v)

    # -- ring operations
    def add(self, x, y):
        if self.scalar:
            return (x + y) % self.m
        m = self.m
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub(self, x, y):
        if self.scalar:
            return (x - y) % self.m
        m = self.m
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg(self, x):
        if self.scalar:
            return (-x) % self.m
        return tuple((-a) % self.m for a in x)

    def is_zero(self, x):
        return x == 0 if self.scalar else not any(x)

    def mul(self, x, y):
        if self.scalar:
            return (x * y) % self.m
        return self.unpack(kernels.mul(self.pack([x]), self.pack([y]), self.m), 1)[0]

    def mul_int(self, x, n):
        if self.scalar:
            return (x * n) % self.m
        return tuple((a * n) % self.m for a in x)

    def pow(self, x, n):
        acc = self.one
        while n:
            if n & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            n >>= 1
        return acc

    # -- packing of polynomials with coefficients in this ring
    def pack(self, coeffs):
        """Flatten a list of raw values into one integer polynomial."""
        if self.scalar:
            return list(coeffs)
        B, h, bw = self.block, self.h, self.bw
        flat = [0] * (len(coeffs) * B)
        for k, c in enumerate(coeffs):
            base = k * B
            for i in range(self.e):
                row = base + i * bw
                src = i * h
                for j in range(h):
                    flat[row + j] = c[src + j]
        return flat

    def unpack(self, flat, n):
        """Inverse of :meth:`pack` on a product, reducing each block."""
        if self.scalar:
            out = list(flat[:n])
            out.extend([0] * (n - len(out)))
            return out
        B = self.block
        flat = list(flat) + [0] * max(0, n * B - len(flat))
        return [self._reduce_block(flat[k * B:(k + 1) * B]) for k in range(n)]

    def _reduce_block(self, blk):
        m, h, e, bw = self.m, self.h, self.e, self.bw
        # rows indexed by pi-degree, each a t-polynomial of degree <= 2h-2
        rows = []
        for i in range(2 * e - 1):
            row = blk[i * bw:(i + 1) * bw]
            if h > 1:
                row = kernels.rem_monic(row, list(self.g), m)
            else:
                row = [row[0] % m]
            rows.append(row)
        low = self._eis_low
        for i in range(2 * e - 2, e - 1, -1):
            top = rows[i]
            if any(top):
                base = i - e
                for j in range(e):
                    c = low[j]
                    if c:
                        tgt = rows[base + j]
                        rows[base + j] = [(a + c * b) % m for a, b in zip(tgt, top)]
        out = []
        for i in range(e):
            out.extend(rows[i])
        return tuple(out)

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        n = len(a) + len(b) - 1
        if self.scalar:
            return kernels.mul(a, b, self.m)
        return self.unpack(kernels.mul(self.pack(a), self.pack(b), self.m), n)

    def poly_mul_trunc(self, a, b, n):
        if self.scalar:
            return kernels.mul_trunc(a, b, n, self.m)
        B = self.block
        flat = kernels.mul_trunc(self.pack(a[:n]), self.pack(b[:n]), n * B, self.m)
        return self.unpack(flat, n)

    def poly_add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = self.add(out[i], y)
        return out

    def poly_sub(self, a, b):
        n = max(len(a), len(b))
        z = self.zero
        a = list(a) + [z] * (n - len(a))
        b = list(b) + [z] * (n - len(b))
        return [self.sub(x, y) for x, y in zip(a, b)]

    def poly_scale(self, a, s):
        return [self.mul(c, s) for c in a]

    def compose_trunc(self, f, g, n):
        """f(g) mod T^n; g[0] == 0."""
        if self.scalar:
            return kernels.compose_trunc(f, g, n, self.m)
        top = min(len(f), n) - 1
        while top > 0 and self.is_zero(f[top]):
            top -= 1
        acc = [self.zero] * n
        if top <= 0:
            if f:
                acc[0] = f[0]
            return acc
        acc[0] = f[top]
        for k in range(top - 1, -1, -1):
            acc = self.poly_mul_trunc(acc, g, n)
            acc[0] = self.add(acc[0], f[k])
        return acc

    def poly_compose(self, f, g):
        """Exact polynomial composition f(g) (no truncation)."""
        top = len(f) - 1
        while top > 0 and self.is_zero(f[top]):
            top -= 1
        if top < 0:
            return []
        acc = [f[top]]
        for k in range(top - 1, -1, -1):
            acc = self.poly_mul(acc, g)
            if not acc:
                acc = [self.zero]
            acc[0] = self.add(acc[0], f[k])
        return acc

    def poly_rem_monic(self, a, g):
        """Remainder of a modulo monic g (both lists of raw values)."""
        if self.scalar:
            return kernels.rem_monic(a, g, self.m)
        k = len(g) - 1
        r = list(a) + [self.zero] * max(0, k - len(a))
        for i in range(len(r) - 1, k - 1, -1):
            c = r[i]
            if not self.is_zero(c):
                base = i - k
                for j in range(k):
                    r[base + j] = self.sub(r[base + j], self.mul(c, g[j]))
        return r[:k]


@dataclass(frozen=True)
class AtLeast:
    """Valuation marker: the element is zero modulo pi^bound."""

    bound: int

    def __repr__(self):
        return f"≥ {self.bound}"

    def __str__(self):
        return f">={self.bound}"


@dataclass(frozen=True)
class LocalFieldSpec:
    """A finite extension K/Q_p with working precision M (digits of pi_K).

    ``eisenstein`` lists c_0..c_e of a monic Eisenstein polynomial with
    rational integer coefficients; ``[-p, 1]`` gives the unramified case.
    """

    p: int
    h: int
    eisenstein: tuple
    precision: int

    def __post_init__(self):
        object.__setattr__(self, "eisenstein", tuple(int(c) for c in self.eisenstein))
        p = self.p
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if self.h < 1:
            raise ValueError("unramified degree must be >= 1")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        E = self.eisenstein
        if len(E) < 2 or E[-1] != 1:
            raise NotEisenstein("eisenstein polynomial must be monic of degree >= 1")
        if E[0] % p != 0 or E[0] % (p * p) == 0:
            raise NotEisenstein("constant term must be p times a unit")
        if any(c % p for c in E[1:-1]):
            raise NotEisenstein("middle coefficients must be divisible by p")

    # -- derived constants
    @property
    def e(self):
        return len(self.eisenstein) - 1

    @property
    def q(self):
        return self.p ** self.h

    @property
    def rank(self):
        return self.e * self.h

    @property
    def digits(self):
        return -(-self.precision // self.e)

    @property
    def v_p(self):
        """v_K(p)."""
        return self.e

    @cached_property
    def arith(self):
        return RawArith(self.p, self.p ** self.digits, unramified_modulus(self.p, self.h),
                        self.eisenstein)

    @cached_property
    def residue_field(self):
        return ResidueField(self.p, self.h)

    def with_precision(self, M):
        return LocalFieldSpec(self.p, self.h, self.eisenstein, M)

    def same_field(self, other):
        return (self.p, self.h, self.eisenstein) == (other.p, other.h, other.eisenstein)

    # -- raw helpers
    def val(self, x):
        """Valuation of a raw value, capped at the precision."""
        M = self.precision
        a = self.arith
        if a.scalar:
            return vp_int(x, self.p, M)
        e, h, p, N = self.e, self.h, self.p, self.digits
        best = M
        for i in range(e):
            row = x[i * h:(i + 1) * h]
            vi = min(vp_int(c, p, N) for c in row)
            if vi < N:
                best = min(best, e * vi + i)
        return best

    def residue(self, x):
        """Image of a raw value in F_q (raw residue value)."""
        if self.arith.scalar:
            return x % self.p
        h, p = self.h, self.p
        if h == 1:
            return x[0] % p
        return tuple(c % p for c in x[:h])

    def lift_residue(self, r):
        if self.h == 1:
            return self.arith.from_int(r)
        return self.arith.from_coords(list(r))

    def div_pi_power(self, x, v):
        """Exact x / pi^v for raw x with valuation >= v.

        Representatives are centred before dividing, so an element that is a
        small (possibly negative) integer combination is divided exactly.
        """
        if v == 0:
            return x
        a = self.arith
        m = a.m
        if self.e == 1:
            pk = self.p ** v
            coords = [_center(c, m) for c in a.coords(x)]
            if any(c % pk for c in coords):
                raise ValueError("not divisible")
            y = a.from_coords([c // pk for c in coords])
            u = (-self.eisenstein[0]) // self.p  # pi = p*u
            if u % m != 1:
                y = a.mul(y, a.from_int(pow(u, -v, m)))
            return y
        # one pi at a time: sum a_i pi^i / pi = sum a_{i+1} pi^i + (a_0/p) * (p/pi)
        h = self.h
        for _ in range(v):
            coords = a.coords(x)
            row0 = [_center(c, m) for c in coords[:h]]
            if any(c % self.p for c in row0):
                raise ValueError("not divisible")
            shifted = a.from_coords(coords[h:] + [0] * h)
            low = a.from_coords([c // self.p for c in row0])
            x = a.add(shifted, a.mul(low, self._p_over_pi))
        return x

    @cached_property
    def _p_over_pi(self):
        """p / pi = pi^(e-1) / eps where pi^e = p * eps."""
        a = self.arith
        eps = [0] * self.rank
        for i, c in enumerate(self.eisenstein[:-1]):
            eps[i * self.h] = -c // self.p
        eps = a.from_coords(eps)
        return a.mul(a.pow(a.pi(), self.e - 1), self._unit_inverse_raw(eps))

    def canonical(self, x, c):
        """Canonical representative of raw x modulo pi^c (as a coordinate tuple)."""
        a = self.arith
        c = min(c, self.precision)
        out = []
        for i in range(self.e):
            mod = self.p ** max(0, -(-(c - i) // self.e))
            row = a.coords(x)[i * self.h:(i + 1) * self.h]
            out.extend(r % mod for r in row)
        return tuple(out)

    def _unit_inverse_raw(self, x):
        a = self.arith
        if a.scalar:
            return pow(x, -1, a.m)
        rf = self.residue_field
        r = self.residue(x)
        y = self.lift_residue(rf.inv(r))
        two = a.from_int(2)
        prec = 1
        while prec < self.precision:
            y = a.mul(y, a.sub(two, a.mul(x, y)))
            prec *= 2
        return y

    # -- serialization
    def to_json(self):
        return {"p": self.p, "h": self.h, "eisenstein": list(self.eisenstein),
                "precision": self.precision}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["p"]), int(obj["h"]), tuple(obj["eisenstein"]),
                   int(obj["precision"]))

    def element(self, value, prec=None):
        return OKElement.of(self, value, prec)

    def __repr__(self):
        return (f"LocalFieldSpec(p={self.p}, h={self.h}, eisenstein={list(self.eisenstein)}, "
                f"precision={self.precision})")


def spec_validate(spec):
    """Validate field data (a spec or its JSON form); returns a LocalFieldSpec."""
    if isinstance(spec, LocalFieldSpec):
        return spec
    return LocalFieldSpec.from_json(spec)


def qp(p, precision):
    """The unramified spec Q_p at the given precision."""
    return LocalFieldSpec(p, 1, (-p, 1), precision)


# ---------------------------------------------------------------- residue field

class ResidueField:
    """F_q as F_p[t]/(g) with g the unramified modulus of the field."""

    def __init__(self, p, h):
        self.p = p
        self.h = h
        self.q = p ** h
        self.arith = RawArith(p, p, unramified_modulus(p, h), (0, 1))

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self):
        return hash((self.p, self.h))

    @property
    def zero(self):
        return self.arith.zero

    @property
    def one(self):
        return self.arith.one

    def add(self, x, y):
        return self.arith.add(x, y)

    def sub(self, x, y):
        return self.arith.sub(x, y)

    def mul(self, x, y):
        return self.arith.mul(x, y)

    def is_zero(self, x):
        return self.arith.is_zero(x)

    def pow(self, x, n):
        return self.arith.pow(x, n)

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("zero has no inverse in F_q")
        return self.pow(x, self.q - 2)

    def elements(self):
        if self.h == 1:
            return list(range(self.p))
        out = []
        for code in range(self.q):
            v = []
            for _ in range(self.h):
                v.append(code % self.p)
                code //= self.p
            out.append(tuple(v))
        return out

    def from_code(self, code):
        if self.h == 1:
            return code % self.p
        v = []
        for _ in range(self.h):
            v.append(code % self.p)
            code //= self.p
        return tuple(v)

    def generator(self):
        """A generator of the multiplicative group F_q^x."""
        n = self.q - 1
        primes = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
        for x in self.elements():
            if self.is_zero(x):
                continue
            if all(self.pow(x, n // d) != self.one for d in primes):
                return x
        raise AssertionError("no generator")


@dataclass(frozen=True)
class ResidueElement:
    field: ResidueField
    value: object

    def __add__(self, other):
        return ResidueElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        return ResidueElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        return ResidueElement(self.field, self.field.mul(self.value, other.value))

    def inverse(self):
        return ResidueElement(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __repr__(self):
        return f"ResidueElement({self.value!r} in F_{self.field.q})"


# ---------------------------------------------------------------- O_K elements

@dataclass(frozen=True, eq=False)
class OKElement:
    """Immutable element of O_K known modulo pi^precision."""

    spec: LocalFieldSpec
    raw: object
    precision: int

    @classmethod
    def of(cls, spec, value, prec=None):
        """Build from an int, a coordinate list, or another element."""
        if isinstance(value, OKElement):
            return value
        a = spec.arith
        if isinstance(value, Fraction):
            if value.denominator % spec.p == 0:
                raise NotAUnit("denominator divisible by p")
            value = value.numerator * pow(value.denominator, -1, a.m)
        raw = a.from_int(value) if isinstance(value, int) else a.from_coords(value)
        M = spec.precision if prec is None else min(prec, spec.precision)
        return cls(spec, raw, M)

    @classmethod
    def zero(cls, spec):
        return cls(spec, spec.arith.zero, spec.precision)

    @classmethod
    def one(cls, spec):
        return cls(spec, spec.arith.one, spec.precision)

    @classmethod
    def uniformizer(cls, spec):
        return cls(spec, spec.arith.pi(), spec.precision)

    def _check(self, other):
        if not isinstance(other, OKElement):
            other = OKElement.of(self.spec, other)
        if not self.spec.same_field(other.spec):
            raise SpecMismatch("elements live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return OKElement(self.spec, self.spec.arith.add(self.raw, other.raw),
                         min(self.precision, other.precision))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return OKElement(self.spec, self.spec.arith.sub(self.raw, other.raw),
                         min(self.precision, other.precision))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return OKElement(self.spec, self.spec.arith.neg(self.raw), self.precision)

    def __mul__(self, other):
        other = self._check(other)
        v1 = self.spec.val(self.raw)
        v2 = self.spec.val(other.raw)
        prec = min(self.precision + v2, other.precision + v1, self.spec.precision)
        return OKElement(self.spec, self.spec.arith.mul(self.raw, other.raw), prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = OKElement.one(self.spec)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def valuation(self):
        """Exact valuation, or AtLeast(precision) when zero at this precision."""
        v = self.spec.val(self.raw)
        return AtLeast(self.precision) if v >= self.precision else v

    def is_zero(self):
        return self.spec.val(self.raw) >= self.precision

    def is_unit(self):
        return self.precision > 0 and self.spec.val(self.raw) == 0

    def inverse(self):
        if not self.is_unit():
            raise NotAUnit(f"valuation {self.valuation()} is not 0")
        return OKElement(self.spec, self.spec._unit_inverse_raw(self.raw), self.precision)

    def divide(self, other):
        """Exact quotient self/other; requires v(self) >= v(other)."""
        other = self._check(other)
        v = other.valuation()
        if isinstance(v, AtLeast):
            raise ZeroDivisionError("divisor is zero at its precision")
        if v == 0:
            return self * other.inverse()
        s = self.spec
        mine = s.val(self.raw)
        if mine < v and mine < self.precision:
            raise NotAUnit("quotient is not integral")
        num = self.raw if mine >= v else s.arith.zero
        unit = s.div_pi_power(other.raw, v)
        q = s.div_pi_power(num, v)
        q = s.arith.mul(q, s._unit_inverse_raw(unit))
        prec = max(0, min(self.precision - v, other.precision - 2 * v + mine))
        return OKElement(s, q, prec)

    def residue(self):
        return ResidueElement(self.spec.residue_field, self.spec.residue(self.raw))

    def __eq__(self, other):
        if isinstance(other, int):
            other = OKElement.of(self.spec, other)
        if not isinstance(other, OKElement):
            return NotImplemented
        if not self.spec.same_field(other.spec):
            return False
        d = self.spec.arith.sub(self.raw, other.raw)
        return self.spec.val(d) >= min(self.precision, other.precision)

    def __hash__(self):
        raise TypeError("OKElement equality is precision-dependent; not hashable")

    def key(self):
        """Digit key of the representative mod pi^precision (for caches)."""
        s = self.spec
        N = -(-self.precision // s.e)
        mod = s.p ** N
        return (self.precision, tuple(c % mod for c in s.arith.coords(self.raw)))

    def coords(self):
        return self.spec.arith.coords(self.raw)

    def lift(self):
        """Integer representative (unramified degree-1 fields only)."""
        if not self.spec.arith.scalar:
            raise ValueError("element has several coordinates")
        return self.raw

    def __repr__(self):
        return f"OKElement({self.coords()} mod pi^{self.precision})"


def ok_arith(x, y, op):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def ok_inv(x):
    return x.inverse()


def ok_valuation(x):
    return x.valuation()


def residue_reduce(x):
    return x.residue()


def teichmuller_lift(spec, r):
    """The Teichmuller representative of a residue value r (raw)."""
    a = spec.arith
    x = spec.lift_residue(r)
    for _ in range(spec.digits + 1):
        y = a.pow(x, spec.q)
        if y == x:
            break
        x = y
    return OKElement(spec, x, spec.precision)
