"""Truncated power series in T*O_K[[T]] and their reductions to k_K[[T]].

A :class:`TruncatedSeries` stores the integer representatives of c_0..c_{D-1}
(c_0 is always 0) together with a per-coefficient absolute precision. The
representatives are treated as exact elements of O_K / p^N; precision only
records how far each coefficient is *known* as an approximation of some
ideal series. Arithmetic propagates precision conservatively: coefficient k
of a product or composite is known to the minimum precision among the input
coefficients of index <= k.

``exact_degree`` marks series that are genuinely polynomials (every
coefficient past that index is exactly zero, including beyond the
truncation). Evaluation inside quotient rings relies on it.
"""

from dataclasses import dataclass
import itertools

from padyn.errors import ConstantTermError, NotInvertible, SpecMismatch
from padyn.local_field import AtLeast, LocalFieldSpec, OKElement

ZERO_REDUCTION = "zero-reduction"


def _prefix_min(values):
    return list(itertools.accumulate(values, min))


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    spec: LocalFieldSpec
    coeffs: tuple
    prec: tuple
    exact_degree: int | None = None

    def __post_init__(self):
        if len(self.coeffs) < 1 or len(self.coeffs) != len(self.prec):
            raise ValueError("coefficient and precision vectors must match")
        if not self.spec.arith.is_zero(self.coeffs[0]):
            raise ConstantTermError("series must lie in T*O_K[[T]]")

    # ------------------------------------------------------------ construction
    @classmethod
    def from_coeffs(cls, spec, values, trunc, polynomial=True, prec=None):
        """Series from c_0, c_1, ... (ints, coordinate lists or OKElements).

        ``polynomial`` declares that omitted and higher coefficients are exactly
        zero; pass False for a truncation of a genuine power series.
        """
        a = spec.arith
        values = list(values)
        if not values:
            values = [0]
        raw = []
        precs = []
        for i, v in enumerate(values):
            if isinstance(v, OKElement):
                raw.append(v.raw)
                precs.append(v.precision)
            else:
                raw.append(a.from_int(v) if isinstance(v, int) else a.from_coords(v))
                precs.append(spec.precision)
        if not a.is_zero(raw[0]) and spec.val(raw[0]) < precs[0]:
            raise ConstantTermError("constant term must be 0")
        raw[0] = a.zero
        deg = len(values) - 1
        while deg > 0 and a.is_zero(raw[deg]):
            deg -= 1
        if len(raw) > trunc:
            if polynomial and any(not a.is_zero(c) for c in raw[trunc:]):
                polynomial = False
            raw = raw[:trunc]
            precs = precs[:trunc]
        raw += [a.zero] * (trunc - len(raw))
        precs += [spec.precision] * (trunc - len(precs))
        if prec is not None:
            precs = [min(p, prec) for p in precs]
        precs[0] = spec.precision
        return cls(spec, tuple(raw), tuple(precs), deg if polynomial else None)

    @classmethod
    def identity(cls, spec, trunc):
        return cls.from_coeffs(spec, [0, 1], trunc)

    @classmethod
    def zero(cls, spec, trunc):
        return cls.from_coeffs(spec, [0], trunc)

    def _make(self, raw, precs, exact_degree):
        return TruncatedSeries(self.spec, tuple(raw), tuple(precs), exact_degree)

    # ------------------------------------------------------------ accessors
    @property
    def trunc(self):
        return len(self.coeffs)

    @property
    def arith(self):
        return self.spec.arith

    def coeff(self, i):
        if i >= self.trunc:
            raise IndexError(f"T^{i} is beyond the truncation {self.trunc}")
        return OKElement(self.spec, self.coeffs[i], self.prec[i])

    def linear(self):
        return self.coeff(1) if self.trunc > 1 else OKElement.zero(self.spec)

    def coefficient_valuations(self):
        """v_K of each coefficient (AtLeast when unknown)."""
        out = []
        for c, pr in zip(self.coeffs, self.prec):
            v = self.spec.val(c)
            out.append(AtLeast(pr) if v >= pr else v)
        return out

    def min_valuation(self, start=1):
        """Smallest coefficient valuation from index ``start`` on.

        Returns an int when some coefficient is provably smaller than every
        precision floor, else AtLeast(smallest floor).
        """
        best = None
        floor = self.spec.precision
        for i in range(start, self.trunc):
            pr = self.prec[i]
            v = self.spec.val(self.coeffs[i])
            if v < pr and (best is None or v < best):
                best = v
            floor = min(floor, pr)
        if best is not None and best < floor:
            return best
        return AtLeast(floor)

    def first_nonzero(self):
        for i in range(1, self.trunc):
            if self.spec.val(self.coeffs[i]) < self.prec[i]:
                return i
        return None

    def is_zero(self):
        return self.first_nonzero() is None

    def truncate(self, trunc):
        if trunc >= self.trunc:
            return self
        ed = self.exact_degree if self.exact_degree is not None and self.exact_degree < trunc else None
        return self._make(self.coeffs[:trunc], self.prec[:trunc], ed)

    def with_precision_cap(self, cap):
        return self._make(self.coeffs, [min(p, cap) for p in self.prec], self.exact_degree)

    def as_exact_polynomial(self):
        """Declare the series a polynomial (caller vouches for the tail)."""
        deg = self.trunc - 1
        while deg > 0 and self.arith.is_zero(self.coeffs[deg]):
            deg -= 1
        return self._make(self.coeffs, self.prec, deg)

    # ------------------------------------------------------------ arithmetic
    def _aligned(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if not self.spec.same_field(other.spec):
            raise SpecMismatch("series over different fields")
        n = min(self.trunc, other.trunc)
        return n

    def __add__(self, other):
        n = self._aligned(other)
        a = self.arith
        raw = [a.add(x, y) for x, y in zip(self.coeffs[:n], other.coeffs[:n])]
        precs = [min(x, y) for x, y in zip(self.prec[:n], other.prec[:n])]
        ed = None
        if self.exact_degree is not None and other.exact_degree is not None:
            ed = max(self.exact_degree, other.exact_degree)
            if ed >= n:
                ed = None
        return self._make(raw, precs, ed)

    def __neg__(self):
        a = self.arith
        return self._make([a.neg(x) for x in self.coeffs], self.prec, self.exact_degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OKElement):
            return self.scale(other)
        n = self._aligned(other)
        raw = self.arith.poly_mul_trunc(list(self.coeffs[:n]), list(other.coeffs[:n]), n)
        pa = _prefix_min(self.prec[:n])
        pb = _prefix_min(other.prec[:n])
        precs = [self.spec.precision] + [min(pa[k - 1], pb[k - 1]) for k in range(1, n)]
        ed = None
        if self.exact_degree is not None and other.exact_degree is not None:
            d = self.exact_degree + other.exact_degree
            ed = d if d < n else None
        return self._make(raw, precs, ed)

    def scale(self, s):
        """Coefficient-wise multiplication by an element of O_K."""
        if not isinstance(s, OKElement):
            s = OKElement.of(self.spec, s)
        a = self.arith
        vs = self.spec.val(s.raw)
        raw = [a.mul(c, s.raw) for c in self.coeffs]
        precs = [self.spec.precision] + [
            min(p + vs, s.precision + self.spec.val(c), self.spec.precision)
            for c, p in zip(self.coeffs[1:], self.prec[1:])]
        return self._make(raw, precs, self.exact_degree)

    __rmul__ = __mul__

    def compose(self, other):
        """self(other) mod T^min(D)."""
        n = self._aligned(other)
        raw = self.arith.compose_trunc(list(self.coeffs[:n]), list(other.coeffs[:n]), n)
        pa = _prefix_min(self.prec[:n])
        pb = _prefix_min(other.prec[:n])
        precs = [self.spec.precision] + [min(pa[k], pb[k]) for k in range(1, n)]
        ed = None
        if self.exact_degree is not None and other.exact_degree is not None:
            d = self.exact_degree * other.exact_degree
            ed = d if d < n else None
        return self._make(raw, precs, ed)

    __call__ = compose

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if not self.spec.same_field(other.spec):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def derivative_coeffs(self):
        """Raw coefficients of the formal derivative (degree shifted down)."""
        a = self.arith
        return [a.mul_int(self.coeffs[i], i) for i in range(1, self.trunc)]

    # ------------------------------------------------------------ serialization
    def to_json(self):
        a = self.arith
        return {"spec_ref": self.spec.to_json(),
                "coeffs": [a.coords(c) for c in self.coeffs],
                "prec": list(self.prec),
                "trunc": self.trunc,
                "exact_degree": self.exact_degree}

    @classmethod
    def from_json(cls, obj, spec=None):
        spec = spec or LocalFieldSpec.from_json(obj["spec_ref"])
        trunc = int(obj.get("trunc", len(obj["coeffs"])))
        s = cls.from_coeffs(spec, obj["coeffs"], trunc,
                            polynomial=obj.get("exact_degree") is not None)
        if "prec" in obj:
            precs = [min(int(p), spec.precision) for p in obj["prec"]][:trunc]
            precs += [spec.precision] * (trunc - len(precs))
            precs[0] = spec.precision
            s = TruncatedSeries(spec, s.coeffs, tuple(precs), s.exact_degree)
        return s

    def __repr__(self):
        terms = []
        a = self.arith
        for i in range(1, self.trunc):
            c = self.coeffs[i]
            if a.is_zero(c):
                continue
            cs = c if a.scalar else list(c)
            terms.append(f"{cs}*T^{i}")
        tail = "" if self.exact_degree is not None else f" + O(T^{self.trunc})"
        return "(" + (" + ".join(terms) or "0") + tail + ")"


# ---------------------------------------------------------------- operations

def series_add_mul(f, g, op):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def compose(f, g):
    return f.compose(g)


def iterate(f, m):
    """m-fold self-composition, by repeated squaring of the composition."""
    if m < 1:
        raise ValueError("iterate count must be positive")
    result = None
    base = f
    while m:
        if m & 1:
            result = base if result is None else result.compose(base)
        m >>= 1
        if m:
            base = base.compose(base)
    return result


def compositional_inverse(f):
    """g with f(g) = g(f) = T. Precision loss is zero (c_1 is a unit)."""
    c1 = f.linear()
    if not c1.is_unit():
        raise NotInvertible(f"linear coefficient has valuation {c1.valuation()}")
    spec, a, D = f.spec, f.arith, f.trunc
    inv1 = c1.inverse().raw
    g = [a.zero] * D
    g[1] = inv1
    fc = list(f.coeffs)
    for n in range(2, D):
        # coefficient n of f(g) with g_n = 0; g_n enters only as c_1 * g_n
        r = a.compose_trunc(fc[:n + 1], g[:n + 1], n + 1)[n]
        g[n] = a.neg(a.mul(r, inv1))
    precs = [spec.precision] + _prefix_min(f.prec[1:])
    return TruncatedSeries(spec, tuple(g), tuple(precs), None if D > 2 else 1)


def weierstrass_degree(f):
    """Index of the first coefficient that is a unit, else ZERO_REDUCTION."""
    for i in range(1, f.trunc):
        if f.prec[i] >= 1 and f.spec.val(f.coeffs[i]) == 0:
            return i
    return ZERO_REDUCTION


# ---------------------------------------------------------------- residue series

@dataclass(frozen=True, eq=False)
class ResidueSeries:
    """A series in T*k_K[[T]] known modulo T^D."""

    spec: LocalFieldSpec
    coeffs: tuple

    def __post_init__(self):
        if not self.field.is_zero(self.coeffs[0]):
            raise ConstantTermError("residue series must have zero constant term")

    @property
    def field(self):
        return self.spec.residue_field

    @property
    def trunc(self):
        return len(self.coeffs)

    @classmethod
    def from_terms(cls, spec, terms, trunc):
        """Build from {exponent: residue value}; exponents >= trunc dropped."""
        F = spec.residue_field
        c = [F.zero] * trunc
        for k, v in terms.items():
            if k < trunc:
                c[k] = F.arith.from_coords(v) if not isinstance(v, int) else F.arith.from_int(v)
        return cls(spec, tuple(c))

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)]

    def is_zero(self):
        return not self.support()

    def compose(self, other):
        n = min(self.trunc, other.trunc)
        raw = self.field.arith.compose_trunc(list(self.coeffs[:n]), list(other.coeffs[:n]), n)
        return ResidueSeries(self.spec, tuple(raw))

    __call__ = compose

    def truncate(self, trunc):
        return ResidueSeries(self.spec, self.coeffs[:trunc])

    def __eq__(self, other):
        if not isinstance(other, ResidueSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)]
        return "(" + (" + ".join(terms) or "0") + f" mod T^{self.trunc})"


def reduce_series(f):
    """Coefficient-wise reduction modulo m_K."""
    s = f.spec
    out = [s.residue(c) if p >= 1 else s.residue_field.zero for c, p in zip(f.coeffs, f.prec)]
    return ResidueSeries(s, tuple(out))


def evaluate_in_quotient(f, x):
    """Evaluate f at an element x of a tower level (see :mod:`padyn.tower`)."""
    return x.ring.evaluate(f, x)
