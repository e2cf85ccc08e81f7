"""Quotient-ring towers for Q-consistent sequences, and the Galois certifier.

Level n is R_n = O_E[X]/(G_n) with G_1 = Q(T)/T (made monic) and
G_n = G_{n-1}(Q(X)). The image of X is x_n, and x_{n-1} = Q(x_n). When the
Newton polygon of G_n has a single slope v0/N_n in lowest terms, G_n is
irreducible, R_n is the ring of integers of a totally ramified extension L_n
of degree N_n, and v_L(sum a_j X^j) = min_j (N_n v_K(a_j) + v0 j) exactly.

Elements of R_n are coordinate vectors known modulo pi_K^c for a single
coordinate precision c.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import hashlib
import json

from padyn.errors import (CertificateMissing, PrecisionExhausted, RelationDegenerate,
                          SpecMismatch, TowerMismatch)
from padyn.local_field import AtLeast, OKElement
from padyn.newton import newton_polygon
from padyn.series_ring import TruncatedSeries, weierstrass_degree

CERT_FULL = "single-slope-full-denominator"
CERT_NONE = "none"

CERTIFIED = "certified_galois"
NOT_GALOIS = "not_galois"
INCONCLUSIVE = "inconclusive"


class QuotientRing:
    """O_K[X]/(G) for a monic G of degree N >= 1."""

    def __init__(self, spec, modulus, level, precision, v0=None):
        self.spec = spec
        self.modulus = tuple(modulus)
        self.level = level
        self.degree = len(modulus) - 1
        self.precision = precision
        self.v0 = v0          # v_K(G(0)) when G has the single-slope certificate
        self._rinv = None

    @property
    def arith(self):
        return self.spec.arith

    # -- elements
    def element(self, coeffs, precision=None):
        a = self.arith
        c = list(coeffs)
        if len(c) > self.degree:
            c = self._reduce(c)
        c += [a.zero] * (self.degree - len(c))
        prec = self.precision if precision is None else min(precision, self.precision)
        return QElement(self, tuple(c), prec)

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([self.arith.one])

    def gen(self):
        a = self.arith
        return self.element([a.zero, a.one])

    def constant(self, raw, precision=None):
        return self.element([raw], precision)

    def _reverse_inverse(self):
        """1 / rev(G) mod X^(N-1), by Newton iteration (rev(G) has constant 1)."""
        a = self.arith
        n = max(self.degree - 1, 1)
        rev = list(reversed(self.modulus))[:n]
        b = [a.one]
        k = 1
        while k < n:
            k = min(2 * k, n)
            t = a.poly_mul_trunc(rev, b, k)
            t = [a.neg(c) for c in t]
            t[0] = a.add(t[0], a.from_int(2))
            b = a.poly_mul_trunc(b, t, k)
        return b

    def _reduce(self, poly):
        a = self.arith
        N = self.degree
        L = len(poly)
        if L <= N:
            return list(poly) + [a.zero] * (N - L)
        if L > 2 * N - 1 or N < 8:
            return a.poly_rem_monic(list(poly), list(self.modulus))
        if self._rinv is None:
            self._rinv = self._reverse_inverse()
        k = L - N                      # number of quotient coefficients
        top = list(reversed(poly))[:k]
        qrev = a.poly_mul_trunc(top, self._rinv[:k], k)
        quo = list(reversed(qrev))
        qg = a.poly_mul_trunc(quo, list(self.modulus), N)
        return [a.sub(x, y) for x, y in zip(poly[:N], qg)]

    def mul_raw(self, x, y):
        return tuple(self._reduce(self.arith.poly_mul(list(x), list(y))))

    # -- polynomial and series evaluation
    def eval_poly(self, coeffs, x):
        """Horner evaluation of raw coefficients c_0..c_k at x (exact)."""
        a = self.arith
        acc = [a.zero] * self.degree
        for c in reversed(coeffs):
            acc = list(self.mul_raw(acc, x.coeffs)) if any(not a.is_zero(v) for v in acc) else acc
            acc[0] = a.add(acc[0], c)
        return tuple(acc)

    def coordinate_cap(self, vL):
        """Coordinate precision implied by an L-valuation lower bound."""
        N = self.degree
        return -(-(vL - self.v0 * (N - 1)) // N)

    def evaluate(self, f, x):
        """f(x) for a TruncatedSeries f.

        Genuine polynomials evaluate exactly. A truncated series is only
        meaningful on the maximal ideal of a certified level: the neglected
        tail has v_L >= D * v_L(x), which caps the result's precision.
        """
        if not isinstance(x, QElement) or x.ring is not self:
            raise TowerMismatch("element does not belong to this tower level")
        if not f.spec.same_field(self.spec):
            raise TowerMismatch("series and tower are over different fields")
        a = self.arith
        if f.exact_degree is not None:
            deg = f.exact_degree
            prec = min([x.precision] + list(f.prec[1:deg + 1]))
            return QElement(self, self.eval_poly(list(f.coeffs[:deg + 1]), x), prec)
        if self.v0 is None:
            raise PrecisionExhausted("truncated series can only be evaluated on a certified level")
        vx = x.valuation()
        if isinstance(vx, AtLeast):
            vx = vx.bound
        if vx < 1:
            raise PrecisionExhausted("series evaluation needs x in the maximal ideal")
        N = self.degree
        D = f.trunc
        prec = min(x.precision, self.coordinate_cap(D * vx))
        for k in range(1, D):
            pk = f.prec[k]
            if pk < self.spec.precision:
                prec = min(prec, max(pk, self.coordinate_cap(N * pk + k * vx)))
        prec = max(prec, 0)
        return QElement(self, self.eval_poly(list(f.coeffs), x), prec)

    def __repr__(self):
        return f"QuotientRing(level={self.level}, degree={self.degree})"


@dataclass(frozen=True, eq=False)
class QElement:
    ring: QuotientRing
    coeffs: tuple
    precision: int

    def _check(self, other):
        if not isinstance(other, QElement) or other.ring is not self.ring:
            raise TowerMismatch("elements of different tower levels")

    def __add__(self, other):
        self._check(other)
        a = self.ring.arith
        return QElement(self.ring, tuple(a.add(x, y) for x, y in zip(self.coeffs, other.coeffs)),
                        min(self.precision, other.precision))

    def __sub__(self, other):
        self._check(other)
        a = self.ring.arith
        return QElement(self.ring, tuple(a.sub(x, y) for x, y in zip(self.coeffs, other.coeffs)),
                        min(self.precision, other.precision))

    def __neg__(self):
        a = self.ring.arith
        return QElement(self.ring, tuple(a.neg(x) for x in self.coeffs), self.precision)

    def __mul__(self, other):
        self._check(other)
        return QElement(self.ring, self.ring.mul_raw(self.coeffs, other.coeffs),
                        min(self.precision, other.precision))

    def key(self, c=None):
        """Canonical coordinates modulo pi^c (default: own precision)."""
        c = self.precision if c is None else c
        s = self.ring.spec
        return tuple(s.canonical(x, c) for x in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        self._check(other)
        c = min(self.precision, other.precision)
        return self.key(c) == other.key(c)

    __hash__ = None

    def is_zero(self):
        s = self.ring.spec
        return all(s.val(x) >= self.precision for x in self.coeffs)

    def valuation(self):
        """v_L in units where v_L(pi_K) = N (needs a certified level)."""
        r = self.ring
        if r.v0 is None:
            raise CertificateMissing("valuation needs a single-slope certified level")
        s = r.spec
        N = r.degree
        best = None
        for j, x in enumerate(self.coeffs):
            v = s.val(x)
            if v < self.precision:
                t = N * v + r.v0 * j
                best = t if best is None else min(best, t)
        if best is None or best >= N * self.precision:
            return AtLeast(N * self.precision)
        return best

    def to_json(self):
        a = self.ring.arith
        return {"coeffs": [a.coords(x) for x in self.coeffs], "precision": self.precision}

    def __repr__(self):
        return f"QElement(level {self.ring.level}, {list(self.coeffs)} mod pi^{self.precision})"


# ---------------------------------------------------------------- tower

@dataclass(eq=False)
class QuotientTower:
    spec: object
    Q: TruncatedSeries
    levels: list                      # levels[n-1] is R_n
    relations: list                   # raw coefficients of G_n
    certificates: list
    polygons: list
    precision: int

    def ring(self, n):
        if not 1 <= n <= len(self.levels):
            raise TowerMismatch(f"tower has no level {n}")
        return self.levels[n - 1]

    def x(self, n):
        """x_n as an element of R_n (x_0 = 0 lives in every level)."""
        return self.ring(n).gen()

    def x_prev(self, n):
        """x_{n-1} as an element of R_n."""
        R = self.ring(n)
        if n == 1:
            return R.zero()
        Qc = list(self.Q.coeffs[:self.Q.exact_degree + 1])
        return QElement(R, R.eval_poly(Qc, R.gen()), R.precision)

    def dimensions(self):
        return [R.degree for R in self.levels]

    def summary(self):
        return [{"level": i + 1, "degree": R.degree, "certificate": c,
                 "vertices": [[v[0], str(v[1])] for v in poly.vertices]}
                for i, (R, c, poly) in enumerate(zip(self.levels, self.certificates,
                                                     self.polygons))]


def _monic(spec, coeffs):
    a = spec.arith
    lead = coeffs[-1]
    if spec.val(lead) != 0:
        raise RelationDegenerate("leading coefficient is not a unit")
    inv = spec._unit_inverse_raw(lead)
    return [a.mul(c, inv) for c in coeffs]


def tower_build(spec, Q, levels):
    """Build R_1..R_levels for the polynomial Q."""
    if not spec.same_field(Q.spec):
        raise SpecMismatch("Q is defined over a different field")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    s = weierstrass_degree(Q)
    if Q.exact_degree is None:
        raise RelationDegenerate("the tower needs Q to be a polynomial (exact_degree unknown)")
    if not isinstance(s, int) or s < 2 or s != Q.exact_degree:
        raise RelationDegenerate(
            f"Q must have degree equal to its Weierstrass degree (degree {Q.exact_degree}, "
            f"wideg {s})")
    a = spec.arith
    prec = min(Q.prec[1:s + 1])
    Qc = list(Q.coeffs[:s + 1])
    if spec.val(Qc[1]) >= prec:
        raise RelationDegenerate("Q'(0) vanishes: removing the root 0 loses all precision")
    G = _monic(spec, Qc[1:])
    rings, relations, certs, polys = [], [], [], []
    for n in range(1, levels + 1):
        if n > 1:
            G = _monic(spec, a.poly_compose(G, Qc))
        poly = newton_polygon([OKElement(spec, c, prec) for c in G])
        N = len(G) - 1
        cert = CERT_NONE
        v0 = None
        if poly.is_single_slope() and not poly.precision_limited and poly.first_index == 0:
            slope = poly.slopes[0][0]
            if slope.denominator == N:
                cert = CERT_FULL
                v0 = int(poly.vertices[0][1])
        rings.append(QuotientRing(spec, G, n, prec, v0))
        relations.append(tuple(G))
        certs.append(cert)
        polys.append(poly)
    return QuotientTower(spec, Q, rings, relations, certs, polys, prec)


# ---------------------------------------------------------------- certifier

@dataclass
class GaloisVerdict:
    level: int
    verdict: str
    orbit_size: int
    fiber_size: int | None
    roots_found: int
    expected_roots: int
    precision: int
    generators: list = field(default_factory=list)
    words: list = field(default_factory=list)
    hensel_margin: int | None = None
    product_digest: str | None = None
    reason: str = ""

    @property
    def certified(self):
        return self.verdict == CERTIFIED

    def to_json(self):
        return {"level": self.level, "verdict": self.verdict,
                "certified_galois": True if self.certified else self.verdict,
                "orbit_size": self.orbit_size, "fiber_size": self.fiber_size,
                "roots_found": self.roots_found, "expected_roots": self.expected_roots,
                "precision": self.precision, "generators": self.generators,
                "words": [list(w) for w in self.words],
                "hensel_margin": self.hensel_margin,
                "product_digest": self.product_digest, "reason": self.reason}


def product_of_linears(ring, roots):
    """Raw coefficient vectors (elements of R) of prod (T - y), low degree first."""
    a = ring.arith
    zero = tuple([a.zero] * ring.degree)
    one = ring.one().coeffs
    poly = [one]
    for y in roots:
        ny = tuple(a.neg(c) for c in y.coeffs)
        new = [zero] * (len(poly) + 1)
        for k, c in enumerate(poly):
            # (T - y) * c T^k
            new[k + 1] = tuple(a.add(u, v) for u, v in zip(new[k + 1], c))
            new[k] = tuple(a.add(u, v) for u, v in zip(new[k], ring.mul_raw(c, ny)))
        poly = new
    return poly


def product_digest(spec, coeff_vectors, c):
    payload = [[list(spec.canonical(x, c)) for x in vec] for vec in coeff_vectors]
    return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()


def _is_power_of(n, p):
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def generator_descriptor(g, index):
    return {"index": index, "linear": g.linear().coords(),
            "polynomial": g.exact_degree is not None, "series": g.to_json()}


def galois_certify(tower, pair, level, extra_generators=()):
    """Certify that level ``level`` of the tower is Galois over the base.

    Roots of G_n are generated from x_n by U and any extra series commuting
    with Q. The level is certified when N_n distinct roots are found, the
    product of (T - y) over them matches G_n at the working precision, and
    each root passes the Hensel separation test.
    """
    for k in range(1, level + 1):
        if tower.certificates[k - 1] != CERT_FULL:
            raise CertificateMissing(f"level {k} lacks the single-slope irreducibility certificate")
    R = tower.ring(level)
    spec = tower.spec
    N = R.degree
    x = R.gen()
    gens = [pair.U] + list(extra_generators)
    descriptors = [generator_descriptor(g, i) for i, g in enumerate(gens)]

    # working precision: the common floor of every generator at x
    images = [R.evaluate(g, x) for g in gens]
    c = min([R.precision] + [y.precision for y in images])

    def fail(reason, orbit, roots, words):
        return GaloisVerdict(level, INCONCLUSIVE, orbit, None, len(roots), N, c,
                             descriptors, words, reason=reason)

    if c < 1:
        return fail("generators carry no precision at this level", 0, [x], [()])

    # U-orbit of x
    orbit = 1
    y = images[0]
    while y.key(c) != x.key(c) and orbit <= N:
        orbit += 1
        y = R.evaluate(pair.U, y)

    # closure under all generators
    roots = [x]
    words = [()]
    seen = {x.key(c): 0}
    queue = [0]
    while queue and len(roots) <= N:
        i = queue.pop(0)
        for gi, g in enumerate(gens):
            yi = images[gi] if i == 0 else R.evaluate(g, roots[i])
            k = yi.key(c)
            if k not in seen:
                seen[k] = len(roots)
                roots.append(QElement(R, yi.coeffs, c))
                words.append(words[i] + (gi,))
                queue.append(len(roots) - 1)
    if len(roots) != N:
        return fail(f"found {len(roots)} of {N} roots", orbit, roots, words)

    prod = product_of_linears(R, roots)
    G = tower.relations[level - 1]
    for k, vec in enumerate(prod):
        target = R.constant(G[k]).coeffs
        if tuple(spec.canonical(u, c) for u in vec) != tuple(spec.canonical(u, c) for u in target):
            return fail(f"product congruence fails at T^{k}", orbit, roots, words)

    margin = None
    for i, yi in enumerate(roots):
        S = 0
        for j, yj in enumerate(roots):
            if i == j:
                continue
            v = (yi - yj).valuation()
            if isinstance(v, AtLeast):
                return fail("two roots agree to the working precision", orbit, roots, words)
            S += v
        m = N * c - 2 * S
        margin = m if margin is None else min(margin, m)
    if margin <= 0:
        return fail("roots are not separated enough for Hensel's lemma", orbit, roots, words)

    prev = tower.x_prev(level)
    Qc = list(tower.Q.coeffs[:tower.Q.exact_degree + 1])
    fiber = sum(1 for y in roots
                if QElement(R, R.eval_poly(Qc, y), c).key(c) == prev.key(c))
    verdict = CERTIFIED
    reason = ""
    if level >= 2 and not _is_power_of(fiber, spec.p):
        verdict, reason = INCONCLUSIVE, f"fiber size {fiber} is not a power of p"
    return GaloisVerdict(level, verdict, orbit, fiber, N, N, c, descriptors, words, margin,
                         product_digest(spec, prod, c), reason)
