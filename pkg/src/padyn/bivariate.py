"""Bivariate truncated series over O_K (total degree below D).

Coefficients live in a dense D x D grid of raw values, with c[i][j] the
coefficient of X^i Y^j and every entry with i + j >= D equal to zero. A single
absolute precision covers the whole object, which is how the group-law
solver reports its accumulated loss.
"""

from dataclasses import dataclass

from padyn.errors import SpecMismatch
from padyn.local_field import AtLeast, LocalFieldSpec, OKElement
from padyn.series_ring import TruncatedSeries


def _power_table(series, D):
    """Raw coefficient lists of series^0 .. series^(D-1), each truncated at D."""
    a = series.arith
    g = list(series.coeffs[:D]) + [a.zero] * max(0, D - series.trunc)
    one = [a.one] + [a.zero] * (D - 1)
    table = [one]
    for _ in range(1, D):
        table.append(a.poly_mul_trunc(table[-1], g, D))
    return table


@dataclass(frozen=True, eq=False)
class BivariateTruncated:
    spec: LocalFieldSpec
    trunc: int
    grid: tuple
    precision: int
    precision_loss: int = 0

    # ------------------------------------------------------------ construction
    @classmethod
    def from_terms(cls, spec, terms, trunc, precision=None):
        """Build from {(i, j): value}; terms of total degree >= trunc are dropped."""
        a = spec.arith
        grid = [[a.zero] * trunc for _ in range(trunc)]
        for (i, j), v in terms.items():
            if i + j == 0:
                raise ValueError("bivariate series must vanish at the origin")
            if i + j < trunc:
                grid[i][j] = a.from_int(v) if isinstance(v, int) else a.from_coords(v)
        prec = spec.precision if precision is None else min(precision, spec.precision)
        return cls(spec, trunc, tuple(map(tuple, grid)), prec)

    @classmethod
    def x_plus_y(cls, spec, trunc):
        return cls.from_terms(spec, {(1, 0): 1, (0, 1): 1}, trunc)

    def _make(self, grid, precision=None, loss=None):
        return BivariateTruncated(self.spec, self.trunc, tuple(map(tuple, grid)),
                                  self.precision if precision is None else precision,
                                  self.precision_loss if loss is None else loss)

    # ------------------------------------------------------------ accessors
    @property
    def arith(self):
        return self.spec.arith

    def coeff(self, i, j):
        if i + j >= self.trunc:
            raise IndexError("beyond the total-degree truncation")
        return OKElement(self.spec, self.grid[i][j], self.precision)

    def terms(self):
        """Nonzero coefficients as {(i, j): raw}."""
        a = self.arith
        return {(i, j): c for i, row in enumerate(self.grid) for j, c in enumerate(row)
                if not a.is_zero(c)}

    def min_valuation(self):
        """Smallest coefficient valuation, AtLeast(precision) if all vanish."""
        best = self.precision
        for row in self.grid:
            for c in row:
                best = min(best, self.spec.val(c))
        return AtLeast(self.precision) if best >= self.precision else best

    def is_zero(self):
        return isinstance(self.min_valuation(), AtLeast)

    def swap(self):
        """F(Y, X)."""
        D = self.trunc
        return self._make([[self.grid[j][i] for j in range(D)] for i in range(D)])

    def at_y_zero(self):
        """The univariate series F(X, 0)."""
        return TruncatedSeries(self.spec, tuple(row[0] for row in self.grid),
                               (self.spec.precision,) + (self.precision,) * (self.trunc - 1))

    # ------------------------------------------------------------ arithmetic
    def _check(self, other):
        if not self.spec.same_field(other.spec):
            raise SpecMismatch("bivariate series over different fields")
        if other.trunc != self.trunc:
            raise ValueError("truncations differ")

    def __add__(self, other):
        self._check(other)
        a = self.arith
        grid = [[a.add(x, y) for x, y in zip(r, s)] for r, s in zip(self.grid, other.grid)]
        return self._make(grid, min(self.precision, other.precision),
                          max(self.precision_loss, other.precision_loss))

    def __neg__(self):
        a = self.arith
        return self._make([[a.neg(x) for x in r] for r in self.grid])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Product truncated at total degree D (via a packed univariate product)."""
        self._check(other)
        a = self.arith
        D = self.trunc
        W = 2 * D - 1

        def flat(g):
            out = [a.zero] * (W * D)
            for i in range(D):
                for j in range(D - i):
                    out[i + W * j] = g[i][j]
            return out

        prod = a.poly_mul(flat(self.grid), flat(other.grid))
        grid = [[a.zero] * D for _ in range(D)]
        for i in range(D):
            for j in range(D - i):
                k = i + W * j
                if k < len(prod):
                    grid[i][j] = prod[k]
        return self._make(grid, min(self.precision, other.precision))

    def substitute(self, g, h):
        """F(g(X), h(Y)) for univariate g, h with zero constant term."""
        a = self.arith
        D = self.trunc
        Ag = _power_table(g, D)
        Ah = Ag if h is g else _power_table(h, D)
        C = self.grid
        # M1[i][b] = sum_j C[i][j] * Ah[j][b]
        M1 = []
        for i in range(D):
            row = [a.zero] * D
            for j in range(D - i):
                c = C[i][j]
                if a.is_zero(c):
                    continue
                Aj = Ah[j]
                for b in range(j, D):
                    if not a.is_zero(Aj[b]):
                        row[b] = a.add(row[b], a.mul(c, Aj[b]))
            M1.append(row)
        out = [[a.zero] * D for _ in range(D)]
        for i in range(D):
            Ai = Ag[i]
            Mi = M1[i]
            for x in range(i, D):
                ax = Ai[x]
                if a.is_zero(ax):
                    continue
                for y in range(D - x):
                    if not a.is_zero(Mi[y]):
                        out[x][y] = a.add(out[x][y], a.mul(ax, Mi[y]))
        prec = min(self.precision, min(g.prec[1:], default=self.precision),
                   min(h.prec[1:], default=self.precision))
        return self._make(out, prec)

    def apply_outer(self, f):
        """f(F(X, Y)) for a univariate f, summing f_k F^k."""
        a = self.arith
        D = self.trunc
        top = min(f.trunc, D) - 1
        while top > 0 and a.is_zero(f.coeffs[top]):
            top -= 1
        out = [[a.zero] * D for _ in range(D)]
        power = self
        for k in range(1, top + 1):
            if k > 1:
                power = power * self
            c = f.coeffs[k]
            if a.is_zero(c):
                continue
            for i in range(D):
                for j in range(D - i):
                    v = power.grid[i][j]
                    if not a.is_zero(v):
                        out[i][j] = a.add(out[i][j], a.mul(c, v))
        fprec = min(f.prec[1:D], default=self.precision)
        return self._make(out, min(self.precision, fprec))

    def evaluate(self, g, h):
        """The univariate series F(g(T), h(T))."""
        a = self.arith
        D = min(self.trunc, g.trunc, h.trunc)
        Ah = _power_table(h, D)
        gc = list(g.coeffs[:D])
        acc = [a.zero] * D
        for i in range(D - 1, -1, -1):
            inner = [a.zero] * D
            for j in range(D - i):
                c = self.grid[i][j]
                if a.is_zero(c):
                    continue
                for b in range(j, D):
                    inner[b] = a.add(inner[b], a.mul(c, Ah[j][b]))
            acc = a.poly_mul_trunc(acc, gc, D) if i < D - 1 else acc
            acc = [a.add(x, y) for x, y in zip(acc, inner)]
        prec = min(self.precision, min(g.prec[1:D], default=self.precision),
                   min(h.prec[1:D], default=self.precision))
        return TruncatedSeries(self.spec, tuple(acc),
                               (self.spec.precision,) + (prec,) * (D - 1))

    def homogeneous_part(self, n):
        """{(i, n - i): raw} for the degree-n part."""
        return {(i, n - i): self.grid[i][n - i] for i in range(n + 1) if n < self.trunc}

    def to_json(self):
        a = self.arith
        return {"trunc": self.trunc, "precision": self.precision,
                "precision_loss": self.precision_loss,
                "terms": [[i, j, a.coords(c)] for (i, j), c in sorted(self.terms().items())]}

    def __repr__(self):
        a = self.arith
        parts = []
        for (i, j), c in sorted(self.terms().items(), key=lambda t: (sum(t[0]), t[0])):
            cs = c if a.scalar else list(c)
            parts.append(f"{cs}*X^{i}Y^{j}")
        return "(" + (" + ".join(parts) or "0") + f" + O(deg {self.trunc}))"


def triple_compose(F):
    """Grids of F(F(X,Y),Z) and F(X,F(Y,Z)) as {(i, j, k): raw} dictionaries.

    Both sides only need powers of the bivariate F, so no trivariate product
    is ever formed.
    """
    a = F.arith
    D = F.trunc
    powers = [None, F]
    for _ in range(2, D):
        powers.append(powers[-1] * F)
    left, right = {}, {}
    C = F.grid

    def acc(dst, key, val):
        cur = dst.get(key, a.zero)
        dst[key] = a.add(cur, val)

    for i in range(1, D):
        Pi = powers[i].grid
        for j in range(D - i):
            c = C[i][j]
            if a.is_zero(c):
                continue
            for x in range(D):
                for y in range(D - x):
                    v = Pi[x][y]
                    if a.is_zero(v) or x + y + j >= D:
                        continue
                    acc(left, (x, y, j), a.mul(c, v))     # c_ij F(X,Y)^i Z^j
    for j in range(1, D):
        Pj = powers[j].grid
        for i in range(D - j):
            c = C[i][j]
            if a.is_zero(c):
                continue
            for y in range(D):
                for z in range(D - y):
                    v = Pj[y][z]
                    if a.is_zero(v) or i + y + z >= D:
                        continue
                    acc(right, (i, y, z), a.mul(c, v))    # c_ij X^i F(Y,Z)^j
    left.update({(0, 0, k): a.add(left.get((0, 0, k), a.zero), C[0][k]) for k in range(1, D)})
    right.update({(k, 0, 0): a.add(right.get((k, 0, 0), a.zero), C[k][0]) for k in range(1, D)})
    return left, right
