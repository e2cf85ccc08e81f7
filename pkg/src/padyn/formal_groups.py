"""Lubin-Tate formal groups, their endomorphisms, and isogeny solving.

All solvers are triangular recurrences: the coefficient of T^n (or of the
degree-n part of a bivariate series) appears linearly, multiplied by a known
denominator. Division is done exactly on representatives, and the valuation
of each denominator is added to ``precision_loss``, a bound on how far the
computed coefficients can differ from the true ones.
"""

from dataclasses import dataclass, field
import threading

from padyn.bivariate import BivariateTruncated
from padyn.errors import (NoSolution, NotAUniformizer, PrecisionExhausted, SingularStep,
                          SpecMismatch, WrongShape)
from padyn.local_field import AtLeast, LocalFieldSpec, OKElement
from padyn.series_ring import TruncatedSeries, reduce_series


def exact_quotient(spec, num, den, vden=None):
    """num / den on raw values, assuming v(num) >= v(den) < precision."""
    if vden is None:
        vden = spec.val(den)
    a = spec.arith
    q = spec.div_pi_power(num, vden) if vden else num
    unit = spec.div_pi_power(den, vden) if vden else den
    return a.mul(q, spec._unit_inverse_raw(unit))


# ---------------------------------------------------------------- isogenies

@dataclass(frozen=True)
class IsogenySolution:
    h: TruncatedSeries
    residual_valuation: int
    precision_loss: int
    free_indices: tuple

    def to_json(self):
        return {"h": self.h.to_json(), "residual_valuation": self.residual_valuation,
                "precision_loss": self.precision_loss,
                "free_indices": list(self.free_indices)}


def _as_element(spec, x):
    return x if isinstance(x, OKElement) else OKElement.of(spec, x)


def isogeny_solve(P, P_S, h1, free_values=None):
    """Solve P(h(T)) = h(P_S(T)) for h with h'(0) = h1 (when that is free).

    Coefficient n obeys h_n (a^n - P'(0)) = [P(h_<n) - h_<n(P_S)]_n with
    a = P_S'(0). Indices where the factor vanishes to the available precision
    are free: the obstruction must vanish, and h_n is taken from
    ``free_values`` (default 0).
    """
    if not P.spec.same_field(P_S.spec):
        raise SpecMismatch("P and P_S are defined over different fields")
    spec = P.spec
    a = spec.arith
    M = spec.precision
    D = min(P.trunc, P_S.trunc)
    h1 = _as_element(spec, h1)
    free_values = free_values or {}
    Pc = list(P.coeffs[:D])
    Sc = list(P_S.coeffs[:D])
    alpha = Sc[1] if D > 1 else a.zero
    P1 = Pc[1] if D > 1 else a.zero

    h = [a.zero] * D
    precs = [M] * D
    free = []
    loss = 0
    if D > 1:
        den = a.sub(alpha, P1)
        if spec.val(den) >= M:
            h[1] = h1.raw
            free.append(1)
        elif not h1.is_zero():
            raise NoSolution("h'(0) must vanish when P'(0) != P_S'(0)", 1)
        precs[1] = min(M, h1.precision)
    alpha_pow = alpha
    for n in range(2, D):
        alpha_pow = a.mul(alpha_pow, alpha)
        den = a.sub(alpha_pow, P1)
        lhs = a.compose_trunc(Pc[:n + 1], h[:n + 1], n + 1)[n]
        rhs = a.compose_trunc(h[:n + 1], Sc[:n + 1], n + 1)[n]
        num = a.sub(lhs, rhs)
        avail = M - loss
        vd = spec.val(den)
        if vd >= avail:
            if spec.val(num) < avail:
                raise NoSolution(f"obstruction at T^{n} has valuation {spec.val(num)}", n)
            v = free_values.get(n, 0)
            h[n] = _as_element(spec, v).raw
            free.append(n)
        else:
            if spec.val(num) < vd:
                raise NoSolution(f"T^{n}: numerator valuation {spec.val(num)} "
                                 f"below denominator valuation {vd}", n)
            h[n] = exact_quotient(spec, num, den, vd)
            loss += vd
        if M - loss <= 0:
            raise PrecisionExhausted(f"precision exhausted at T^{n} (loss {loss})")
        precs[n] = M - loss
    # inputs known only to limited precision bound the result too
    floor = min(min(P.prec[1:D], default=M), min(P_S.prec[1:D], default=M))
    precs = [M] + [min(p, floor) for p in precs[1:]]
    series = TruncatedSeries(spec, tuple(h), tuple(precs), None)
    residual = _residual(P, P_S, series)
    return IsogenySolution(series, residual, loss, tuple(free))


def _residual(P, P_S, h):
    spec = P.spec
    diff = P.compose(h) - h.compose(P_S)
    return min((spec.val(c) for c in diff.coeffs[1:]), default=spec.precision)


@dataclass(frozen=True)
class SemiconjugacyReport:
    residual: object   # int, or AtLeast(M) when every coefficient vanishes
    trunc: int
    precision: int

    @property
    def residual_value(self):
        return self.residual.bound if isinstance(self.residual, AtLeast) else self.residual

    def to_json(self):
        return {"residual": str(self.residual), "trunc": self.trunc,
                "precision": self.precision}


def semiconjugacy_verify(P, P_S, h):
    """min v_K of the coefficients of P(h) - h(P_S) below the truncation.

    Uses exact polynomial composition of the truncated data (a code path
    separate from the solvers) and truncates afterwards.
    """
    if not (P.spec.same_field(P_S.spec) and P.spec.same_field(h.spec)):
        raise SpecMismatch("series over different fields")
    spec = P.spec
    a = spec.arith
    D = min(P.trunc, P_S.trunc, h.trunc)
    lhs = a.poly_compose(list(P.coeffs[:D]), list(h.coeffs[:D]))[:D]
    rhs = a.poly_compose(list(h.coeffs[:D]), list(P_S.coeffs[:D]))[:D]
    diff = a.poly_sub(lhs, rhs)[:D]
    M = spec.precision
    best = min((spec.val(c) for c in diff[1:]), default=M)
    return SemiconjugacyReport(AtLeast(M) if best >= M else best, D, M)


# ---------------------------------------------------------------- Lubin-Tate

def lt_series(spec, pi, trunc=32):
    """The canonical Lubin-Tate polynomial pi*T + T^q."""
    pi = _as_element(spec, pi)
    if pi.valuation() != 1:
        raise NotAUniformizer(f"valuation of pi is {pi.valuation()}, expected 1")
    q = spec.q
    terms = [0] * (q + 1)
    terms[1] = pi
    terms[q] = 1
    if q == 1:
        raise WrongShape("residue field has one element")
    return TruncatedSeries.from_coeffs(spec, terms, trunc)


def _check_lubin_tate(f):
    spec = f.spec
    if f.linear().valuation() != 1:
        raise NotAUniformizer("f'(0) is not a uniformizer")
    red = reduce_series(f)
    F = spec.residue_field
    for i, c in enumerate(red.coeffs):
        want = F.one if i == spec.q else F.zero
        if c != want:
            raise WrongShape(f"f is not congruent to T^{spec.q} modulo the maximal ideal")


def lt_group_law(spec, f, degree=None):
    """The formal group law F with f(F(X,Y)) = F(f(X), f(Y)), F = X+Y+..."""
    _check_lubin_tate(f)
    a = spec.arith
    D = degree or f.trunc
    M = spec.precision
    pi = f.coeffs[1]
    F = BivariateTruncated.x_plus_y(spec, D)
    grid = [list(r) for r in F.grid]
    loss = 0
    pi_pow = pi
    for n in range(2, D):
        pi_pow = a.mul(pi_pow, pi)
        den = a.sub(pi, pi_pow)
        vd = spec.val(den)
        if vd >= M - loss:
            raise SingularStep(f"degree {n}: denominator valuation {vd} exhausts precision")
        cur = F._make(grid)
        trunc_n = BivariateTruncated(spec, D, cur.grid, M)
        L = trunc_n.substitute(f, f)
        R = trunc_n.apply_outer(f)
        for i in range(n + 1):
            j = n - i
            num = a.sub(L.grid[i][j], R.grid[i][j])
            if spec.val(num) < vd:
                raise SingularStep(f"degree {n}: coefficient X^{i}Y^{j} is not divisible")
            grid[i][j] = exact_quotient(spec, num, den, vd)
        loss += vd
    return BivariateTruncated(spec, D, tuple(map(tuple, grid)), M - loss, loss)


@dataclass(eq=False)
class LubinTateData:
    """A Lubin-Tate series f = pi*T + T^q with its group law and endomorphisms."""

    spec: LocalFieldSpec
    pi: OKElement
    f: TruncatedSeries
    trunc: int
    group_degree: int = 12
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    endo_cache: dict = field(default_factory=dict, repr=False)
    _group_law: object = field(default=None, repr=False)

    @property
    def q(self):
        return self.spec.q

    @property
    def group_law(self):
        with self._lock:
            if self._group_law is None:
                self._group_law = lt_group_law(self.spec, self.f, self.group_degree)
            return self._group_law

    def summary(self):
        return {"spec": self.spec.to_json(), "pi": self.pi.coords(), "q": self.q,
                "f": self.f.to_json(), "trunc": self.trunc}


def lubin_tate(spec, pi, trunc=32, group_degree=12):
    pi = _as_element(spec, pi)
    f = lt_series(spec, pi, trunc)
    return LubinTateData(spec, pi, f, trunc, group_degree)


def lt_endomorphism(lt, a):
    """[a]_f: the unique series with [a]'(0) = a commuting with f. Cached."""
    a = _as_element(lt.spec, a)
    key = a.key()
    with lt._lock:
        hit = lt.endo_cache.get(key)
    if hit is not None:
        return hit
    sol = isogeny_solve(lt.f, lt.f, a)
    with lt._lock:
        return lt.endo_cache.setdefault(key, sol.h)
