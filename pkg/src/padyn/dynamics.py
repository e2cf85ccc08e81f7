"""Commuting pairs (P, U): shape checks, normalization, valuation dynamics
and the two-condition criterion report."""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from padyn.errors import (DoesNotCommute, NoCommutantAtPrecision, NonDecomposable,
                          NormalizationFailed, NoSolution, PolygonAmbiguous,
                          PrecisionExhausted, SpecMismatch, WrongShape, MathError)
from padyn.formal_groups import isogeny_solve
from padyn.local_field import AtLeast, OKElement, teichmuller_lift
from padyn.newton import NewtonPolygon, newton_polygon, polygon_from_points
from padyn.series_ring import (ResidueSeries, TruncatedSeries, ZERO_REDUCTION, iterate,
                               reduce_series, weierstrass_degree)
from padyn.tower import (CERT_FULL, CERTIFIED, INCONCLUSIVE, GaloisVerdict, galois_certify,
                         tower_build)

__all__ = [
    "CommutingPair", "check_commute", "LubinDecomposition", "lubin_decompose",
    "commutant_solve", "commutant_solution", "promote_polynomial", "Normalization",
    "normalize_to_q", "ValuationTrace", "TraceEntry", "valuation_sequence",
    "nonzero_root_valuation", "fixed_point_valuations", "tower_build", "galois_certify",
    "CriterionReport", "criterion_check", "trace_to_tsv",
]


# ---------------------------------------------------------------- pairs

@dataclass(frozen=True, eq=False)
class CommutingPair:
    P: TruncatedSeries
    U: TruncatedSeries
    commute_residual: object          # AtLeast(...) on success
    derivative_not_root_of_unity: bool
    wideg: int

    @property
    def spec(self):
        return self.P.spec

    @property
    def trunc(self):
        return min(self.P.trunc, self.U.trunc)


def _root_of_unity_proxy(u, spec, bound):
    """False when u^((q-1) p^j) = 1 at precision for some p^j <= bound."""
    base = u ** (spec.q - 1)
    pj = 1
    while pj <= bound:
        if base == OKElement.one(spec):
            return False
        base = base ** spec.p
        pj *= spec.p
    return True


def check_commute(P, U, root_of_unity_bound=64):
    """Validate a commuting pair: P noninvertible, U invertible, P(U) = U(P)."""
    if not P.spec.same_field(U.spec):
        raise SpecMismatch("P and U are defined over different fields")
    s = weierstrass_degree(P)
    if s == ZERO_REDUCTION:
        raise WrongShape("P vanishes modulo the maximal ideal")
    comm = P.compose(U) - U.compose(P)
    idx = comm.first_nonzero()
    if idx is not None:
        raise DoesNotCommute(idx, comm.coeff(idx).valuation())
    if P.linear().is_unit():
        raise WrongShape("P'(0) is a unit: P must be noninvertible")
    if not U.linear().is_unit():
        raise WrongShape("U'(0) is not a unit: U must be invertible")
    flag = _root_of_unity_proxy(U.linear(), P.spec, root_of_unity_bound)
    return CommutingPair(P, U, comm.min_valuation(), flag, s)


# ---------------------------------------------------------------- reduction

@dataclass(frozen=True, eq=False)
class LubinDecomposition:
    d: int
    H: ResidueSeries


def _vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def lubin_decompose(Pbar):
    """Write Pbar = H(T^(p^d)) with H'(0) != 0."""
    support = Pbar.support()
    if not support:
        raise NonDecomposable("the reduction is zero")
    p = Pbar.spec.p
    d = min(_vp(i, p) for i in support)
    if d == 0:
        raise NonDecomposable(f"exponent {min(i for i in support if i % p)} is prime to p")
    step = p ** d
    n = -(-Pbar.trunc // step)
    F = Pbar.field
    H = [Pbar.coeffs[i * step] if i * step < Pbar.trunc else F.zero for i in range(n)]
    if n < 2 or F.is_zero(H[1]):
        raise NonDecomposable("H'(0) vanishes")
    return LubinDecomposition(d, ResidueSeries(Pbar.spec, tuple(H)))


# ---------------------------------------------------------------- commutants

def commutant_solution(P, u1, free_values=None):
    """The commutant of P with linear coefficient u1, as an IsogenySolution.

    u1 is normally a unit (an invertible commutant). A non-unit u1 is also
    accepted: the recurrence stays solvable because u1^n - P'(0) is nonzero
    for n >= 2, and u1 = P'(0) returns P itself.
    """
    spec = P.spec
    u1 = u1 if isinstance(u1, OKElement) else OKElement.of(spec, u1)
    if weierstrass_degree(P) == ZERO_REDUCTION:
        raise WrongShape("P vanishes modulo the maximal ideal")
    if P.linear().is_zero():
        raise PrecisionExhausted("P'(0) vanishes, so the linear coefficient does not pin down U")
    try:
        return isogeny_solve(P, P, u1, free_values)
    except NoSolution as exc:
        raise NoCommutantAtPrecision(exc.index or 0, str(exc)) from exc


def commutant_solve(P, u1, free_values=None):
    """U with U(P) = P(U) and U'(0) = u1, solved coefficient by coefficient."""
    return commutant_solution(P, u1, free_values).h


def promote_polynomial(P, V):
    """Return V as an exact polynomial when it visibly is one.

    V qualifies when its nonzero coefficients stop at degree <= D/2 and it
    commutes with the polynomial P exactly (untruncated composition).
    Otherwise V is returned unchanged.
    """
    if P.exact_degree is None or V.exact_degree is not None:
        return V
    a = V.arith
    k = V.trunc - 1
    while k > 0 and a.is_zero(V.coeffs[k]):
        k -= 1
    if k == 0 or k > V.trunc // 2:
        return V
    Pc = list(P.coeffs[:P.exact_degree + 1])
    Vc = list(V.coeffs[:k + 1])
    lhs = a.poly_compose(Pc, Vc)
    rhs = a.poly_compose(Vc, Pc)
    n = max(len(lhs), len(rhs))
    lhs += [a.zero] * (n - len(lhs))
    rhs += [a.zero] * (n - len(rhs))
    if lhs != rhs:
        return V
    M = V.spec.precision
    return TruncatedSeries(V.spec, V.coeffs, (M,) * V.trunc, k)


# ---------------------------------------------------------------- normalization

@dataclass(frozen=True, eq=False)
class Normalization:
    V: TruncatedSeries
    Q: TruncatedSeries
    d: int
    m: int
    H: ResidueSeries
    precision_loss: int = 0

    def to_json(self):
        return {"satisfied": True, "V": self.V.to_json(), "Q": self.Q.to_json(),
                "d": self.d, "m": self.m, "precision_loss": self.precision_loss}


def _is_pure_power(Rbar, k):
    F = Rbar.field
    for i, c in enumerate(Rbar.coeffs):
        want = F.one if i == k else F.zero
        if c != want:
            return False
    return True


def normalize_to_q(pair, m_max=4):
    """Find V commuting with P and Q = V(P^m) reducing to T^(p^d)."""
    P = pair.P
    spec = P.spec
    ident = TruncatedSeries.identity(spec, P.trunc)
    for m in range(1, m_max + 1):
        Pm = iterate(P, m)
        red = reduce_series(Pm)
        try:
            dec = lubin_decompose(red)
        except NonDecomposable as exc:
            raise NormalizationFailed(f"reduction of P^{m} does not decompose: {exc}") from exc
        target = spec.p ** dec.d
        if _is_pure_power(red, target):
            return Normalization(ident, Pm, dec.d, m, dec.H)
        Fq = spec.residue_field
        v1 = teichmuller_lift(spec, Fq.inv(dec.H.coeffs[1]))
        try:
            sol = commutant_solution(P, v1)
        except MathError:
            continue
        V = promote_polynomial(P, sol.h)
        Q = V.compose(Pm)
        if _is_pure_power(reduce_series(Q), target):
            return Normalization(V, Q, dec.d, m, dec.H, sol.precision_loss)
    raise NormalizationFailed(f"no V found for iterates up to {m_max}")


# ---------------------------------------------------------------- valuations

@dataclass(frozen=True)
class TraceEntry:
    n: int
    valuation: Fraction
    degree_est: int
    single_slope: bool


@dataclass(frozen=True)
class ValuationTrace:
    entries: tuple
    n0: int | None
    d_stable: Fraction | None
    s: int

    def to_json(self):
        return {"entries": [{"n": e.n, "valuation": str(e.valuation),
                             "degree_est": e.degree_est, "single_slope": e.single_slope}
                            for e in self.entries],
                "n0": self.n0, "d_stable": None if self.d_stable is None else str(self.d_stable),
                "s": self.s}


def trace_to_tsv(trace):
    lines = ["# n\tv_num\tv_den\tsingle_slope"]
    for e in trace.entries:
        lines.append(f"{e.n}\t{e.valuation.numerator}\t{e.valuation.denominator}\t"
                     f"{str(e.single_slope).lower()}")
    return "\n".join(lines) + "\n"


def nonzero_root_valuation(Q):
    """Largest valuation of a nonzero root of Q in the open unit disk."""
    poly = newton_polygon(Q)
    negative = [(-sl, n) for sl, n in poly.slopes if sl < 0]
    if not negative:
        raise PolygonAmbiguous("Q has no nonzero root in the open unit disk")
    return negative[0][0]


def _shifted_polygon(Q, v, s):
    spec = Q.spec
    points = [(0, v)]
    omitted = []
    for i in range(1, s + 1):
        pr = Q.prec[i]
        val = spec.val(Q.coeffs[i])
        if val < pr:
            points.append((i, val))
        else:
            omitted.append((i, pr))
    return polygon_from_points(points, omitted)


def valuation_sequence(Q, alpha0_valuation=None, N=10):
    """v(alpha_n) for n = 0..N along a Q-consistent sequence.

    Valuations are normalized by v_K(pi_K) = 1. Each step reads the first
    (steepest) segment of the polygon of Q(T) - alpha_n.
    """
    s = weierstrass_degree(Q)
    if s == ZERO_REDUCTION:
        raise WrongShape("Q vanishes modulo the maximal ideal")
    v = Fraction(alpha0_valuation) if alpha0_valuation is not None else nonzero_root_valuation(Q)
    if v <= 0:
        raise ValueError("alpha_0 must have positive valuation")
    entries = []
    deg = v.denominator
    for n in range(N + 1):
        poly = _shifted_polygon(Q, v, s)
        if poly.precision_limited:
            raise PolygonAmbiguous(f"level {n}: omitted coefficients could cut the polygon")
        neg = [(sl, ln) for sl, ln in poly.slopes if sl < 0]
        single = len(neg) == 1 and neg[0][1] == s
        entries.append(TraceEntry(n, v, deg, single))
        nxt = -neg[0][0]
        deg *= (nxt * deg).denominator
        v = nxt
    n0 = None
    for i in range(len(entries)):
        tail = entries[i:]
        if all(e.single_slope for e in tail) and all(
                b.valuation * s == a.valuation for a, b in zip(tail, tail[1:])):
            n0 = entries[i].n
            break
    d_stable = None
    if n0 is not None:
        last = entries[-1]
        d_stable = last.valuation * last.degree_est
    return ValuationTrace(tuple(entries), n0, d_stable, s)


def fixed_point_valuations(U, k=1):
    """Polygon of (U^k(T) - T)/T; a zero series gives a degenerate polygon."""
    W = iterate(U, k) - TruncatedSeries.identity(U.spec, U.trunc)
    spec = U.spec
    tail = W.exact_degree
    points, omitted = [], []
    for i in range(1, W.trunc):
        pr = W.prec[i]
        v = spec.val(W.coeffs[i])
        if v < pr:
            points.append((i - 1, v))
        elif tail is None or i <= tail:
            omitted.append((i - 1, pr))
    if not points:
        return NewtonPolygon((), degenerate=True)
    return polygon_from_points(points, omitted)


# ---------------------------------------------------------------- criterion

@dataclass(eq=False)
class CriterionReport:
    condition1: dict
    condition2: list
    levels_checked: int
    provenance: dict
    extra_generators: list = field(default_factory=list)

    @property
    def condition1_satisfied(self):
        return bool(self.condition1.get("satisfied"))

    @property
    def condition2_certified(self):
        return bool(self.condition2) and all(v.certified for v in self.condition2)

    def to_json(self):
        return {"condition1": self.condition1,
                "condition2": {"levels_checked": f"1..{self.levels_checked}",
                               "all_certified": self.condition2_certified,
                               "levels": [v.to_json() for v in self.condition2]},
                "provenance": self.provenance}


def _candidate_units(spec, limit):
    """Linear coefficients tried for extra commutant generators.

    Small rational integers prime to p come first, then -1, then units
    1 + pi*lift(t^j), 1 + pi^k and the Teichmuller generator times small
    integers. Duplicates (equal to full precision) are dropped.
    """
    a = spec.arith
    raws = []
    k = 2
    while len(raws) < limit - 1 and k < 64:
        if k % spec.p:
            raws.append(a.from_int(k))
        k += 1
    raws.insert(min(3, len(raws)), a.from_int(-1))
    one = a.one
    pi = a.pi()
    for j in range(spec.h):
        t_j = a.from_int(1) if j == 0 else spec.lift_residue(
            tuple(1 if i == j else 0 for i in range(spec.h)))
        raws.append(a.add(one, a.mul(pi, t_j)))
    pk = pi
    for _ in range(2, spec.e + 1):
        pk = a.mul(pk, pi)
        raws.append(a.add(one, pk))
    if spec.q > 2:
        zeta = teichmuller_lift(spec, spec.residue_field.generator()).raw
        raws.append(zeta)
        raws.append(a.mul(zeta, a.from_int(2 if spec.p != 2 else 3)))
    out, seen = [], set()
    for r in raws:
        key = tuple(spec.canonical(r, spec.precision))
        if key not in seen:
            seen.add(key)
            out.append(OKElement(spec, r, spec.precision))
    return out[:max(limit, 0) + spec.h + spec.e + 2]


def criterion_check(pair, levels, m_max=4, search_generators=True, max_candidates=8):
    """Run normalization, tower construction and certification for levels 1..N."""
    spec = pair.spec
    norm = normalize_to_q(pair, m_max)
    Q = norm.Q
    tower = tower_build(spec, Q, levels)
    extras = []
    losses = {"normalization": norm.precision_loss, "generators": []}
    candidates = None
    verdicts = []
    for n in range(1, levels + 1):
        if any(c != CERT_FULL for c in tower.certificates[:n]):
            N = tower.ring(n).degree
            verdicts.append(GaloisVerdict(n, INCONCLUSIVE, 0, None, 0, N, 0,
                                          reason="irreducibility certificate missing"))
            continue
        verdict = galois_certify(tower, pair, n, extras)
        while (verdict.verdict != CERTIFIED and search_generators
               and verdict.roots_found < verdict.expected_roots):
            if candidates is None:
                candidates = _candidate_units(spec, max_candidates)
            if not candidates:
                break
            u = candidates.pop(0)
            try:
                sol = commutant_solution(Q, u)
            except MathError:
                continue
            g = promote_polynomial(Q, sol.h)
            trial = galois_certify(tower, pair, n, extras + [g])
            if trial.roots_found > verdict.roots_found or trial.verdict == CERTIFIED:
                extras.append(g)
                losses["generators"].append(0 if g.exact_degree is not None
                                            else sol.precision_loss)
                verdict = trial
        verdicts.append(verdict)
    cond1 = norm.to_json()
    cond1["reduction"] = f"T^{spec.p ** norm.d}"
    provenance = {"M": spec.precision, "D": pair.trunc, "tower_precision": tower.precision,
                  "losses": losses, "commute_residual": str(pair.commute_residual),
                  "derivative_not_root_of_unity": pair.derivative_not_root_of_unity,
                  "tower": tower.summary()}
    report = CriterionReport(cond1, verdicts, levels, provenance, extras)
    report.tower = tower
    report.normalization = norm
    return report
