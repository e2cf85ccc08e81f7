import pytest
from hypothesis import given, settings, strategies as st

from padyn.bivariate import BivariateTruncated, triple_compose
from padyn.errors import NoSolution, NotAUniformizer, SpecMismatch
from padyn.formal_groups import (isogeny_solve, lt_endomorphism, lt_group_law, lt_series,
                                 lubin_tate, semiconjugacy_verify)
from padyn.local_field import AtLeast, LocalFieldSpec, OKElement, qp
from padyn.series_ring import TruncatedSeries

from oracles import binomial_series, poly_mul


def S(spec, coeffs, D=16, polynomial=True):
    return TruncatedSeries.from_coeffs(spec, coeffs, D, polynomial)


def vmin(x):
    """A min_valuation result as an int (AtLeast bounds become their bound)."""
    return x.bound if isinstance(x, AtLeast) else x


def bivariate_ok(F, terms, modulus_power):
    """F agrees with {(i, j): int} modulo pi^modulus_power in every slot."""
    spec = F.spec
    a = spec.arith
    for i in range(F.trunc):
        for j in range(F.trunc - i):
            want = a.from_int(terms.get((i, j), 0))
            if spec.val(a.sub(F.grid[i][j], want)) < modulus_power:
                return False
    return True


# ---------------------------------------------------------------- bivariate

def naive_bivariate_substitute(terms, g, h, D):
    """{(x, y): coeff} of sum c_ij g(X)^i h(Y)^j with integer lists g, h."""
    def powers(s):
        out = [[1]]
        for _ in range(D):
            out.append(poly_mul(out[-1], s)[:D])
        return out
    G, H = powers(g), powers(h)
    out = {}
    for (i, j), c in terms.items():
        for x, gx in enumerate(G[i]):
            for y, hy in enumerate(H[j]):
                if x + y < D and gx * hy:
                    out[(x, y)] = out.get((x, y), 0) + c * gx * hy
    return out


@settings(max_examples=30, deadline=None)
@given(terms=st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                             st.integers(-5, 5), max_size=6),
       g=st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       h=st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_substitute_matches_naive(terms, g, h):
    terms = {k: v for k, v in terms.items() if k != (0, 0)}
    D = 7
    s = qp(3, 20)
    F = BivariateTruncated.from_terms(s, terms, D)
    got = F.substitute(S(s, [0] + g, D), S(s, [0] + h, D))
    want = naive_bivariate_substitute({k: v for k, v in terms.items() if sum(k) < D},
                                      [0] + g, [0] + h, D)
    assert bivariate_ok(got, want, 20)


def test_bivariate_helpers():
    s = qp(2, 10)
    F = BivariateTruncated.from_terms(s, {(1, 0): 1, (0, 1): 1, (1, 1): 1}, 6)
    assert F.swap().grid == F.grid
    assert F.at_y_zero() == TruncatedSeries.identity(s, 6)
    with pytest.raises(ValueError):
        BivariateTruncated.from_terms(s, {(0, 0): 1}, 4)


# ---------------------------------------------------------------- Lubin-Tate

def test_lt_series_examples():
    assert lt_series(qp(3, 20), 3) == S(qp(3, 20), [0, 3, 0, 1], 32)
    assert lt_series(qp(2, 20), 2) == S(qp(2, 20), [0, 2, 1], 32)
    assert lt_series(qp(2, 20), 6) == S(qp(2, 20), [0, 6, 1], 32)
    with pytest.raises(NotAUniformizer):
        lt_series(qp(2, 20), 4)


def test_multiplicative_group_law():
    s = qp(2, 32)
    lt = lubin_tate(s, 2, 12)
    assert bivariate_ok(lt.group_law, {(1, 0): 1, (0, 1): 1, (1, 1): 1},
                        lt.group_law.precision)


@pytest.mark.parametrize("p,h,pi", [(2, 1, 2), (3, 1, 3), (2, 2, 2)])
def test_group_law_axioms(p, h, pi):
    s = LocalFieldSpec(p, h, (-p, 1), 16)
    lt = lubin_tate(s, pi, 12)
    F = lt.group_law
    c = F.precision
    assert c == 16 - F.precision_loss
    f = lt.f
    residual = F.substitute(f, f) - F.apply_outer(f)
    assert vmin(residual.min_valuation()) >= c
    assert vmin((F - F.swap()).min_valuation()) >= c
    assert F.at_y_zero() == TruncatedSeries.identity(s, 12)
    left, right = triple_compose(F)
    a = s.arith
    for key in set(left) | set(right):
        d = a.sub(left.get(key, a.zero), right.get(key, a.zero))
        assert s.val(d) >= c


def test_endomorphisms_of_multiplicative_group():
    s = qp(2, 32)
    lt = lubin_tate(s, 2, 16)
    assert lt_endomorphism(lt, 1) == TruncatedSeries.identity(s, 16)
    assert lt_endomorphism(lt, 2) == lt.f
    assert lt_endomorphism(lt, 3) == S(s, binomial_series(3, 16), 16)
    assert lt_endomorphism(lt, 3) is lt_endomorphism(lt, 3)


def test_endomorphism_composition_law():
    s = qp(3, 24)
    lt = lubin_tate(s, 3, 16)
    e2, e4 = lt_endomorphism(lt, 2), lt_endomorphism(lt, 4)
    assert e2(e2) == e4


# ---------------------------------------------------------------- isogenies

def test_identity_isogeny():
    s = qp(3, 24)
    f = lt_series(s, 3, 16)
    sol = isogeny_solve(f, f, 1)
    assert sol.h == TruncatedSeries.identity(s, 16)
    assert sol.residual_valuation == 24


def test_isogeny_between_lubin_tate_series():
    s = qp(3, 48)
    P = S(s, [0, 3, 3, 1], 32)
    P_S = S(s, [0, 3, 0, 1], 32)
    sol = isogeny_solve(P, P_S, 1)
    assert sol.h.linear() == 1
    assert sol.residual_valuation >= 48 - sol.precision_loss
    check = semiconjugacy_verify(P, P_S, sol.h)
    assert check.residual_value >= 48 - sol.precision_loss


def test_isogeny_spec_mismatch():
    with pytest.raises(SpecMismatch):
        isogeny_solve(S(qp(2, 16), [0, 2, 1]), S(qp(3, 16), [0, 3, 0, 1]), 1)


def test_isogeny_rejects_nonzero_h1_for_different_multipliers():
    s = qp(3, 16)
    with pytest.raises(NoSolution):
        isogeny_solve(S(s, [0, 3, 0, 1]), S(s, [0, 6, 0, 1]), 1)


def test_low_precision_turns_late_indices_free():
    # v(2^n - 2) = 1 reaches the available precision once two digits are lost
    s = qp(2, 3)
    sol = isogeny_solve(S(s, [0, 2, 1], 8), S(s, [0, 2, 1], 8), 1)
    assert sol.precision_loss == 2
    assert sol.free_indices == (1, 4, 5, 6, 7)
    assert min(sol.h.prec[1:]) == 1


def test_perturbing_non_free_indices_changes_nothing():
    s = qp(3, 40)
    P = S(s, [0, 3, 0, 1], 20)
    sol = isogeny_solve(P, P, 2)
    assert sol.free_indices == (1,)
    again = isogeny_solve(P, P, 2, free_values={n: 1 for n in range(2, 20)})
    assert again.h.coeffs == sol.h.coeffs


def test_sum_law_on_endomorphisms():
    s = qp(3, 24)
    lt = lubin_tate(s, 3, 10)
    F = lt.group_law
    lhs = F.evaluate(lt_endomorphism(lt, 2), lt_endomorphism(lt, 5))
    rhs = lt_endomorphism(lt, 7)
    d = (lhs - rhs).truncate(10)
    assert vmin(d.min_valuation()) >= F.precision


def test_semiconjugacy_examples():
    s = qp(2, 20)
    f = S(s, [0, 2, 1])
    T = TruncatedSeries.identity(s, 16)
    assert semiconjugacy_verify(f, f, T).residual == AtLeast(20)
    assert semiconjugacy_verify(S(s, [0, 2, 1]), S(s, [0, 2, 1]), T).residual == AtLeast(20)
    # f(T+T^2) - (T+T^2)(f) = -2T^2 + ..., so the residual is v(2) = 1
    assert semiconjugacy_verify(f, f, S(s, [0, 1, 1])).residual == 1


@settings(max_examples=15, deadline=None)
@given(u=st.integers(1, 200))
def test_isogeny_round_trip_residual(u):
    s = qp(3, 40)
    if u % 3 == 0:
        return
    P = S(s, [0, 3, 0, 1], 24)
    sol = isogeny_solve(P, P, u)
    assert semiconjugacy_verify(P, P, sol.h).residual_value >= 40 - sol.precision_loss
    assert sol.h.linear() == OKElement.of(s, u)
