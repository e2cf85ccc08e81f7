from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from padyn.errors import ConstantTermError, NotInvertible, SpecMismatch
from padyn.local_field import LocalFieldSpec, qp
from padyn.series_ring import (ZERO_REDUCTION, ResidueSeries, TruncatedSeries, compose,
                               compositional_inverse, iterate, reduce_series,
                               series_add_mul, weierstrass_degree)


def S(spec, coeffs, D=16, polynomial=True):
    return TruncatedSeries.from_coeffs(spec, coeffs, D, polynomial)


def ints(f):
    return [c for c in f.coeffs]


def naive_mul(a, b, n, m):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[:n - i]):
            out[i + j] = (out[i + j] + x * y) % m
    return out


def naive_compose(f, g, n, m):
    acc = [0] * n
    power = [1] + [0] * (n - 1)
    for c in f[:n]:
        acc = [(x + c * y) % m for x, y in zip(acc, power)]
        power = naive_mul(power, g, n, m)
    return acc


def mult_group(spec, a, D=16):
    return S(spec, [0] + [comb(a, k) for k in range(1, a + 1)], D)


# ---------------------------------------------------------------- examples

def test_t_times_t():
    s = qp(2, 16)
    T = TruncatedSeries.identity(s, 8)
    assert series_add_mul(T, T, "mul") == S(s, [0, 0, 1], 8)


def test_schoolbook_product():
    s = qp(3, 16)
    f = S(s, [0, 1, 1], 8)
    g = S(s, [0, 1, -1], 8)
    assert f * g == S(s, [0, 0, 1, 0, -1], 8)


def test_constant_term_rejected():
    with pytest.raises(ConstantTermError):
        S(qp(2, 8), [1, 1])


def test_identity_is_neutral_for_composition():
    s = qp(2, 16)
    f = S(s, [0, 2, 1])
    assert compose(f, TruncatedSeries.identity(s, 16)) == f


def test_square_of_multiplicative_p2():
    s = qp(2, 32)
    P = S(s, [0, 2, 1])
    assert compose(P, P) == S(s, [0, 4, 6, 4, 1])
    assert iterate(P, 2) == S(s, [0, 4, 6, 4, 1])
    assert iterate(P, 1) == P


def test_multiplicative_pair_commutes():
    s = qp(2, 32)
    P, U = mult_group(s, 2), mult_group(s, 3)
    assert P(U) == U(P) == mult_group(s, 6)


def test_iterate_linear():
    s = qp(2, 16)
    assert iterate(S(s, [0, 2]), 3) == S(s, [0, 8])


def test_compositional_inverse_catalan():
    s = qp(5, 20)
    g = compositional_inverse(S(s, [0, 1, 1], 5, polynomial=False))
    assert g == S(s, [0, 1, -1, 2, -5], 5, polynomial=False)
    assert compositional_inverse(TruncatedSeries.identity(s, 5)) == TruncatedSeries.identity(s, 5)


def test_compositional_inverse_non_unit():
    with pytest.raises(NotInvertible):
        compositional_inverse(S(qp(3, 10), [0, 3, 0, 1]))


def test_weierstrass_degrees():
    assert weierstrass_degree(S(qp(3, 10), [0, 3, 0, 1])) == 3
    assert weierstrass_degree(S(qp(5, 10), [0, 1, 5])) == 1
    assert weierstrass_degree(S(qp(2, 10), [0, 2], 8)) == ZERO_REDUCTION


def test_reductions():
    s2, s3 = qp(2, 10), qp(3, 10)
    assert reduce_series(S(s2, [0, 2, 1])) == ResidueSeries.from_terms(s2, {2: 1}, 16)
    assert reduce_series(S(s3, [0, 3, 3, 1])) == ResidueSeries.from_terms(s3, {3: 1}, 16)
    assert reduce_series(S(s2, [0, 3, 3, 1])) == ResidueSeries.from_terms(
        s2, {1: 1, 2: 1, 3: 1}, 16)


def test_mismatched_fields():
    with pytest.raises(SpecMismatch):
        S(qp(2, 8), [0, 1]) + S(qp(3, 8), [0, 1])


def test_json_round_trip():
    s = LocalFieldSpec(2, 2, (-2, 1), 12)
    f = S(s, [0, [1, 1], 0, [0, 3]], 10)
    g = TruncatedSeries.from_json(f.to_json())
    assert g == f and g.exact_degree == f.exact_degree


def test_precision_propagates_through_composition():
    s = qp(2, 20)
    f = TruncatedSeries(s, (0, 1, 1, 0), (20, 20, 5, 20))
    g = S(s, [0, 2, 1], 4)
    h = f(g)
    assert min(h.prec[2:]) == 5


# ---------------------------------------------------------------- properties

coeff_lists = st.lists(st.integers(-50, 50), min_size=2, max_size=10).map(lambda c: [0] + c)


@settings(max_examples=60, deadline=None)
@given(f=coeff_lists, g=coeff_lists, p=st.sampled_from([2, 3, 5]))
def test_products_and_compositions_match_naive_oracle(f, g, p):
    D, M = 12, 20
    s = qp(p, M)
    m = p ** M
    F, G = S(s, f, D), S(s, g, D)
    fm = [c % m for c in f] + [0] * D
    gm = [c % m for c in g] + [0] * D
    assert ints(F * G) == naive_mul(fm, gm, D, m)
    assert ints(F(G)) == naive_compose(fm, gm, D, m)


@settings(max_examples=40, deadline=None)
@given(f=coeff_lists, g=coeff_lists, h=coeff_lists)
def test_composition_is_associative(f, g, h):
    s = qp(3, 15)
    F, G, H = S(s, f, 10), S(s, g, 10), S(s, h, 10)
    assert F(G(H)) == F(G)(H)


@settings(max_examples=40, deadline=None)
@given(f=coeff_lists, unit=st.integers(1, 1000))
def test_inverse_round_trip(f, unit):
    s = qp(2, 24)
    f = list(f)
    f[1] = 2 * unit + 1
    F = S(s, f, 12, polynomial=False)
    G = compositional_inverse(F)
    T = TruncatedSeries.identity(s, 12)
    assert F(G) == T and G(F) == T
