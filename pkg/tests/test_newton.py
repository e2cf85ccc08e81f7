from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padyn.errors import AllCoefficientsBelowPrecision
from padyn.local_field import OKElement, qp
from padyn.newton import (NewtonPolygon, lower_hull, newton_polygon, polygon_from_points,
                          polygon_from_tsv, polygon_to_tsv)
from padyn.series_ring import TruncatedSeries

from oracles import make_rng, random_factored_polynomial


def elements(spec, coeffs):
    return [OKElement.of(spec, c) for c in coeffs]


def test_eisenstein_shift_gives_single_slope():
    s = qp(2, 32)
    P = TruncatedSeries.from_coeffs(s, [0, 2, 1], 8)
    poly = newton_polygon(P, OKElement.of(s, -2))
    assert poly.slopes == [(Fraction(-1, 2), 2)]


def test_polygon_ignores_zero_constant_term():
    s = qp(2, 32)
    poly = newton_polygon(TruncatedSeries.from_coeffs(s, [0, 2, 1], 8))
    assert poly.vertices == ((1, 1), (2, 0))
    assert poly.slopes == [(Fraction(-1), 1)]


def test_two_slopes():
    poly = newton_polygon(elements(qp(2, 32), [2, 3, 1]))
    assert poly.slopes == [(Fraction(-1), 1), (Fraction(0), 1)]
    assert poly.root_valuations() == [(Fraction(1), 1)]


def test_slopes_increase_and_lengths_add_up():
    poly = newton_polygon(elements(qp(3, 40), [3 ** 5, 9, 3, 1, 1]))
    slopes = [s for s, _ in poly.slopes]
    assert slopes == sorted(set(slopes))
    assert sum(n for _, n in poly.slopes) == poly.last_index - poly.first_index


def test_unknown_coefficients_flag_the_polygon():
    s = qp(2, 8)
    # c_1 is only known to be 0 mod 2, below the hull height 3/2 at index 1
    coeffs = [OKElement.of(s, 8), OKElement.of(s, 0, prec=1), OKElement.of(s, 1)]
    assert newton_polygon(coeffs).precision_limited
    coeffs[1] = OKElement.of(s, 0, prec=2)
    assert not newton_polygon(coeffs).precision_limited


def test_all_coefficients_unknown():
    with pytest.raises(AllCoefficientsBelowPrecision):
        polygon_from_points([])


def test_tsv_rows_for_eisenstein_polynomial():
    poly = newton_polygon(elements(qp(2, 32), [2, 2, 1]))
    text = polygon_to_tsv(poly)
    rows = [line.split("\t") for line in text.splitlines() if not line.startswith("#")]
    assert rows == [["0", "1", "1"], ["2", "0", "1"]]
    assert "# slope\t-1\t2\tlength\t2" in text


def test_empty_polygon_has_no_tsv():
    with pytest.raises(ValueError):
        polygon_to_tsv(NewtonPolygon(()))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.fractions(0, 20, max_denominator=7)),
                min_size=1, max_size=12, unique_by=lambda t: t[0]))
def test_tsv_round_trip(points):
    poly = polygon_from_points(points)
    assert polygon_from_tsv(polygon_to_tsv(poly)) == poly


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 20)),
                min_size=1, max_size=12, unique_by=lambda t: t[0]))
def test_hull_lies_below_every_point(points):
    hull = NewtonPolygon(tuple(lower_hull(points)))
    for i, v in points:
        assert hull.value_at(i) <= v


@pytest.mark.parametrize("p", [2, 3, 5])
def test_slopes_match_known_root_valuations(p):
    rng = make_rng(100 + p)
    s = qp(p, 80)
    for _ in range(30):
        coeffs, vals = random_factored_polynomial(rng, p)
        poly = newton_polygon(elements(s, coeffs))
        assert not poly.precision_limited
        assert poly.slope_multiset() == sorted(-v for v in vals)
