import copy

import pytest

from padyn.catalog import CATALOG, catalog_list, catalog_pair
from padyn.dynamics import check_commute, criterion_check
from padyn.verify import reverify_report


@pytest.fixture(scope="module")
def p3_report():
    P, U = catalog_pair("mult-p3", 32, 32)
    return criterion_check(check_commute(P, U), 3).to_json()


def test_reverification_reproduces_digests(p3_report):
    out = reverify_report(p3_report)
    assert sorted(out) == [1, 2, 3]
    assert all(ok == (True, True) for ok in out.values())


def test_tampered_generator_is_detected(p3_report):
    bad = copy.deepcopy(p3_report)
    gen = bad["condition2"]["levels"][2]["generators"][0]["series"]
    gen["coeffs"][2] = [gen["coeffs"][2][0] + 3]
    digest_ok, congruence_ok = reverify_report(bad)[3]
    assert not (digest_ok and congruence_ok)


def test_tampered_digest_is_detected(p3_report):
    bad = copy.deepcopy(p3_report)
    bad["condition2"]["levels"][1]["product_digest"] = "0" * 64
    assert reverify_report(bad)[2] == (False, True)


def test_ramified_reverification():
    P, U = catalog_pair("lt-ramified-x2m2", 32, 32)
    rep = criterion_check(check_commute(P, U), 2).to_json()
    assert all(ok == (True, True) for ok in reverify_report(rep).values())


def test_catalog_contents():
    names = {e["name"]: e for e in catalog_list()}
    assert names["mult-p2"]["P"] == "(1+T)^2-1"
    assert names["lt-p3-canonical"]["P"] == "3T+T^3"
    assert names["lt-ramified-x2m2"]["field"]["eisenstein"] == [-2, 0, 1]


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_pairs_commute(name):
    P, U = catalog_pair(name, 32, 32)
    pair = check_commute(P, U)
    assert pair.wideg >= 2
