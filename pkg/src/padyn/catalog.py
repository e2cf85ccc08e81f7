"""Built-in example pairs.

Multiplicative pairs use P = (1+T)^p - 1 and U = (1+T)^a - 1. Lubin-Tate
pairs use f = pi*T + T^q with U = [u]_f solved from the commutation relation.
"""

from math import comb

from padyn.dynamics import promote_polynomial
from padyn.formal_groups import lt_endomorphism, lubin_tate
from padyn.local_field import LocalFieldSpec, OKElement
from padyn.series_ring import TruncatedSeries


def multiplicative(spec, a, trunc):
    """(1+T)^a - 1 as an exact polynomial."""
    return TruncatedSeries.from_coeffs(spec, [0] + [comb(a, k) for k in range(1, a + 1)], trunc)


def _mult(p, a):
    return {"kind": "multiplicative", "field": {"p": p, "h": 1, "eisenstein": [-p, 1]},
            "P": f"(1+T)^{p}-1", "U": f"(1+T)^{a}-1", "a": a}


def _lt(p, h, eis, pi, u, f_text):
    return {"kind": "lubin-tate", "field": {"p": p, "h": h, "eisenstein": eis},
            "pi": pi, "u": u, "P": f_text, "U": f"[{u}]_f"}


CATALOG = {
    "mult-p2": _mult(2, 3),
    "mult-p3": _mult(3, 2),
    "mult-p5": _mult(5, 2),
    "lt-p2-canonical": _lt(2, 1, [-2, 1], 2, 3, "2T+T^2"),
    "lt-p3-canonical": _lt(3, 1, [-3, 1], 3, 2, "3T+T^3"),
    "lt-p2-q4": _lt(2, 2, [-2, 1], 2, 3, "2T+T^4"),
    "lt-ramified-x2m2": _lt(2, 1, [-2, 0, 1], [0, 1], [1, 1], "piT+T^2 (pi^2 = 2)"),
}


def catalog_list():
    """Descriptions of the bundled examples (no series are built)."""
    return [{"name": name, **entry} for name, entry in CATALOG.items()]


def catalog_spec(name, precision):
    entry = CATALOG[name]
    fld = entry["field"]
    return LocalFieldSpec(fld["p"], fld["h"], tuple(fld["eisenstein"]), precision)


def catalog_pair(name, precision=32, trunc=32):
    """(P, U) for a catalog entry at the given precision and truncation."""
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    entry = CATALOG[name]
    spec = catalog_spec(name, precision)
    if entry["kind"] == "multiplicative":
        p = spec.p
        return multiplicative(spec, p, trunc), multiplicative(spec, entry["a"], trunc)
    lt = lubin_tate(spec, OKElement.of(spec, entry["pi"]), trunc)
    return lt.f, promote_polynomial(lt.f, lt_endomorphism(lt, OKElement.of(spec, entry["u"])))
