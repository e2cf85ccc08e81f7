"""padyn: finite-precision dynamics of commuting p-adic power series.

The package provides arithmetic in rings of integers of finite extensions of
Q_p, truncated power series with precision tracking, Lubin-Tate formal groups
and isogeny solvers, root towers with Galois certification, and the ``padyn``
command-line driver.
"""

__version__ = "0.1.0"

from padyn.errors import InputError, MathError, PadynError  # noqa: E402
from padyn.kernels import BACKEND  # noqa: E402
from padyn.local_field import AtLeast, LocalFieldSpec, OKElement, qp  # noqa: E402
from padyn.series_ring import TruncatedSeries  # noqa: E402
from padyn.newton import NewtonPolygon, newton_polygon  # noqa: E402
from padyn.formal_groups import (isogeny_solve, lt_endomorphism, lt_group_law,  # noqa: E402
                                 lubin_tate, semiconjugacy_verify)
from padyn.dynamics import (check_commute, commutant_solve, criterion_check,  # noqa: E402
                            fixed_point_valuations, lubin_decompose, normalize_to_q,
                            valuation_sequence)
from padyn.tower import galois_certify, tower_build  # noqa: E402

__all__ = [
    "__version__", "BACKEND", "PadynError", "InputError", "MathError",
    "AtLeast", "LocalFieldSpec", "OKElement", "qp", "TruncatedSeries",
    "NewtonPolygon", "newton_polygon", "isogeny_solve", "lt_endomorphism",
    "lt_group_law", "lubin_tate", "semiconjugacy_verify", "check_commute",
    "commutant_solve", "criterion_check", "fixed_point_valuations",
    "lubin_decompose", "normalize_to_q", "valuation_sequence", "galois_certify",
    "tower_build",
]
