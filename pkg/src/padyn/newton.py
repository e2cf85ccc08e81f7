"""Newton polygons with exact rational slopes."""

from dataclasses import dataclass
from fractions import Fraction

from padyn.errors import AllCoefficientsBelowPrecision
from padyn.local_field import OKElement
from padyn.series_ring import TruncatedSeries


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (index, valuation) points.

    Valuations are in v_K units. A segment of slope -w and horizontal length
    l stands for l roots of valuation w.
    """

    vertices: tuple
    precision_limited: bool = False
    degenerate: bool = False

    @property
    def slopes(self):
        out = []
        for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(v1 - v0) / (i1 - i0), i1 - i0))
        return out

    @property
    def first_index(self):
        return self.vertices[0][0]

    @property
    def last_index(self):
        return self.vertices[-1][0]

    def root_valuations(self):
        """(valuation, multiplicity) for each segment of negative slope."""
        return [(-s, n) for s, n in self.slopes if s < 0]

    def slope_multiset(self):
        out = []
        for s, n in self.slopes:
            out.extend([s] * n)
        return sorted(out)

    def value_at(self, i):
        """Height of the hull above index i (inside the vertex range)."""
        vs = self.vertices
        for (i0, v0), (i1, v1) in zip(vs, vs[1:]):
            if i0 <= i <= i1:
                return v0 + Fraction(v1 - v0) * (i - i0) / (i1 - i0)
        if len(vs) == 1 and i == vs[0][0]:
            return vs[0][1]
        raise ValueError(f"index {i} outside the polygon")

    def is_single_slope(self):
        return len(self.vertices) == 2


def lower_hull(points):
    """Lower convex hull of (x, y) points with distinct x, left to right."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def polygon_from_points(points, omitted=()):
    """Build a polygon from finite points and (index, lower bound) omissions.

    An omission is flagged when its lower bound falls below the hull or below
    the extension of the hull's outer segments, since it could then change
    the polygon.
    """
    pts = [(int(i), Fraction(v)) for i, v in points]
    if not pts:
        raise AllCoefficientsBelowPrecision("no coefficient has finite valuation")
    hull = lower_hull(pts)
    limited = False
    if omitted:
        first, last = hull[0], hull[-1]
        if len(hull) >= 2:
            s_first = Fraction(hull[1][1] - first[1]) / (hull[1][0] - first[0])
            s_last = Fraction(last[1] - hull[-2][1]) / (last[0] - hull[-2][0])
        for i, bound in omitted:
            if first[0] <= i <= last[0]:
                ref = NewtonPolygon(tuple(hull)).value_at(i)
            elif len(hull) < 2:
                ref = first[1]
            elif i < first[0]:
                ref = first[1] - s_first * (first[0] - i)
            else:
                ref = last[1] + s_last * (i - last[0])
            if bound < ref:
                limited = True
                break
    return NewtonPolygon(tuple(hull), precision_limited=limited)


def _coefficient_data(f):
    """(spec, raw coefficients, precisions, known-zero tail start)."""
    if isinstance(f, TruncatedSeries):
        tail = f.exact_degree + 1 if f.exact_degree is not None else None
        return f.spec, list(f.coeffs), list(f.prec), tail
    coeffs = list(f)
    if not coeffs:
        raise AllCoefficientsBelowPrecision("empty polynomial")
    spec = coeffs[0].spec
    return spec, [c.raw for c in coeffs], [c.precision for c in coeffs], len(coeffs)


def newton_polygon(f, shift=None):
    """Newton polygon of f - shift.

    ``f`` is a TruncatedSeries or a sequence of OKElements (c_0, c_1, ...);
    ``shift`` is an OKElement subtracted from the constant term.
    """
    spec, raw, precs, tail = _coefficient_data(f)
    a = spec.arith
    if shift is not None:
        if not isinstance(shift, OKElement):
            shift = OKElement.of(spec, shift)
        raw[0] = a.sub(raw[0], shift.raw)
        precs[0] = min(precs[0], shift.precision)
    points, omitted = [], []
    for i, (c, pr) in enumerate(zip(raw, precs)):
        v = spec.val(c)
        if v < pr:
            points.append((i, v))
        elif tail is None or i < tail:
            omitted.append((i, pr))
    return polygon_from_points(points, omitted)



def polygon_to_tsv(polygon):
    """Vertex rows ``index<TAB>num<TAB>den``; slopes follow as comment lines."""
    if not polygon.vertices:
        raise ValueError("empty polygon")
    lines = ["# index\tval_num\tval_den"]
    for i, v in polygon.vertices:
        v = Fraction(v)
        lines.append(f"{i}\t{v.numerator}\t{v.denominator}")
    for s, n in polygon.slopes:
        lines.append(f"# slope\t{s.numerator}\t{s.denominator}\tlength\t{n}")
    if polygon.precision_limited:
        lines.append("# precision-limited")
    return "\n".join(lines) + "\n"


def polygon_from_tsv(text):
    verts = []
    limited = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            limited = limited or line.strip() == "# precision-limited"
            continue
        i, num, den = line.split("\t")
        verts.append((int(i), Fraction(int(num), int(den))))
    return NewtonPolygon(tuple(verts), precision_limited=limited)
