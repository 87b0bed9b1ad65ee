"""Exact planar primitives over the rationals.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
rounds. Points are plain named tuples so they hash and compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

from .errors import DuplicatePoint, NonConvex, OutsideQuad, TooFewVertices

Rational = Fraction


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Fraction(x), Fraction(y))

    def __str__(self) -> str:
        return f"({format_rational(self.x)},{format_rational(self.y)})"


def format_rational(r: Fraction) -> str:
    """Serialize as ``p/q``, or ``p`` when the denominator is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def combine(coeffs: Iterable, points: Iterable[Point]) -> Point:
    """Exact linear combination sum(c_i * p_i)."""
    x = Fraction(0)
    y = Fraction(0)
    for c, p in zip(coeffs, points):
        if c:
            x += c * p.x
            y += c * p.y
    return Point(x, y)


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def centre(vertices: Sequence[Point]) -> Point:
    """Vertex average; strictly interior for any convex polygon."""
    n = len(vertices)
    return Point(sum((v.x for v in vertices), Fraction(0)) / n,
                 sum((v.y for v in vertices), Fraction(0)) / n)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle oab (positive if anticlockwise)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def dist2(a: Point, b: Point) -> Fraction:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def polygon_area(vertices: Sequence[Point]) -> Fraction:
    """Shoelace area; positive for anticlockwise order."""
    if len(vertices) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(vertices)}")
    s = Fraction(0)
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s / 2


def squared_diameter(vertices: Sequence[Point]) -> Fraction:
    """Largest squared vertex-to-vertex distance (the diameter of a convex polygon)."""
    return max(dist2(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:])


# --- quadrilaterals ---------------------------------------------------------

def _is_strictly_convex_ccw(pts: Sequence[Point]) -> bool:
    n = len(pts)
    return all(cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) > 0 for i in range(n))


@dataclass(frozen=True)
class Quad:
    """A strictly convex quadrilateral with canonical naming Q1..Q4.

    Q1Q3 is the splitting diagonal (never longer than Q2Q4), vertices run
    anticlockwise, and the two halves are D1 = Q1Q2Q3 and D2 = Q3Q4Q1.
    Construct directly to validate a given naming, or use :func:`make_quad`
    to name four unordered points.
    """

    q1: Point
    q2: Point
    q3: Point
    q4: Point
    area1: Fraction = field(init=False)
    area2: Fraction = field(init=False)

    def __post_init__(self):
        pts = [Point.of(*p) for p in (self.q1, self.q2, self.q3, self.q4)]
        for name, p in zip(("q1", "q2", "q3", "q4"), pts):
            object.__setattr__(self, name, p)
        if len(set(pts)) != 4:
            raise DuplicatePoint("quadrilateral has repeated vertices")
        if not _is_strictly_convex_ccw(pts):
            raise NonConvex("vertices are not strictly convex in anticlockwise order")
        if dist2(pts[0], pts[2]) > dist2(pts[1], pts[3]):
            raise NonConvex("Q1Q3 must be the shorter (or equal) diagonal")
        object.__setattr__(self, "area1", cross(pts[0], pts[1], pts[2]) / 2)
        object.__setattr__(self, "area2", cross(pts[2], pts[3], pts[0]) / 2)

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point]:
        return (self.q1, self.q2, self.q3, self.q4)

    @property
    def area(self) -> Fraction:
        return self.area1 + self.area2

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.vertices)


def make_quad(points: Sequence) -> Quad:
    """Name four points of a strictly convex quadrilateral canonically.

    The splitting diagonal is the strictly shorter one. With equal
    diagonals, the diagonal owning the lexicographically smallest endpoint
    wins. In both cases Q1 is the lexicographically smaller endpoint of the
    chosen diagonal and the rest follow anticlockwise.
    """
    pts = [Point.of(*p) for p in points]
    if len(pts) != 4:
        raise NonConvex(f"need exactly 4 points, got {len(pts)}")
    if len(set(pts)) != 4:
        raise DuplicatePoint("points must be distinct")
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if cross(pts[i], pts[j], pts[k]) == 0:
                    raise NonConvex(f"collinear triple {pts[i]}, {pts[j]}, {pts[k]}")
    ring = None
    for rest in permutations(pts[1:]):
        cand = [pts[0], *rest]
        if _is_strictly_convex_ccw(cand):
            ring = cand
            break
    if ring is None:
        raise NonConvex("one point lies inside the triangle of the others")

    diagonals = [(ring[0], ring[2]), (ring[1], ring[3])]
    d0, d1 = (dist2(*d) for d in diagonals)
    if d0 != d1:
        a, b = diagonals[0] if d0 < d1 else diagonals[1]
    else:
        a, b = min(diagonals, key=lambda d: min(d))
    start = ring.index(min(a, b))
    return Quad(*(ring[(start + i) % 4] for i in range(4)))


# --- the unique representation and the induced map ---------------------------

@dataclass(frozen=True)
class BaryCoords:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction

    def __iter__(self):
        return iter((self.a1, self.a2, self.a3, self.a4))

    def is_valid(self) -> bool:
        return (sum(self, Fraction(0)) == 1 and all(a >= 0 for a in self)
                and self.a2 * self.a4 == 0)


def _triangle_coords(p: Point, a: Point, b: Point, c: Point):
    total = cross(a, b, c)
    return (cross(p, b, c) / total, cross(a, p, c) / total, cross(a, b, p) / total)


def represent(q: Quad, p: Point) -> BaryCoords:
    """The unique coefficients of ``p`` over Q1..Q4 with a2 == 0 or a4 == 0."""
    p = Point.of(*p)
    side = cross(q.q1, q.q3, p)
    if side == 0 or (side > 0) == (cross(q.q1, q.q3, q.q2) > 0):
        l1, l2, l3 = _triangle_coords(p, q.q1, q.q2, q.q3)
        coords = BaryCoords(l1, l2, l3, Fraction(0))
    else:
        l3, l4, l1 = _triangle_coords(p, q.q3, q.q4, q.q1)
        coords = BaryCoords(l1, Fraction(0), l3, l4)
    if any(a < 0 for a in coords):
        raise OutsideQuad(f"{p} is not in {q}")
    return coords


def evaluate(target: Sequence[Point], c) -> Point:
    """sum(a_i * R_i) over the four target vertices."""
    return combine(tuple(c), target)


def apply_map(source: Quad, target: Sequence[Point], p: Point) -> Point:
    """Send ``p`` of ``source`` to ``target`` by reusing its coefficients."""
    return evaluate(target, represent(source, p))


# --- predicates --------------------------------------------------------------

def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (cross(a, b, p) == 0
            and min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def locate_point(p: Point, poly: Sequence[Point]) -> str:
    """Classify ``p`` against a simple polygon: 'inside', 'boundary' or 'outside'."""
    n = len(poly)
    inside = False
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if _on_segment(p, a, b):
            return "boundary"
        if (a.y > p.y) != (b.y > p.y):
            # x-coordinate of the edge at height p.y, compared without division
            t = (p.x - a.x) * (b.y - a.y) - (b.x - a.x) * (p.y - a.y)
            if (t < 0) == (b.y > a.y):
                inside = not inside
    return "inside" if inside else "outside"


def _segment_params(a: Point, b: Point, c: Point, d: Point) -> list[Fraction]:
    """Parameters t in [0,1] where a + t(b-a) meets the closed segment cd."""
    r = (b.x - a.x, b.y - a.y)
    s = (d.x - c.x, d.y - c.y)
    w = (c.x - a.x, c.y - a.y)
    denom = r[0] * s[1] - r[1] * s[0]
    if denom != 0:
        t = (w[0] * s[1] - w[1] * s[0]) / denom
        u = (w[0] * r[1] - w[1] * r[0]) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [t]
        return []
    if w[0] * r[1] - w[1] * r[0] != 0:
        return []
    rr = r[0] * r[0] + r[1] * r[1]
    out = []
    for e in (c, d):
        t = ((e.x - a.x) * r[0] + (e.y - a.y) * r[1]) / rr
        if 0 <= t <= 1:
            out.append(t)
    return out


def segment_meets_polygon(seg: tuple[Point, Point], poly: Sequence[Point]) -> bool:
    """True iff the closed segment shares at least one point with the closed polygon."""
    a, b = seg
    n = len(poly)
    if any(_segment_params(a, b, poly[i], poly[(i + 1) % n]) for i in range(n)):
        return True
    # no boundary contact: either fully inside or fully outside
    return locate_point(a, poly) == "inside"


def segment_intersects_polygon_interior(seg: tuple[Point, Point], poly: Sequence[Point]) -> bool:
    """True iff some point of the open segment lies strictly inside ``poly``.

    The segment is cut at every boundary contact; between two consecutive
    cuts it is entirely inside, outside or on the boundary, so testing each
    piece's midpoint decides the question exactly.
    """
    a, b = seg
    if a == b:
        return False
    cuts = {Fraction(0), Fraction(1)}
    n = len(poly)
    for i in range(n):
        cuts.update(_segment_params(a, b, poly[i], poly[(i + 1) % n]))
    ts = sorted(cuts)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        p = Point(a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y))
        if locate_point(p, poly) == "inside":
            return True
    return False
