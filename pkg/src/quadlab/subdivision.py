"""Index set of the order-m subdivision, cell vertex formulas and the grid view.

A cell is addressed either by its index ``(k1, k2, k3, k4)`` or by its grid
coordinate ``(col, row)`` with ``col = k3 + k4`` and ``row = k1 + k4``.
Column 0 lies along side Q1Q2 and row 0 along side Q2Q3, so the four corner
cells containing Q1, Q2, Q3, Q4 sit at (0, m-1), (0, 0), (m-1, 0) and
(m-1, m-1). Ordering is row-major by (row, col) everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BadM, MixedM, OutOfRange
from .geometry import Point, Quad, combine

GridCoord = tuple[int, int]  # (col, row)


def row_major(c: GridCoord) -> tuple[int, int]:
    """Sort key for the (row, col) ordering."""
    return (c[1], c[0])


@dataclass(frozen=True, order=True)
class CellIndex:
    k1: int
    k2: int
    k3: int
    k4: int
    m: int

    def __post_init__(self):
        ks = self.k
        if self.m < 2:
            raise BadM(f"m must be >= 2, got {self.m}")
        if min(ks) < 0:
            raise OutOfRange(f"negative index in {ks}")
        k1, k2, k3, k4 = ks
        if k4 == 0 and k1 + k2 + k3 == self.m - 1:
            return
        if k2 == 0 and k1 + k3 + k4 == self.m - 1:
            return
        raise OutOfRange(f"{ks} is not a valid index for m={self.m}")

    @property
    def k(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)

    @property
    def cls(self) -> str:
        if self.k2 != 0:
            return "A1"
        if self.k4 != 0:
            return "A2"
        return "A3"

    @property
    def col(self) -> int:
        return self.k3 + self.k4

    @property
    def row(self) -> int:
        return self.k1 + self.k4

    def __str__(self) -> str:
        return "S_{}({},{},{},{})".format(self.m, *self.k)


@dataclass(frozen=True)
class CellGeometry:
    r1: Point
    r2: Point
    r3: Point
    r4: Point

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point]:
        return (self.r1, self.r2, self.r3, self.r4)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return 4

    def __getitem__(self, i):
        return self.vertices[i]

    # Edge names follow the grid: R1 sits at the (left, top) corner.
    def edge(self, side: str) -> tuple[Point, Point]:
        return {
            "left": (self.r1, self.r2),
            "bottom": (self.r2, self.r3),
            "right": (self.r3, self.r4),
            "top": (self.r4, self.r1),
        }[side]


def index_at(m: int, col: int, row: int) -> CellIndex:
    if m < 2:
        raise BadM(f"m must be >= 2, got {m}")
    if not (0 <= col < m and 0 <= row < m):
        raise OutOfRange(f"({col},{row}) outside a {m}x{m} grid")
    s = col + row - (m - 1)
    if s < 0:
        return CellIndex(row, -s, col, 0, m)
    if s == 0:
        return CellIndex(row, 0, col, 0, m)
    return CellIndex(row - s, 0, col - s, s, m)


def grid_of(idx: CellIndex) -> GridCoord:
    return (idx.col, idx.row)


def index_set(m: int) -> list[CellIndex]:
    """All m*m indices, row-major by grid coordinate."""
    if m < 2:
        raise BadM(f"m must be >= 2, got {m}")
    return [index_at(m, c, r) for r in range(m) for c in range(m)]


def cell_vertices(q: Quad, idx: CellIndex) -> CellGeometry:
    m = idx.m
    k1, k2, k3, k4 = idx.k
    Q = q.vertices

    def pt(a, b, c, d):
        p = combine((a, b, c, d), Q)
        return Point(p.x / m, p.y / m)

    r1 = pt(k1 + 1, k2, k3, k4)
    r3 = pt(k1, k2, k3 + 1, k4)
    cls = idx.cls
    if cls == "A1":
        r2 = pt(k1, k2 + 1, k3, k4)
        r4 = pt(k1 + 1, k2 - 1, k3 + 1, k4)
    elif cls == "A2":
        r2 = pt(k1 + 1, k2, k3 + 1, k4 - 1)
        r4 = pt(k1, k2, k3, k4 + 1)
    else:
        r2 = pt(k1, k2 + 1, k3, k4)
        r4 = pt(k1, k2, k3, k4 + 1)
    return CellGeometry(r1, r2, r3, r4)


class Adjacency(Enum):
    SIDE = "Side"
    VERTEX = "Vertex"
    NONE = "None"


def adjacency(a: CellIndex, b: CellIndex) -> Adjacency:
    if a.m != b.m:
        raise MixedM(f"cells from different subdivisions (m={a.m}, m={b.m})")
    dc = abs(a.col - b.col)
    dr = abs(a.row - b.row)
    if dc + dr == 1:
        return Adjacency.SIDE
    if dc == 1 and dr == 1:
        return Adjacency.VERTEX
    return Adjacency.NONE


def corner_cells(m: int) -> dict[str, GridCoord]:
    """Grid coordinates of the cells containing each vertex of Q."""
    return {"Q1": (0, m - 1), "Q2": (0, 0), "Q3": (m - 1, 0), "Q4": (m - 1, m - 1)}


def is_corner(idx: CellIndex) -> bool:
    return (idx.col, idx.row) in corner_cells(idx.m).values()


def is_border(idx: CellIndex) -> bool:
    """Touches the boundary of Q, i.e. the grid column or row is extremal."""
    last = idx.m - 1
    return idx.col in (0, last) or idx.row in (0, last)


def paper_border_literal(idx: CellIndex) -> bool:
    """At most two nonzero indices; also true for interior diagonal cells."""
    return sum(1 for k in idx.k if k != 0) <= 2


def classify(idx: CellIndex) -> dict:
    return {"class": idx.cls, "is_corner": is_corner(idx), "is_border": is_border(idx)}
