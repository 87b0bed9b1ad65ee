"""Level-n white sets by digit substitution, and their exact geometry.

A level-n cell (C, R) in the M = m**n grid is white exactly when each base-m
digit pair of (C, R), most significant first, is white in the pattern. The
digit pairs form the cell's word; the first letter is the outermost level-1
cell.

Cell polygons are available by two independent routes: directly from the
order-M vertex formulas, or by pushing a level-1 cell through the chain of
maps named by the word. The two must agree vertex for vertex.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DepthTooLarge
from .geometry import BaryCoords, Point, Quad, apply_map, polygon_area, represent
from .pattern import Pattern
from .subdivision import CellGeometry, CellIndex, GridCoord, cell_vertices, index_at, index_set, row_major

DEFAULT_DEPTH_BUDGET = 2 ** 24
BUDGET_ENV = "QUADLAB_DEPTH_BUDGET"


def depth_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_DEPTH_BUDGET


@dataclass(frozen=True)
class StageSet:
    pattern: Pattern
    n: int
    white: frozenset = field(repr=False)

    @property
    def m(self) -> int:
        return self.pattern.m

    @property
    def M(self) -> int:
        return self.pattern.m ** self.n

    def cells(self) -> list[GridCoord]:
        M = self.M
        return [(c, r) for r in range(M) for c in range(M)]

    @property
    def black(self) -> frozenset:
        return frozenset(self.cells()) - self.white

    def is_white(self, cell: GridCoord) -> bool:
        return cell in self.white

    def as_pattern(self) -> Pattern:
        return Pattern(self.M, self.white, self.pattern.quad)

    def word_of(self, cell: GridCoord) -> tuple[GridCoord, ...]:
        return coord_to_word(self.m, self.n, cell)


def word_to_coord(m: int, word: Sequence[GridCoord]) -> GridCoord:
    C = R = 0
    for c, r in word:
        C = C * m + c
        R = R * m + r
    return (C, R)


def coord_to_word(m: int, n: int, cell: GridCoord) -> tuple[GridCoord, ...]:
    C, R = cell
    letters = []
    for _ in range(n):
        letters.append((C % m, R % m))
        C //= m
        R //= m
    return tuple(reversed(letters))


def substitute(p: Pattern, n: int, budget: int | None = None) -> StageSet:
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    limit = depth_budget() if budget is None else budget
    if (p.m ** n) ** 2 > limit:
        raise DepthTooLarge(f"{p.m ** n}^2 cells exceed the budget of {limit}")
    white = {c for c in p.white}
    for _ in range(n - 1):
        white = {(C * p.m + c, R * p.m + r) for (C, R) in white for (c, r) in p.white}
    return StageSet(p, n, frozenset(white))


def white_words(p: Pattern, n: int):
    """Every length-n word over the white letters, in row-major letter order."""
    letters = sorted(p.white, key=row_major)
    return product(letters, repeat=n)


# --- geometry ----------------------------------------------------------------

def cell_polygon(q: Quad, M: int, cell: GridCoord) -> CellGeometry:
    return cell_vertices(q, index_at(M, *cell))


def stage_geometry(q: Quad, s: StageSet) -> dict[GridCoord, CellGeometry]:
    """Polygons of the white cells, by the direct order-M formulas."""
    M = s.M
    return {c: cell_polygon(q, M, c) for c in sorted(s.white, key=row_major)}


def composed_geometry(q: Quad, word: Sequence[GridCoord], m: int) -> CellGeometry:
    """Polygon of a level-n cell computed through the chain of cell maps.

    The last letter's level-1 cell is mapped into the previous letter's
    cell, that result into the one before, and so on out to the first.
    """
    cache: dict[GridCoord, tuple] = {}

    def level1(letter):
        if letter not in cache:
            cache[letter] = cell_polygon(q, m, letter).vertices
        return cache[letter]

    verts = level1(word[-1])
    for letter in reversed(word[:-1]):
        target = level1(letter)
        verts = tuple(apply_map(q, target, v) for v in verts)
    return CellGeometry(*verts)


@dataclass
class ClosureResult:
    checked: int
    mismatches: list


def lattice_closure_sweep(q: Quad, p: Pattern, max_n: int) -> ClosureResult:
    """Compare both geometry routes for every white word of length 1..max_n."""
    checked = 0
    bad = []
    for n in range(1, max_n + 1):
        M = p.m ** n
        for word in white_words(p, n):
            direct = cell_polygon(q, M, word_to_coord(p.m, word))
            composed = composed_geometry(q, word, p.m)
            checked += 1
            if direct != composed:
                bad.append(word)
    return ClosureResult(checked, bad)


def stage_area(q: Quad, s: StageSet) -> Fraction:
    """Exact area of the union of white cells (summed in row-major order)."""
    total = Fraction(0)
    for poly in stage_geometry(q, s).values():
        total += polygon_area(poly.vertices)
    return total


# --- composition outside the lattice -----------------------------------------

UNIT_SQUARE = Quad((0, 1), (0, 0), (1, 0), (1, 1))
SAMPLE_OUTER = CellIndex(0, 3, 0, 0, 4)
SAMPLE_INNER = (Point.of(Fraction(2, 4), Fraction(3, 4)), Point.of(Fraction(1, 4), Fraction(1, 4)),
                Point.of(Fraction(3, 4), Fraction(1, 4)), Point.of(Fraction(3, 4), Fraction(3, 4)))
SAMPLE_POINT = Point.of(Fraction(1, 2), Fraction(1, 4))


def naive_coefficients(q: Quad, inner: Sequence[Point], x: Point) -> tuple[Fraction, ...]:
    """Coefficients over Q1..Q4 obtained by substituting each inner vertex's
    representation into x's representation. Not a valid representation in
    general, because both a2 and a4 may come out nonzero."""
    cx = tuple(represent(q, x))
    reps = [tuple(represent(q, t)) for t in inner]
    return tuple(sum((a * rep[j] for a, rep in zip(cx, reps)), Fraction(0)) for j in range(4))


def is_lattice_cell(q: Quad, m: int, verts: Sequence[Point]) -> bool:
    verts = tuple(verts)
    return any(cell_vertices(q, idx).vertices == verts for idx in index_set(m))


def composition_pair(q: Quad, outer: Sequence[Point], inner: Sequence[Point], x: Point):
    """(P_outer(P_inner(x)), P_S(x)) where S is the image of ``inner`` under P_outer."""
    lhs = apply_map(q, outer, apply_map(q, inner, x))
    image = tuple(apply_map(q, outer, t) for t in inner)
    rhs = apply_map(q, image, x)
    return lhs, rhs


@dataclass
class CounterexampleRecord:
    x: Point
    outer: tuple
    inner: tuple
    inner_is_lattice: bool
    naive: tuple
    naive_is_valid: bool
    composed: Point
    via_image: Point
    lattice_inner: tuple
    lattice_composed: Point
    lattice_via_image: Point
    witness_outer: CellIndex | None
    witness_values: tuple | None

    @property
    def lattice_identity_holds(self) -> bool:
        return self.lattice_composed == self.lattice_via_image

    def lines(self) -> list[str]:
        from .geometry import format_rational as fr
        b = lambda v: "true" if v else "false"  # noqa: E731
        out = [
            f"x={self.x}",
            "q_outer=" + " ".join(map(str, self.outer)),
            "q_inner=" + " ".join(map(str, self.inner)),
            "inner_in_lattice=" + b(self.inner_is_lattice),
            "naive_coefficients=" + ",".join(fr(a) for a in self.naive),
            "naive_is_valid_representation=" + b(self.naive_is_valid),
        ]
        if not self.inner_is_lattice:
            out.append("composition undefined: Q'' not in S_m")
        out += [
            f"outer_after_inner={self.composed}",
            f"map_onto_image={self.via_image}",
            f"coincide_for_this_outer={b(self.composed == self.via_image)}",
            "lattice_inner=" + " ".join(map(str, self.lattice_inner)),
            f"lattice_outer_after_inner={self.lattice_composed}",
            f"lattice_map_onto_image={self.lattice_via_image}",
            f"lattice_identity_holds={b(self.lattice_identity_holds)}",
        ]
        if self.witness_outer is not None:
            lhs, rhs = self.witness_values
            out += [f"mismatch_outer={self.witness_outer}", f"mismatch_outer_after_inner={lhs}",
                    f"mismatch_map_onto_image={rhs}"]
        return out


def remark23_counterexample(q: Quad = UNIT_SQUARE, x: Point = SAMPLE_POINT) -> CounterexampleRecord:
    """Composition with a non-lattice inner quadrilateral.

    The naive chained coefficients of x break the a2*a4 == 0 rule. The
    outer cell S_4(0,3,0,0) is a scaled copy of Q, so its map is affine and
    the two composition orders still agree pointwise; the record also
    searches the order-4 cells for an outer cell where they differ.
    """
    outer = cell_vertices(q, SAMPLE_OUTER).vertices
    inner = SAMPLE_INNER
    naive = naive_coefficients(q, inner, x)
    composed, via_image = composition_pair(q, outer, inner, x)

    lattice_inner = cell_vertices(q, SAMPLE_OUTER).vertices
    l_comp, l_img = composition_pair(q, outer, lattice_inner, x)

    witness = None
    values = None
    for idx in index_set(4):
        lhs, rhs = composition_pair(q, cell_vertices(q, idx).vertices, inner, x)
        if lhs != rhs:
            witness, values = idx, (lhs, rhs)
            break
    return CounterexampleRecord(
        x=x, outer=outer, inner=inner, inner_is_lattice=is_lattice_cell(q, 4, inner),
        naive=naive, naive_is_valid=BaryCoords(*naive).is_valid(),
        composed=composed, via_image=via_image,
        lattice_inner=lattice_inner, lattice_composed=l_comp, lattice_via_image=l_img,
        witness_outer=witness, witness_values=values,
    )
