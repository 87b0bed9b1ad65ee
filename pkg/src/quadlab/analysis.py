"""Graphs of level-n white and black cells and the checks built on them.

White cells are joined when they share a side. Black cells are joined when
they share a side or a single vertex; that graph drives escape paths.
Components of the complement use side contact only, because two black
cells meeting at a vertex that belongs to a white cell do not connect the
open complement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NoEscape, NotBlack, NotTree, NotWhite
from .geometry import (Point, Quad, centre, locate_point, midpoint, segment_intersects_polygon_interior,
                       segment_meets_polygon)
from .geometry import squared_diameter
from .graphs import DIAGONAL_STEPS, SIDE_STEPS, components, side_edges, tree_by_counting, tree_by_dfs
from .graphs import vertex_edges
from .iteration import StageSet, cell_polygon, stage_geometry, substitute
from .pattern import Pattern, validate
from .subdivision import CellGeometry, GridCoord, index_at, row_major


@dataclass(frozen=True)
class CellGraph:
    kind: str  # "White" or "Black"
    M: int
    vertices: tuple
    edges: tuple  # (a, b, "Side" | "Vertex")

    def plain_edges(self) -> list:
        return [(a, b) for a, b, _ in self.edges]


def build_graph(s: StageSet, kind: str) -> CellGraph:
    if kind not in ("White", "Black"):
        raise ValueError(f"kind must be 'White' or 'Black', got {kind!r}")
    cells = s.white if kind == "White" else s.black
    edges = [(a, b, "Side") for a, b in side_edges(cells)]
    if kind == "Black":
        edges += [(a, b, "Vertex") for a, b in vertex_edges(cells)]
        edges.sort(key=lambda e: (row_major(e[0]), row_major(e[1])))
    return CellGraph(kind, s.M, tuple(sorted(cells, key=row_major)), tuple(edges))


def tree_checks(g: CellGraph) -> tuple[bool, bool]:
    """(DFS verdict, union-find + edge-count verdict)."""
    edges = g.plain_edges()
    return tree_by_dfs(g.vertices, edges), tree_by_counting(g.vertices, edges)


def is_tree(g: CellGraph) -> bool:
    by_dfs, by_count = tree_checks(g)
    if by_dfs != by_count:
        raise AssertionError(f"tree tests disagree on {g.kind} graph at M={g.M}")
    return by_dfs


def _bfs_path(start, neighbours, is_goal):
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if is_goal(node):
            path = []
            while node is not None:
                path.append(node)
                node = parent[node]
            return path[::-1]
        for nb in neighbours(node):
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    return None


def tree_path(s: StageSet, a: GridCoord, b: GridCoord) -> list[GridCoord]:
    """The unique simple path between two white cells of a tree stage."""
    for c in (a, b):
        if c not in s.white:
            raise NotWhite(f"{c} is not white at level {s.n}")
    if not is_tree(build_graph(s, "White")):
        raise NotTree(f"white graph at level {s.n} is not a tree")
    white = s.white

    def nbs(c):
        col, row = c
        return [(col + dc, row + dr) for dc, dr in SIDE_STEPS if (col + dc, row + dr) in white]

    return _bfs_path(a, nbs, lambda c: c == b)


def black_neighbours(s: StageSet, c: GridCoord) -> list[GridCoord]:
    """Black neighbours in breadth-first order: sides first, then diagonals."""
    col, row = c
    M = s.M
    white = s.white
    out = []
    for dc, dr in SIDE_STEPS + DIAGONAL_STEPS:
        nb = (col + dc, row + dr)
        if 0 <= nb[0] < M and 0 <= nb[1] < M and nb not in white:
            out.append(nb)
    return out


def _is_border(M: int, c: GridCoord) -> bool:
    return c[0] in (0, M - 1) or c[1] in (0, M - 1)


def escape_path(s: StageSet, start: GridCoord) -> list[GridCoord]:
    """Shortest path of black cells from ``start`` to a border cell."""
    M = s.M
    if not (0 <= start[0] < M and 0 <= start[1] < M) or start in s.white:
        raise NotBlack(f"{start} is not a black cell at level {s.n}")
    path = _bfs_path(start, lambda c: black_neighbours(s, c), lambda c: _is_border(M, c))
    if path is None:
        raise NoEscape(f"no black path from {start} to the border at level {s.n}")
    return path


# --- escape arcs -------------------------------------------------------------

@dataclass
class EscapeArc:
    level: int
    cells: list  # level-n black cells, consecutive ones adjacent
    polyline: list  # Points, ends on the boundary of Q
    detours: list = field(default_factory=list)  # (vertex, level-(n+1) black cell)

    def segments(self):
        return list(zip(self.polyline, self.polyline[1:]))


def _shared(a: CellGeometry, b: CellGeometry) -> list[Point]:
    bs = set(b.vertices)
    return [v for v in a.vertices if v in bs]


def _subcell_at(m: int, cell: GridCoord, vertex: tuple[int, int]) -> GridCoord:
    """The child of ``cell`` (one level down) that touches lattice vertex ``vertex``."""
    X, Y = vertex
    col, row = cell
    return (m * col + (m - 1 if col == X - 1 else 0), m * row + (m - 1 if row == Y - 1 else 0))


def _boundary_exit(M: int, cell: GridCoord, poly: CellGeometry) -> Point:
    col, row = cell
    if row == 0:
        side = "bottom"
    elif col == 0:
        side = "left"
    elif col == M - 1:
        side = "right"
    else:
        side = "top"
    return midpoint(*poly.edge(side))


def escape_arc(q: Quad, p: Pattern, n: int, start: GridCoord,
               stage: StageSet | None = None, next_stage: StageSet | None = None) -> EscapeArc:
    """A polyline from the centre of a black cell to the boundary of Q that
    stays out of every level-(n+1) white cell.

    Side steps pass through the midpoint of the shared edge. At a vertex
    step, if one of the two cells flanking the vertex is black the arc goes
    around through it; otherwise it goes through the vertex itself unless
    the vertex lies in a level-(n+1) white cell, in which case it detours
    through a black level-(n+1) child of a flanking white cell.
    """
    s = stage if stage is not None else substitute(p, n)
    s1 = next_stage if next_stage is not None else substitute(p, n + 1)
    M, m = s.M, p.m
    path = escape_path(s, start)

    polys: dict = {}

    def poly(cell, level_M=M):
        key = (level_M, cell)
        if key not in polys:
            polys[key] = cell_polygon(q, level_M, cell)
        return polys[key]

    cells = [path[0]]
    line = [centre(poly(path[0]).vertices)]
    detours = []
    for a, b in zip(path, path[1:]):
        pa, pb = poly(a), poly(b)
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1:
            line += [midpoint(*_shared(pa, pb)), centre(pb.vertices)]
            cells.append(b)
            continue
        flank = sorted([(b[0], a[1]), (a[0], b[1])], key=row_major)
        black_flank = [f for f in flank if f not in s.white]
        if black_flank:
            f = black_flank[0]
            pf = poly(f)
            line += [midpoint(*_shared(pa, pf)), centre(pf.vertices),
                     midpoint(*_shared(pf, pb)), centre(pb.vertices)]
            cells += [f, b]
            continue
        (c,) = _shared(pa, pb)
        X, Y = max(a[0], b[0]), max(a[1], b[1])
        children = {f: _subcell_at(m, f, (X, Y)) for f in flank}
        if not any(ch in s1.white for ch in children.values()):
            line += [c, centre(pb.vertices)]
            cells.append(b)
            continue
        black_children = sorted((ch for ch in children.values() if ch not in s1.white), key=row_major)
        if not black_children:
            raise NoEscape(f"both children at vertex {c} are white; corner property violated")
        bp = black_children[0]
        M1 = M * m
        pbp = poly(bp, M1)
        ca = poly(_subcell_at(m, a, (X, Y)), M1)
        cb = poly(_subcell_at(m, b, (X, Y)), M1)
        line += [midpoint(*_shared(ca, pbp)), centre(pbp.vertices),
                 midpoint(*_shared(pbp, cb)), centre(pb.vertices)]
        detours.append((c, bp))
        cells.append(b)
    line.append(_boundary_exit(M, path[-1], poly(path[-1])))
    return EscapeArc(n, cells, line, detours)


class WhitePolygons:
    """White cell polygons of one stage with a float bounding-box prefilter.

    The prefilter is widened by a margin and only discards candidates; the
    decision itself is the exact segment test.
    """

    def __init__(self, q: Quad, s: StageSet):
        geo = stage_geometry(q, s)
        self.cells = list(geo)
        self.polys = [geo[c].vertices for c in self.cells]
        xs = np.array([[float(v.x) for v in pg] for pg in self.polys]).reshape(-1, 4)
        ys = np.array([[float(v.y) for v in pg] for pg in self.polys]).reshape(-1, 4)
        eps = 1e-9
        self.lo_x, self.hi_x = xs.min(axis=1) - eps, xs.max(axis=1) + eps
        self.lo_y, self.hi_y = ys.min(axis=1) - eps, ys.max(axis=1) + eps

    def hits(self, seg: tuple[Point, Point], closed: bool = False) -> list[GridCoord]:
        """White cells whose interior the segment enters; with ``closed``,
        cells it touches at all, boundary included."""
        a, b = seg
        x0, x1 = sorted((float(a.x), float(b.x)))
        y0, y1 = sorted((float(a.y), float(b.y)))
        mask = (self.lo_x <= x1) & (self.hi_x >= x0) & (self.lo_y <= y1) & (self.hi_y >= y0)
        test = segment_meets_polygon if closed else segment_intersects_polygon_interior
        return [self.cells[i] for i in np.flatnonzero(mask) if test(seg, self.polys[i])]


def arc_violations(arc: EscapeArc, whites: WhitePolygons, closed: bool = False) -> list:
    """(segment index, white cell) for every segment entering a white cell.

    With ``closed`` a touch of a white cell's boundary also counts, which is
    the full requirement that the arc miss the closed set L_(n+1).
    """
    out = []
    for i, seg in enumerate(arc.segments()):
        out += [(i, c) for c in whites.hits(seg, closed)]
    return out


def arc_is_well_formed(q: Quad, arc: EscapeArc, s: StageSet) -> bool:
    """Cells black and chained by black-graph adjacency; polyline ends on the boundary of Q."""
    if any(c in s.white for c in arc.cells):
        return False
    for a, b in zip(arc.cells, arc.cells[1:]):
        if max(abs(a[0] - b[0]), abs(a[1] - b[1])) != 1:
            return False
    return locate_point(arc.polyline[-1], q.vertices) == "boundary"


# --- complement components ---------------------------------------------------

@dataclass
class Components:
    count: int
    labeling: dict  # cell -> representative (row-major minimum)
    groups: dict  # representative -> sorted cells


def complement_components(s: StageSet) -> Components:
    black = s.black
    groups = components(black, side_edges(black))
    labeling = {c: rep for rep, cells in groups.items() for c in cells}
    return Components(len(groups), labeling, groups)


def corner_cells_per_component(s: StageSet, comps: Components) -> dict:
    """Representative -> list of grid-corner cells in that component."""
    M = s.M
    corners = [(0, 0), (M - 1, 0), (0, M - 1), (M - 1, M - 1)]
    out = {rep: [] for rep in comps.groups}
    for c in corners:
        if c in comps.labeling:
            out[comps.labeling[c]].append(c)
    return out


def components_refine(coarse: StageSet, fine: StageSet) -> bool:
    """Every coarse complement component lands inside one fine component."""
    m = coarse.m
    if fine.M != coarse.M * m:
        raise ValueError("fine stage must be exactly one level below coarse")
    fine_labels = complement_components(fine).labeling
    for cells in complement_components(coarse).groups.values():
        reps = {fine_labels[(m * c + i, m * r + j)] for c, r in cells for i in range(m) for j in range(m)}
        if len(reps) != 1:
            return False
    return True


def path_separates(s: StageSet, path: Sequence[GridCoord]) -> bool:
    """No side-connected route avoiding ``path`` joins the bottom row to the top row."""
    M = s.M
    blocked = set(path)
    free = {(c, r) for r in range(M) for c in range(M)} - blocked
    for cells in components(free, side_edges(free)).values():
        rows = {r for _, r in cells}
        if 0 in rows and M - 1 in rows:
            return False
    return True


# --- dendrite evidence -------------------------------------------------------

@dataclass
class LevelEvidence:
    level: int
    white_cells: int
    connected: bool
    acyclic: bool
    tree_by_dfs: bool
    tree_by_counting: bool
    max_sq_diameter: Fraction
    widest_cell: GridCoord
    widest_class: str


@dataclass
class DendriteReport:
    levels: list

    @property
    def diameters_decreasing(self) -> bool:
        d = [lv.max_sq_diameter for lv in self.levels]
        return all(a > b for a, b in zip(d, d[1:]))

    @property
    def ok(self) -> bool:
        return self.diameters_decreasing and all(lv.connected and lv.acyclic for lv in self.levels)


def dendrite_report(q: Quad, p: Pattern, n: int, exit_rule: str = "strict") -> DendriteReport:
    from .errors import NotValidated
    report = validate(p, exit_rule)
    if not report.valid:
        raise NotValidated("; ".join(report.failures))
    levels = []
    for k in range(1, n + 1):
        s = substitute(p, k)
        g = build_graph(s, "White")
        edges = g.plain_edges()
        by_dfs, by_count = tree_checks(g)
        connected = len(components(g.vertices, edges)) == 1
        acyclic = len(edges) == len(g.vertices) - len(components(g.vertices, edges))
        geo = stage_geometry(q, s)
        widest = max(geo, key=lambda c: (squared_diameter(geo[c].vertices), [-x for x in row_major(c)]))
        levels.append(LevelEvidence(
            k, len(s.white), connected, acyclic, by_dfs, by_count,
            squared_diameter(geo[widest].vertices), widest, index_at(s.M, *widest).cls,
        ))
    return DendriteReport(levels)
