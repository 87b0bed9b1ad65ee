"""Labyrinth patterns: file format, validation and the derived checks.

A pattern is an m x m white/black assignment of grid cells. Validation
checks the tree, exit and corner properties. Two readings of the exit
property are offered:

``strict`` (default)
    exactly one white cell in each boundary column/row, the left and right
    ones in the same row, the top and bottom ones in the same column.
``literal``
    exactly one row whose two end cells are both white and exactly one
    column whose two end cells are both white; other white border cells
    are tolerated.

Strict implies literal.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import BadChar, BadHeader, MTooSmall, NotValidated, RaggedRow
from .geometry import Point, Quad, format_rational, parse_rational
from .graphs import find_cycle, side_edges, side_neighbours, tree_by_counting, tree_by_dfs
from .subdivision import GridCoord, index_at, row_major

HEADER_RE = re.compile(r"^labyrinth v1 m=(\d+)$")
QUAD_RE = re.compile(r"^quad=\((.*)\)$")

E4_TEXT = """labyrinth v1 m=4
BWBB
WWWW
BWBB
BWBB
"""


@dataclass(frozen=True)
class Pattern:
    m: int
    white: frozenset
    quad: Optional[Quad] = None
    source_text: Optional[str] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "white", frozenset(self.white))
        for c, r in self.white:
            if not (0 <= c < self.m and 0 <= r < self.m):
                raise ValueError(f"white cell {(c, r)} outside the {self.m}x{self.m} grid")

    @property
    def black(self) -> frozenset:
        return frozenset((c, r) for r in range(self.m) for c in range(self.m)) - self.white

    def is_white(self, cell: GridCoord) -> bool:
        return cell in self.white

    def with_white(self, *cells: GridCoord) -> "Pattern":
        return Pattern(self.m, self.white | set(cells), self.quad)

    def without_white(self, *cells: GridCoord) -> "Pattern":
        return Pattern(self.m, self.white - set(cells), self.quad)


def parse_pattern(text: str) -> Pattern:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise BadHeader("empty pattern file")
    match = HEADER_RE.match(lines[0])
    if not match:
        raise BadHeader(f"expected 'labyrinth v1 m=<int>', got {lines[0]!r}")
    m = int(match.group(1))
    if m < 2:
        raise MTooSmall(f"m must be >= 2, got {m}")
    body = lines[1:]
    quad = None
    if body and body[0].startswith("quad="):
        quad = _parse_quad_line(body[0])
        body = body[1:]
    if len(body) != m:
        raise RaggedRow(f"expected {m} grid rows, got {len(body)}")
    white = set()
    for i, line in enumerate(body):
        if len(line) != m:
            raise RaggedRow(f"grid line {i + 1} has {len(line)} cells, expected {m}")
        row = m - 1 - i
        for col, ch in enumerate(line):
            if ch == "W":
                white.add((col, row))
            elif ch != "B":
                raise BadChar(f"unexpected {ch!r} in grid line {i + 1}")
    return Pattern(m, frozenset(white), quad, source_text=text)


def _parse_quad_line(line: str) -> Quad:
    match = QUAD_RE.match(line)
    if not match:
        raise BadHeader(f"malformed quad line {line!r}")
    try:
        pts = []
        for tok in match.group(1).split():
            x, y = tok.split(",")
            pts.append(Point(parse_rational(x), parse_rational(y)))
    except (ValueError, ZeroDivisionError) as exc:
        raise BadHeader(f"malformed quad line {line!r}") from exc
    if len(pts) != 4:
        raise BadHeader(f"quad line needs 4 points, got {len(pts)}")
    try:
        return Quad(*pts)
    except Exception as exc:
        raise BadHeader(f"quad line is not a canonically named convex quadrilateral: {exc}") from exc


def format_quad(q: Quad) -> str:
    return " ".join(f"{format_rational(v.x)},{format_rational(v.y)}" for v in q.vertices)


def serialize(p: Pattern) -> str:
    out = [f"labyrinth v1 m={p.m}"]
    if p.quad is not None:
        out.append(f"quad=({format_quad(p.quad)})")
    for row in range(p.m - 1, -1, -1):
        out.append("".join("W" if (col, row) in p.white else "B" for col in range(p.m)))
    return "\n".join(out) + "\n"


# --- validation --------------------------------------------------------------

@dataclass(frozen=True)
class ExitSet:
    left: GridCoord
    right: GridCoord
    top: GridCoord
    bottom: GridCoord
    row_lr: int
    col_tb: int

    @classmethod
    def from_lines(cls, m: int, row_lr: int, col_tb: int) -> "ExitSet":
        return cls((0, row_lr), (m - 1, row_lr), (col_tb, m - 1), (col_tb, 0), row_lr, col_tb)

    def items(self):
        return (("left", self.left), ("right", self.right), ("top", self.top), ("bottom", self.bottom))

    def cells(self) -> set:
        return {self.left, self.right, self.top, self.bottom}


@dataclass
class ValidationReport:
    m: int
    rule: str
    tree_ok: bool
    exit_ok: bool
    corner_ok: bool
    exits: Optional[ExitSet]
    failures: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.tree_ok and self.exit_ok and self.corner_ok

    def lines(self) -> list[str]:
        b = lambda v: "true" if v else "false"  # noqa: E731
        out = [f"m={self.m}", f"exit_rule={self.rule}", f"tree_ok={b(self.tree_ok)}",
               f"exit_ok={b(self.exit_ok)}", f"corner_ok={b(self.corner_ok)}",
               f"valid={b(self.valid)}"]
        if self.exits is not None:
            for name, cell in self.exits.items():
                idx = index_at(self.m, *cell)
                out.append(f"exit_{name}=({cell[0]},{cell[1]}) {idx}")
        for i, msg in enumerate(self.failures):
            out.append(f"failure_{i}={msg}")
        return out


def _check_tree(white, failures) -> bool:
    edges = side_edges(white)
    by_dfs = tree_by_dfs(white, edges)
    by_count = tree_by_counting(white, edges)
    if by_dfs != by_count:
        raise AssertionError("tree tests disagree")
    if not by_dfs:
        if not white:
            failures.append("tree: no white cells")
        else:
            cycle = find_cycle(white, edges)
            if cycle:
                failures.append("tree: cycle " + "-".join(f"({c},{r})" for c, r in cycle))
            else:
                failures.append(f"tree: white graph is disconnected ({len(white)} cells, {len(edges)} edges)")
    return by_dfs


def _strict_exits(m, white, failures) -> Optional[ExitSet]:
    lines = {
        "left": [c for c in white if c[0] == 0],
        "right": [c for c in white if c[0] == m - 1],
        "bottom": [c for c in white if c[1] == 0],
        "top": [c for c in white if c[1] == m - 1],
    }
    ok = True
    for name, cells in lines.items():
        if len(cells) != 1:
            failures.append(f"exit: {len(cells)} white cells on the {name} line "
                            + " ".join(f"({c},{r})" for c, r in sorted(cells, key=row_major)))
            ok = False
    if not ok:
        return None
    (left,), (right,), (bottom,), (top,) = lines["left"], lines["right"], lines["bottom"], lines["top"]
    if left[1] != right[1]:
        failures.append(f"exit: left exit {left} and right exit {right} are in different rows")
        ok = False
    if bottom[0] != top[0]:
        failures.append(f"exit: bottom exit {bottom} and top exit {top} are in different columns")
        ok = False
    return ExitSet.from_lines(m, left[1], bottom[0]) if ok else None


def _literal_exits(m, white, failures) -> Optional[ExitSet]:
    rows = [r for r in range(m) if (0, r) in white and (m - 1, r) in white]
    cols = [c for c in range(m) if (c, 0) in white and (c, m - 1) in white]
    ok = True
    if len(rows) != 1:
        failures.append(f"exit: {len(rows)} rows with both end cells white")
        ok = False
    if len(cols) != 1:
        failures.append(f"exit: {len(cols)} columns with both end cells white")
        ok = False
    return ExitSet.from_lines(m, rows[0], cols[0]) if ok else None


def _check_corners(m, white, failures) -> bool:
    ok = True
    for a, b in (((0, m - 1), (m - 1, 0)), ((0, 0), (m - 1, m - 1))):
        if a in white and b in white:
            failures.append(f"corner: opposite corners {a} and {b} are both white")
            ok = False
    return ok


def validate(p: Pattern, exit_rule: str = "strict") -> ValidationReport:
    if p.m < 4:
        raise MTooSmall(f"labyrinth patterns need m >= 4, got {p.m}")
    if exit_rule not in ("strict", "literal"):
        raise ValueError(f"unknown exit rule {exit_rule!r}")
    failures: list[str] = []
    white = set(p.white)
    tree_ok = _check_tree(white, failures)
    finder = _strict_exits if exit_rule == "strict" else _literal_exits
    exits = finder(p.m, white, failures)
    corner_ok = _check_corners(p.m, white, failures)
    return ValidationReport(p.m, exit_rule, tree_ok, exits is not None, corner_ok, exits, failures)


def _require_valid(p: Pattern, exit_rule: str) -> ValidationReport:
    report = validate(p, exit_rule)
    if not report.valid:
        raise NotValidated("; ".join(report.failures))
    return report


def no_double_corner_exit(p: Pattern, exit_rule: str = "strict") -> bool:
    """No corner cell serves as the exit of two adjacent sides."""
    exits = _require_valid(p, exit_rule).exits
    adjacent_pairs = (("left", "top"), ("top", "right"), ("right", "bottom"), ("bottom", "left"))
    named = dict(exits.items())
    return all(named[a] != named[b] for a, b in adjacent_pairs)


def thm44_hypothesis(p: Pattern, exit_rule: str = "literal") -> bool:
    """Every white cell on the grid boundary is one of the four exits.

    Checked against the literal exit reading by default; under the strict
    reading it holds for every valid pattern by construction.
    """
    exits = _require_valid(p, exit_rule).exits.cells()
    last = p.m - 1
    for c, r in p.white:
        if (c in (0, last) or r in (0, last)) and (c, r) not in exits:
            return False
    return True


# --- random valid patterns ---------------------------------------------------

def _grow_tree(rng: random.Random, allowed: set, seed: GridCoord, targets: set,
               extra: int) -> Optional[set]:
    """Random tree inside ``allowed`` reaching every target, or None if stuck."""
    tree = {seed}
    todo = set(targets) - tree
    grown = 0
    while todo or grown < extra:
        frontier = sorted(
            (c for c in allowed - tree if len(side_neighbours(c, tree)) == 1),
            key=row_major,
        )
        if not frontier:
            return None if todo else tree
        cell = rng.choice(frontier)
        tree.add(cell)
        todo.discard(cell)
        if not todo:
            grown += 1
    return tree


def _literal_allowed(m: int, rng: random.Random, row_lr: int, col_tb: int, targets: set) -> Optional[set]:
    """Grid cells minus one end of every other row and column and one cell of
    each opposite corner pair, never removing a target."""
    last = m - 1
    pairs = [((0, r), (last, r)) for r in range(m) if r != row_lr]
    pairs += [((c, 0), (c, last)) for c in range(m) if c != col_tb]
    pairs += [((0, last), (last, 0)), ((0, 0), (last, last))]
    banned = set()
    for a, b in pairs:
        if a in banned or b in banned:
            continue
        options = [x for x in (a, b) if x not in targets]
        if not options:
            return None
        banned.add(rng.choice(options))
    return {(c, r) for c in range(m) for r in range(m)} - banned


def random_labyrinth(m: int, rng: random.Random, exit_rule: str = "strict",
                     max_tries: int = 10_000) -> Pattern:
    """Draw a valid labyrinth pattern.

    Strict patterns grow a random tree over the interior cells that
    touches the inner neighbours of four aligned exits, then attach the
    exits. Literal patterns grow a random tree over the whole grid that
    reaches a chosen pair of end cells in one row and one column. Either
    way the candidate is kept only if it validates.
    """
    if m < 4:
        raise MTooSmall(f"labyrinth patterns need m >= 4, got {m}")
    for _ in range(max_tries):
        if exit_rule == "strict":
            row_lr = rng.randint(1, m - 2)
            col_tb = rng.randint(1, m - 2)
            exits = ExitSet.from_lines(m, row_lr, col_tb)
            targets = {(1, row_lr), (m - 2, row_lr), (col_tb, 1), (col_tb, m - 2)}
            interior = {(c, r) for c in range(1, m - 1) for r in range(1, m - 1)}
            seed = rng.choice(sorted(targets, key=row_major))
            tree = _grow_tree(rng, interior, seed, targets, rng.randint(0, len(interior)))
            if tree is None:
                continue
            cand = Pattern(m, frozenset(tree | exits.cells()))
        else:
            row_lr, col_tb = rng.randrange(m), rng.randrange(m)
            targets = ExitSet.from_lines(m, row_lr, col_tb).cells()
            allowed = _literal_allowed(m, rng, row_lr, col_tb, targets)
            if allowed is None:
                continue
            seed = rng.choice(sorted(targets, key=row_major))
            tree = _grow_tree(rng, allowed, seed, targets, rng.randint(0, m * m // 2))
            if tree is None:
                continue
            cand = Pattern(m, frozenset(tree))
        if validate(cand, exit_rule).valid:
            return cand
    raise RuntimeError(f"no valid {exit_rule} pattern found in {max_tries} tries")
