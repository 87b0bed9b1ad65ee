"""Command-line front end. Reports are ``key=value`` lines on stdout.

Exit codes: 0 success, 1 invalid pattern, 2 I/O, format or usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import analysis as an
from .errors import MTooSmall, NoEscape, NotBlack, NotValidated, OutOfRange, PatternFormatError, QuadlabError
from .geometry import format_rational, make_quad, parse_rational
from .iteration import (UNIT_SQUARE, StageSet, lattice_closure_sweep, remark23_counterexample,
                        stage_area, substitute)
from .pattern import Pattern, parse_pattern, thm44_hypothesis, validate
from .render import RenderStyle, render_escape_svg, render_svg

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class InvariantViolation(QuadlabError):
    pass


class UsageError(QuadlabError):
    pass


def _b(v: bool) -> str:
    return "true" if v else "false"


def _cell(c) -> str:
    return f"({c[0]},{c[1]})"


def _sqrt_text(r: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        return str((Decimal(r.numerator) / Decimal(r.denominator)).sqrt())


def load_pattern(path: str) -> Pattern:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_pattern(text)


def resolve_quad(spec: str | None, pattern: Pattern | None):
    if spec is None:
        if pattern is not None and pattern.quad is not None:
            return pattern.quad
        return UNIT_SQUARE
    if spec == "unit":
        return UNIT_SQUARE
    toks = [t for t in spec.replace(",", " ").split() if t]
    if len(toks) != 8:
        raise UsageError("--quad takes 'unit' or eight rationals x1,y1,...,x4,y4")
    try:
        vals = [parse_rational(t) for t in toks]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational in --quad: {exc}") from exc
    return make_quad([(vals[i], vals[i + 1]) for i in range(0, 8, 2)])


def _require_valid(p: Pattern, rule: str, out: list[str]):
    report = validate(p, rule)
    if not report.valid:
        out += report.lines()
        raise NotValidated("pattern is not a labyrinth set")
    return report


def _stage(p: Pattern, n: int) -> StageSet:
    if n < 1:
        raise UsageError("--level must be >= 1")
    return substitute(p, n)


# --- commands ----------------------------------------------------------------

def cmd_validate(args, out):
    p = load_pattern(args.pattern)
    report = validate(p, args.exit_rule)
    out += report.lines()
    if report.valid:
        out.append(f"border_whites_are_exits={_b(thm44_hypothesis(p, args.exit_rule))}")
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_render(args, out):
    p = load_pattern(args.pattern)
    q = resolve_quad(args.quad, p)
    s = _stage(p, args.level)
    svg = render_svg(q, s, RenderStyle(canvas=args.canvas, precision=args.precision))
    _write(args.out, svg)
    out += [f"quad={q}", f"level={s.n}", f"cells={s.M ** 2}", f"white={len(s.white)}", f"out={args.out}"]
    return EXIT_OK


def cmd_area(args, out):
    p = load_pattern(args.pattern)
    q = resolve_quad(args.quad, p)
    out.append(f"quad={q}")
    out.append(f"area_q={format_rational(q.area)}")
    prev = None
    for k in range(1, args.level + 1):
        a = stage_area(q, _stage(p, k))
        out.append(f"area_{k}={format_rational(a)}")
        if prev is not None and not a < prev and len(p.white) < p.m ** 2:
            raise InvariantViolation(f"area did not decrease at level {k}")
        prev = a
    return EXIT_OK


def _component_lines(s: StageSet, out):
    comps = an.complement_components(s)
    corners = an.corner_cells_per_component(s, comps)
    out.append(f"level_{s.n}.components={comps.count}")
    for rep, cells in comps.groups.items():
        cs = " ".join(_cell(c) for c in corners[rep]) or "none"
        out.append(f"level_{s.n}.component{_cell(rep)}=size {len(cells)} corners {cs}")
    return comps


def cmd_components(args, out):
    p = load_pattern(args.pattern)
    for k in range(1, args.level + 1):
        _component_lines(_stage(p, k), out)
    return EXIT_OK


def cmd_analyze(args, out):
    p = load_pattern(args.pattern)
    q = resolve_quad(args.quad, p)
    _require_valid(p, args.exit_rule, out)
    rep = an.dendrite_report(q, p, args.level, args.exit_rule)
    out.append(f"quad={q}")
    out.append(f"border_whites_are_exits={_b(thm44_hypothesis(p, args.exit_rule))}")
    for lv in rep.levels:
        k = f"level_{lv.level}"
        out += [
            f"{k}.white_cells={lv.white_cells}",
            f"{k}.connected={_b(lv.connected)}",
            f"{k}.acyclic={_b(lv.acyclic)}",
            f"{k}.tree_by_dfs={_b(lv.tree_by_dfs)}",
            f"{k}.tree_by_counting={_b(lv.tree_by_counting)}",
            f"{k}.max_sq_diameter={format_rational(lv.max_sq_diameter)}",
            f"{k}.max_diameter_approx={_sqrt_text(lv.max_sq_diameter)}",
            f"{k}.widest_cell={_cell(lv.widest_cell)} {lv.widest_class}",
        ]
        _component_lines(substitute(p, lv.level), out)
    out.append(f"diameters_decreasing={_b(rep.diameters_decreasing)}")
    out.append(f"dendrite_evidence={_b(rep.ok)}")
    if any(lv.tree_by_dfs != lv.tree_by_counting for lv in rep.levels):
        raise InvariantViolation("tree tests disagree")
    return EXIT_OK if rep.ok else EXIT_INVARIANT


def cmd_escape(args, out):
    p = load_pattern(args.pattern)
    q = resolve_quad(args.quad, p)
    try:
        row, col = (int(t) for t in args.cell.split(","))
    except ValueError as exc:
        raise UsageError("--cell takes row,col") from exc
    s = _stage(p, args.level)
    s1 = substitute(p, args.level + 1)
    try:
        arc = an.escape_arc(q, p, args.level, (col, row), s, s1)
    except NotBlack as exc:
        raise UsageError(str(exc)) from exc
    whites = an.WhitePolygons(q, s1)
    bad = an.arc_violations(arc, whites)
    touching = an.arc_violations(arc, whites, closed=True)
    out += [
        f"quad={q}",
        f"level={s.n}",
        f"start={_cell((col, row))}",
        "cells=" + " ".join(_cell(c) for c in arc.cells),
        "polyline=" + " ".join(str(pt) for pt in arc.polyline),
        f"detours={len(arc.detours)}",
    ]
    for i, (v, cell) in enumerate(arc.detours):
        out.append(f"detour_{i}=vertex {v} via {_cell(cell)}")
    out.append(f"violations={len(bad)}")
    out.append(f"closed_contacts={len(touching)}")
    if args.out:
        detour_polys = [an.cell_polygon(q, s1.M, c).vertices for _, c in arc.detours]
        _write(args.out, render_escape_svg(q, s, arc.polyline, detour_polys,
                                           RenderStyle(canvas=args.canvas, precision=args.precision)))
        out.append(f"out={args.out}")
    if bad or touching or not an.arc_is_well_formed(q, arc, s):
        raise InvariantViolation("escape arc enters L_(n+1) or is malformed")
    return EXIT_OK


def cmd_compose_check(args, out):
    p = load_pattern(args.pattern)
    q = resolve_quad(args.quad, p)
    _stage(p, args.level)
    res = lattice_closure_sweep(q, p, args.level)
    out += [f"quad={q}", f"max_level={args.level}", f"words_checked={res.checked}",
            f"mismatches={len(res.mismatches)}"]
    for w in res.mismatches[:20]:
        out.append("mismatch=" + " ".join(_cell(c) for c in w))
    if res.mismatches:
        raise InvariantViolation("composed and direct cell geometry differ")
    return EXIT_OK


def cmd_counterexample(args, out):
    rec = remark23_counterexample()
    out += rec.lines()
    if rec.witness_outer is None:
        out.append("mismatch_outer=none")
    if not rec.lattice_identity_holds:
        raise InvariantViolation("composition identity fails for a lattice inner cell")
    return EXIT_OK


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


# --- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadlab", description="Labyrinth fractals on convex quadrilaterals.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, pattern=True, quad=True, level=True):
        sp = sub.add_parser(name, help=help_)
        if pattern:
            sp.add_argument("pattern", help="pattern file (labyrinth v1 format)")
        if quad:
            sp.add_argument("--quad", help="'unit' or eight rationals x1,y1,...,x4,y4 (renamed canonically)")
        if level:
            sp.add_argument("--level", type=int, default=1, help="iteration depth n (default 1)")
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check the tree, exit and corner properties", quad=False, level=False)
    sp.add_argument("--exit-rule", choices=("strict", "literal"), default="strict")

    sp = add("render", cmd_render, "write the level-n stage as SVG")
    sp.add_argument("--out", required=True)
    sp.add_argument("--canvas", type=int, default=800)
    sp.add_argument("--precision", type=int, default=6)

    sp = add("analyze", cmd_analyze, "dendrite evidence and complement components per level")
    sp.add_argument("--exit-rule", choices=("strict", "literal"), default="strict")

    add("area", cmd_area, "exact area of L_k for k = 1..n")
    add("components", cmd_components, "complement components for k = 1..n", quad=False)

    sp = add("escape", cmd_escape, "escape arc from a black cell to the boundary")
    sp.add_argument("--cell", required=True, help="start cell as row,col")
    sp.add_argument("--out", help="optional SVG overlay")
    sp.add_argument("--canvas", type=int, default=800)
    sp.add_argument("--precision", type=int, default=6)

    add("compose-check", cmd_compose_check, "compare composed and direct cell geometry for all white words")
    add("counterexample", cmd_counterexample, "composition with a non-lattice inner quadrilateral",
        pattern=False, quad=False, level=False)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out: list[str] = []
    try:
        if getattr(args, "level", 1) < 1:
            raise UsageError("--level must be >= 1")
        code = args.func(args, out)
    except (NotValidated, MTooSmall) as exc:
        out.append(f"error={exc}")
        code = EXIT_INVALID
    except (PatternFormatError, UsageError, OutOfRange, ValueError) as exc:
        out.append(f"error={exc}")
        code = EXIT_USAGE
    except (InvariantViolation, NoEscape, AssertionError) as exc:
        out.append(f"error={exc}")
        code = EXIT_INVARIANT
    except QuadlabError as exc:
        out.append(f"error={type(exc).__name__}: {exc}")
        code = EXIT_USAGE
    sys.stdout.write("".join(line + "\n" for line in out))
    return code


if __name__ == "__main__":
    sys.exit(main())
