import re
from fractions import Fraction as F
from pathlib import Path

import pytest

from quadlab.cli import main
from quadlab.iteration import substitute
from quadlab.render import RenderStyle, fmt_decimal, render_escape_svg, render_svg

from conftest import SKEW, UNIT

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"
PATTERNS = ROOT / "patterns"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines())


# --- rendering ---

def test_fmt_decimal():
    assert fmt_decimal(F(1, 4), 6) == "0.25"
    assert fmt_decimal(F(-1, 3), 6) == "-0.333333"
    assert fmt_decimal(F(2, 3), 6) == "0.666667"
    assert fmt_decimal(F(5, 10 ** 7), 6) == "0"  # half to even
    assert fmt_decimal(F(15, 10 ** 7), 6) == "0.000002"
    assert fmt_decimal(F(7), 6) == "7"
    assert fmt_decimal(F(-1, 2 * 10 ** 6), 6) == "0"


def test_style_guards():
    with pytest.raises(ValueError):
        RenderStyle(precision=5)
    with pytest.raises(ValueError):
        RenderStyle(canvas=63)


@pytest.mark.parametrize("q, n, total, white", [(UNIT, 1, 16, 7), (SKEW, 2, 256, 49)])
def test_polygon_counts(e4, q, n, total, white):
    svg = render_svg(q, substitute(e4, n))
    assert svg.count("<polygon") == total
    assert svg.count('class="white"') == white
    cells = re.findall(r'data-cell="(\d+),(\d+)"', svg)
    assert [(int(c), int(r)) for c, r in cells] == substitute(e4, n).cells()


def test_render_deterministic(e4):
    s = substitute(e4, 2)
    assert render_svg(SKEW, s) == render_svg(SKEW, s)


def test_viewbox_margin():
    svg = render_svg(SKEW, substitute(__import__("quadlab").parse_pattern(
        (PATTERNS / "e4.lab").read_text()), 1))
    # bounding box x in [0,2], y in [0,3]; 2% margin each side
    assert 'viewBox="-0.04 -3.06 2.08 3.12"' in svg


def test_escape_overlay(corner4):
    svg = render_escape_svg(UNIT, substitute(corner4, 1), [], [])
    assert svg.count("<polyline") == 1


# --- golden files ---

GOLDEN_REPORTS = [
    ("validate_e4.txt", ["validate", PATTERNS / "e4.lab"], 0),
    ("validate_corner4_literal.txt", ["validate", PATTERNS / "corner4.lab", "--exit-rule", "literal"], 0),
    ("area_e4_unit_3.txt", ["area", PATTERNS / "e4.lab", "--quad", "unit", "--level", 3], 0),
    ("area_e4_skew_3.txt", ["area", PATTERNS / "e4_skew.lab", "--level", 3], 0),
    ("counterexample.txt", ["counterexample"], 0),
    ("components_e4_3.txt", ["components", PATTERNS / "e4.lab", "--level", 3], 0),
    ("analyze_e4_skew_3.txt", ["analyze", PATTERNS / "e4_skew.lab", "--level", 3], 0),
]


@pytest.mark.parametrize("name, argv, code", GOLDEN_REPORTS, ids=[g[0] for g in GOLDEN_REPORTS])
def test_golden_reports(capsys, name, argv, code):
    got_code, out = run(capsys, *argv)
    assert got_code == code
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("name, argv", [
    ("render_e4_unit_1.svg", ["render", PATTERNS / "e4.lab", "--quad", "unit"]),
    ("render_e4_skew_2.svg", ["render", PATTERNS / "e4_skew.lab", "--level", 2]),
])
def test_golden_svgs(capsys, tmp_path, name, argv):
    out = tmp_path / name
    code, _ = run(capsys, *argv, "--out", out)
    assert code == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_golden_escape(capsys, tmp_path):
    svg = tmp_path / "arc.svg"
    code, out = run(capsys, "escape", PATTERNS / "corner4.lab", "--cell", "2,1", "--out", svg)
    assert code == 0
    assert out.replace(f"out={svg}", "out=OUT") == (GOLDEN / "escape_corner4.txt").read_text()
    assert svg.read_bytes() == (GOLDEN / "escape_corner4.svg").read_bytes()


# --- report contents and exit codes ---

def test_validate_e4_exits(capsys):
    code, out = run(capsys, "validate", PATTERNS / "e4.lab")
    r = report(out)
    assert code == 0 and r["valid"] == "true"
    assert [r[f"exit_{k}"].split()[0] for k in ("left", "right", "top", "bottom")] == \
        ["(0,2)", "(3,2)", "(1,3)", "(1,0)"]


def test_area_unit_values(capsys):
    _, out = run(capsys, "area", PATTERNS / "e4.lab", "--quad", "unit", "--level", 3)
    r = report(out)
    assert (r["area_1"], r["area_2"], r["area_3"]) == ("7/16", "49/256", "343/4096")


def test_area_explicit_quad_renamed(capsys):
    _, out = run(capsys, "area", PATTERNS / "e4.lab", "--quad", "2,3,0,0,0,2,1,0")
    r = report(out)
    assert r["quad"] == "(0,2) (0,0) (1,0) (2,3)" and r["area_1"] == "49/32"


def test_counterexample_values(capsys):
    code, out = run(capsys, "counterexample")
    assert code == 0
    assert "naive_coefficients=5/16,1/8,1/2,1/16" in out.splitlines()
    assert "composition undefined: Q'' not in S_m" in out.splitlines()


def test_compose_check(capsys):
    code, out = run(capsys, "compose-check", PATTERNS / "e4.lab", "--level", 2)
    r = report(out)
    assert code == 0 and r["words_checked"] == "56" and r["mismatches"] == "0"


def test_invalid_pattern_exit_1(capsys, tmp_path):
    code, out = run(capsys, "validate", PATTERNS / "corner4.lab")
    assert code == 1 and "valid=false" in out
    code, _ = run(capsys, "analyze", PATTERNS / "corner4.lab")
    assert code == 1
    small = tmp_path / "m3.lab"
    small.write_text("labyrinth v1 m=3\nBWB\nWWW\nBWB\n")
    code, _ = run(capsys, "validate", small)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent/file.lab"],
    ["area", PATTERNS / "e4.lab", "--quad", "1,2,3"],
    ["area", PATTERNS / "e4.lab", "--quad", "0,0,1,0,2,0,0,1"],
    ["area", PATTERNS / "e4.lab", "--level", 0],
    ["escape", PATTERNS / "e4.lab", "--cell", "1,1"],
    ["escape", PATTERNS / "e4.lab", "--cell", "x"],
    ["escape", PATTERNS / "e4.lab", "--cell", "9,9"],
    ["render", PATTERNS / "e4.lab", "--out", "/nonexistent/dir/x.svg"],
    ["render", PATTERNS / "e4.lab", "--out", "x.svg", "--precision", 3],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_format_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.lab"
    bad.write_text("labyrinth v1 m=4\nBWBB\nWWQW\nBWBB\nBWBB\n")
    code, out = run(capsys, "validate", bad)
    assert code == 2 and out.startswith("error=")


def test_depth_budget_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("QUADLAB_DEPTH_BUDGET", "100")
    code, out = run(capsys, "area", PATTERNS / "e4.lab", "--level", 2)
    assert code == 2 and "error=DepthTooLarge" in out


def test_invariant_exit_3(capsys, monkeypatch):
    import quadlab.analysis as an

    def broken(arc, whites, closed=False):
        return [(0, (0, 0))]
    monkeypatch.setattr(an, "arc_violations", broken)
    code, _ = run(capsys, "escape", PATTERNS / "e4.lab", "--cell", "1,2")
    assert code == 3
