from fractions import Fraction as F
from itertools import product

import pytest

from quadlab.errors import DepthTooLarge
from quadlab.geometry import BaryCoords, Point, apply_map, locate_point, centre, polygon_area
from quadlab.iteration import (SAMPLE_INNER, SAMPLE_OUTER, UNIT_SQUARE, cell_polygon, composed_geometry,
                               composition_pair, coord_to_word, lattice_closure_sweep, remark23_counterexample,
                               stage_area, stage_geometry, substitute, white_words, word_to_coord)
from quadlab.pattern import Pattern, validate
from quadlab.subdivision import cell_vertices, index_at

from conftest import SKEW, UNIT

P = Point.of


def _brute_white(p, n):
    """Membership by reading every digit of every cell."""
    M = p.m ** n
    out = set()
    for C, R in product(range(M), repeat=2):
        c, r, ok = C, R, True
        for _ in range(n):
            ok &= (c % p.m, r % p.m) in p.white
            c //= p.m
            r //= p.m
        if ok:
            out.add((C, R))
    return out


def _shoelace(pts):
    s = F(0)
    for a, b in zip(pts, pts[1:] + pts[:1]):
        s += a.x * b.y - b.x * a.y
    return s / 2


def test_substitute_level1(e4):
    assert substitute(e4, 1).white == e4.white


@pytest.mark.parametrize("n", [1, 2, 3])
def test_substitute_matches_digit_oracle(e4, n):
    s = substitute(e4, n)
    assert s.white == _brute_white(e4, n)
    assert len(s.white) == 7 ** n
    assert len(s.black) == 16 ** n - 7 ** n


def test_word_and_coord(e4):
    s = substitute(e4, 2)
    assert word_to_coord(4, ((1, 2), (3, 2))) == (7, 10)
    assert (7, 10) in s.white
    assert coord_to_word(4, 2, (7, 10)) == ((1, 2), (3, 2))
    for cell in s.cells():
        assert word_to_coord(4, s.word_of(cell)) == cell


def test_all_white_saturates():
    p = Pattern(4, {(c, r) for c in range(4) for r in range(4)})
    assert len(substitute(p, 2).white) == 256


def test_depth_budget(e4, monkeypatch):
    with pytest.raises(DepthTooLarge):
        substitute(e4, 3, budget=4000)
    assert len(substitute(e4, 3, budget=4096).white) == 343
    monkeypatch.setenv("QUADLAB_DEPTH_BUDGET", "255")
    with pytest.raises(DepthTooLarge):
        substitute(e4, 2)
    monkeypatch.setenv("QUADLAB_DEPTH_BUDGET", "256")
    substitute(e4, 2)
    with pytest.raises(ValueError):
        substitute(e4, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_stages_are_labyrinths(e4, n):
    assert validate(substitute(e4, n).as_pattern()).valid


def test_monotone_parents(e4):
    for n in (1, 2):
        coarse, fine = substitute(e4, n), substitute(e4, n + 1)
        for C, R in fine.white:
            assert (C // 4, R // 4) in coarse.white


def test_stage_geometry_examples(e4):
    geo = stage_geometry(UNIT, substitute(e4, 1))
    assert list(geo) == sorted(e4.white, key=lambda c: (c[1], c[0]))
    assert geo[(0, 2)].vertices == (P(0, F(3, 4)), P(0, F(1, 2)), P(F(1, 4), F(1, 2)), P(F(1, 4), F(3, 4)))
    idx = index_at(4, 1, 2)
    assert idx.k == (2, 0, 1, 0)
    r = stage_geometry(SKEW, substitute(e4, 1))[(1, 2)].vertices
    Q = SKEW.vertices
    for j in range(4):
        assert (r[j].x - r[(j + 1) % 4].x, r[j].y - r[(j + 1) % 4].y) == (
            (Q[j].x - Q[(j + 1) % 4].x) / 4, (Q[j].y - Q[(j + 1) % 4].y) / 4)


def test_composed_examples(e4):
    assert composed_geometry(UNIT, ((1, 2),), 4) == cell_polygon(UNIT, 4, (1, 2))
    assert composed_geometry(UNIT, ((1, 2), (3, 2)), 4) == cell_vertices(UNIT, index_at(16, 7, 10))


def test_composed_matches_direct_on_every_letter_pair(quad):
    # every word of length 2 over the full grid, not only the white letters
    for a, b in product(product(range(4), repeat=2), repeat=2):
        assert composed_geometry(quad, (a, b), 4) == cell_polygon(quad, 16, word_to_coord(4, (a, b)))


def test_closure_sweep(e4, quad):
    res = lattice_closure_sweep(quad, e4, 2)
    assert res.checked == 7 + 49 and not res.mismatches


def test_children_inside_parent(e4, quad):
    # finite form of self-similarity: the white (n+1)-cells under a white n-cell are its prefixed words
    s1, s2 = substitute(e4, 1), substitute(e4, 2)
    for W in s1.white:
        inside = {c for c in s2.white if (c[0] // 4, c[1] // 4) == W}
        assert inside == {word_to_coord(4, (W, w)) for w in e4.white}
        parent = cell_polygon(quad, 4, W).vertices
        for c in inside:
            assert locate_point(centre(cell_polygon(quad, 16, c).vertices), parent) == "inside"


def test_white_words_order(e4):
    words = list(white_words(e4, 2))
    assert len(words) == 49
    assert words[0] == ((1, 0), (1, 0))


def test_area_unit(e4):
    for n in (1, 2, 3):
        assert stage_area(UNIT, substitute(e4, n)) == F(7, 16) ** n


def test_area_skew_independent(e4):
    s = substitute(e4, 1)
    total = sum((_shoelace(list(cell_polygon(SKEW, 4, c).vertices)) for c in s.white), F(0))
    assert total == F(49, 32) == stage_area(SKEW, s)
    by_class = {"A1": F(1, 8), "A2": F(5, 16), "A3": F(7, 32)}
    assert sum(by_class[index_at(4, *c).cls] for c in s.white) == F(49, 32)


def test_area_decreasing_and_empty(e4):
    areas = [stage_area(SKEW, substitute(e4, n)) for n in (1, 2, 3)]
    assert areas[0] > areas[1] > areas[2]
    assert stage_area(SKEW, substitute(Pattern(4, set()), 1)) == 0


def test_counterexample_record():
    rec = remark23_counterexample()
    assert rec.naive == (F(5, 16), F(1, 8), F(1, 2), F(1, 16))
    assert not rec.naive_is_valid
    assert not BaryCoords(*rec.naive).is_valid()
    assert not rec.inner_is_lattice
    assert rec.lattice_identity_holds
    assert rec.outer == cell_vertices(UNIT_SQUARE, SAMPLE_OUTER).vertices
    lines = rec.lines()
    assert "naive_coefficients=5/16,1/8,1/2,1/16" in lines
    assert "composition undefined: Q'' not in S_m" in lines


def test_composition_on_diagonal_coincides():
    outer = cell_vertices(UNIT_SQUARE, SAMPLE_OUTER).vertices
    for t in (F(0), F(1, 3), F(1, 2), F(5, 7), F(1)):
        x = P(t, t)
        lhs, rhs = composition_pair(UNIT_SQUARE, outer, SAMPLE_INNER, x)
        assert lhs == rhs


def test_composition_mismatch_exists_for_non_affine_outer():
    # on the unit square every cell map is affine, so the orders agree; on the
    # skew quad the map onto a parallelogram cell bends along Q1Q3 and a
    # non-lattice inner quad exposes the difference
    inner = tuple(apply_map(UNIT_SQUARE, SKEW.vertices, v) for v in SAMPLE_INNER)
    x = apply_map(UNIT_SQUARE, SKEW.vertices, P(F(1, 2), F(1, 4)))
    for c in product(range(4), repeat=2):
        outer = cell_polygon(SKEW, 4, c).vertices
        lhs, rhs = composition_pair(SKEW, outer, inner, x)
        assert (lhs == rhs) == (index_at(4, *c).cls == "A3"), c


def test_partition_by_stage_geometry(quad):
    p = Pattern(4, {(c, r) for c in range(4) for r in range(4)})
    geo = stage_geometry(quad, substitute(p, 1))
    assert sum(polygon_area(g.vertices) for g in geo.values()) == quad.area
