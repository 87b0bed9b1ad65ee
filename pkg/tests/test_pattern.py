import random

import networkx as nx
import pytest

from quadlab.errors import BadChar, BadHeader, MTooSmall, NotValidated, RaggedRow
from quadlab.geometry import Quad
from quadlab.graphs import side_edges
from quadlab.pattern import (E4_TEXT, Pattern, no_double_corner_exit, parse_pattern, random_labyrinth,
                             serialize, thm44_hypothesis, validate)

from conftest import CORNER4_TEXT

E4_WHITE = {(1, 3), (0, 2), (1, 2), (2, 2), (3, 2), (1, 1), (1, 0)}


def _nx_is_tree(white):
    g = nx.Graph()
    g.add_nodes_from(white)
    g.add_edges_from(side_edges(white))
    return len(white) > 0 and nx.is_tree(g)


def test_parse_e4(e4):
    assert e4.m == 4
    assert e4.white == E4_WHITE
    assert e4.quad is None
    assert len(e4.black) == 9


def test_round_trip(e4, corner4):
    for p in (e4, corner4):
        assert parse_pattern(serialize(p)) == p
    assert serialize(e4) == E4_TEXT
    assert serialize(corner4) == CORNER4_TEXT


def test_quad_line_round_trip():
    text = "labyrinth v1 m=4\nquad=(0,2 0,0 1,0 2,3)\nBWBB\nWWWW\nBWBB\nBWBB\n"
    p = parse_pattern(text)
    assert p.quad == Quad((0, 2), (0, 0), (1, 0), (2, 3))
    assert serialize(p) == text


@pytest.mark.parametrize("text, err", [
    ("", BadHeader),
    ("labyrinth v2 m=4\nBBBB\nBBBB\nBBBB\nBBBB\n", BadHeader),
    ("labyrinth v1 m=four\n", BadHeader),
    ("labyrinth v1 m=4\nBWBB\nWWWW\nBWB\nBWBB\n", RaggedRow),
    ("labyrinth v1 m=4\nBWBB\nWWWW\nBWBB\n", RaggedRow),
    ("labyrinth v1 m=4\nBWBB\nWWXW\nBWBB\nBWBB\n", BadChar),
    ("labyrinth v1 m=1\nW\n", MTooSmall),
    ("labyrinth v1 m=4\nquad=(0,0 1,0 1,1)\nBWBB\nWWWW\nBWBB\nBWBB\n", BadHeader),
    ("labyrinth v1 m=4\nquad=(0,0 0,1 1,1 1,0)\nBWBB\nWWWW\nBWBB\nBWBB\n", BadHeader),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_pattern(text)


def test_e4_valid(e4):
    r = validate(e4)
    assert r.valid and r.tree_ok and r.exit_ok and r.corner_ok
    assert dict(r.exits.items()) == {"left": (0, 2), "right": (3, 2), "top": (1, 3), "bottom": (1, 0)}
    assert "exit_left=(0,2) S_4(2,1,0,0)" in r.lines()
    assert validate(e4, "literal").valid


def test_cycle_reported(e4):
    r = validate(e4.with_white((2, 1)))
    assert not r.tree_ok and not r.valid
    assert any(f.startswith("tree: cycle") for f in r.failures)
    assert r.exit_ok and r.corner_ok


def test_disconnected_reported(e4):
    r = validate(e4.without_white((1, 1)))
    assert not r.tree_ok
    assert any("disconnected" in f for f in r.failures)


def test_corner_failure(e4):
    p = e4.with_white((0, 3), (3, 0))
    r = validate(p, "literal")
    assert not r.corner_ok


def test_small_m_rejected():
    with pytest.raises(MTooSmall):
        validate(Pattern(3, {(1, 0), (1, 1), (1, 2), (0, 1), (2, 1)}))


def test_literal_only_pattern(e4, corner4):
    assert not validate(corner4).valid
    assert validate(corner4, "literal").valid
    p = e4.with_white((2, 0))
    assert not validate(p).valid
    assert validate(p, "literal").valid


def test_tree_check_agrees_with_networkx():
    rng = random.Random(7)
    for _ in range(400):
        m = rng.choice([4, 5])
        white = {(c, r) for c in range(m) for r in range(m) if rng.random() < 0.45}
        p = Pattern(m, white)
        assert validate(p, "literal").tree_ok == _nx_is_tree(white)


def test_no_double_corner_exit(e4, corner4):
    assert no_double_corner_exit(e4)
    assert no_double_corner_exit(corner4, "literal")
    with pytest.raises(NotValidated):
        no_double_corner_exit(corner4)


def test_border_whites_are_exits(e4, corner4):
    assert thm44_hypothesis(e4)
    assert not thm44_hypothesis(e4.with_white((2, 0)))
    assert not thm44_hypothesis(corner4)
    with pytest.raises(NotValidated):
        thm44_hypothesis(e4.with_white((2, 1)))


@pytest.mark.parametrize("rule", ["strict", "literal"])
@pytest.mark.parametrize("m", [4, 5, 6])
def test_generator_yields_valid(rule, m):
    rng = random.Random(1000 + m)
    for _ in range(40):
        p = random_labyrinth(m, rng, rule)
        assert validate(p, rule).valid
        assert _nx_is_tree(p.white)


def test_generator_deterministic():
    a = [random_labyrinth(5, random.Random(3)) for _ in range(3)]
    b = [random_labyrinth(5, random.Random(3)) for _ in range(3)]
    assert a == b
