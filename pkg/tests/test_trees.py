"""
Tests for planar trees and grafting.
"""

import itertools

import pytest

from plmagnus.algebra.exact import SizeLimitError
from plmagnus.algebra.trees import (
    LEAF,
    PlanarTree,
    TreeParseError,
    abelianize,
    catalan,
    children,
    enumerate_nonplanar_trees,
    enumerate_trees,
    left_graft_sum,
    parse_tree,
)

C2 = PlanarTree("[[]]")
C3 = PlanarTree("[[[]]]")
V = PlanarTree("[[][]]")


def test_parse_tree_accepts_valid_encodings():
    tree = parse_tree("[[][[]]]")
    assert tree.encoding == "[[][[]]]"
    assert tree.degree == 4
    assert str(tree) == "[[][[]]]"


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("[]]", 2),
        ("[][]", 2),
        ("[x]", 1),
        ("[[]", 3),
        ("]", 0),
    ],
)
def test_parse_tree_reports_position(text, position):
    with pytest.raises(TreeParseError) as excinfo:
        parse_tree(text)
    assert excinfo.value.position == position
    assert f"position {position}" in str(excinfo.value)


def test_parse_tree_offset_shifts_position():
    with pytest.raises(TreeParseError) as excinfo:
        parse_tree("[a]", offset=10)
    assert excinfo.value.position == 11


def test_tree_order_is_degree_then_encoding():
    assert LEAF < C2 < C3 < V
    assert sorted([V, LEAF, C3, C2]) == [LEAF, C2, C3, V]


def test_children():
    assert children(PlanarTree("[[[]][]]")) == (C2, LEAF)
    assert children(LEAF) == ()


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_trees_counts(n):
    trees = enumerate_trees(n)
    assert len(trees) == catalan(n - 1)
    assert trees == sorted(trees)
    assert all(t.degree == n for t in trees)


def test_enumerate_trees_of_three_vertices():
    assert enumerate_trees(3) == [C3, V]


def test_enumerate_trees_respects_cap():
    with pytest.raises(SizeLimitError):
        enumerate_trees(10)
    with pytest.raises(ValueError):
        enumerate_trees(0)


def test_nonplanar_tree_counts():
    assert [len(enumerate_nonplanar_trees(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_left_graft_sum_on_chain():
    assert left_graft_sum(LEAF, C2) == {V: 1, C3: 1}
    assert left_graft_sum(C2, LEAF) == {C3: 1}


def test_left_graft_sum_on_cherry():
    assert left_graft_sum(LEAF, V) == {
        PlanarTree("[[][][]]"): 1,
        PlanarTree("[[[]][]]"): 1,
        PlanarTree("[[][[]]]"): 1,
    }


@pytest.mark.parametrize("n1, n2", [(1, 3), (2, 3), (3, 2), (2, 4)])
def test_grafting_degree_additivity(n1, n2):
    for t1 in enumerate_trees(n1):
        for t2 in enumerate_trees(n2):
            grafted = left_graft_sum(t1, t2)
            assert sum(grafted.values()) == n2
            assert all(t.degree == n1 + n2 for t in grafted)


def test_abelianize_sorts_children():
    assert abelianize(PlanarTree("[[[]][]]")) == PlanarTree("[[][[]]]")
    assert abelianize(PlanarTree("[[[[]][]]]")) == PlanarTree("[[[][[]]]]")


@pytest.mark.parametrize("n", range(1, 7))
def test_abelianize_is_idempotent(n):
    for t in enumerate_trees(n):
        once = abelianize(t)
        assert abelianize(once) == once
        assert once.degree == t.degree


@pytest.mark.parametrize("n", range(1, 7))
def test_abelianize_ignores_root_child_order(n):
    for t in enumerate_trees(n):
        expected = abelianize(t)
        for order in itertools.permutations(children(t)):
            shuffled = parse_tree("[" + "".join(c.encoding for c in order) + "]")
            assert abelianize(shuffled) == expected, t
