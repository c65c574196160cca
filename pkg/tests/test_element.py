"""
Tests for truncated tree-word elements.
"""

from fractions import Fraction

import pytest

from plmagnus.algebra.element import (
    UNIT,
    AlgebraMode,
    Element,
    ModeMismatchError,
    deshuffle,
    format_monomial,
    monomial_degree,
)
from plmagnus.algebra.trees import LEAF, PlanarTree

C2 = PlanarTree("[[]]")
V = PlanarTree("[[][]]")


def test_truncation_drops_high_degree_words():
    element = Element({(LEAF,): 1, (LEAF, LEAF): 2}, order=1)
    assert len(element) == 1
    assert element.coefficient([LEAF]) == 1
    assert element.coefficient([LEAF, LEAF]) == 0


def test_negative_order_is_rejected():
    with pytest.raises(ValueError):
        Element({}, order=-1)


def test_addition_keeps_smaller_order():
    a = Element({(LEAF,): 1, (C2,): 1}, order=3)
    b = Element({(LEAF,): Fraction(1, 2)}, order=1)
    total = a + b
    assert total.order == 1
    assert total.coefficient([LEAF]) == Fraction(3, 2)
    assert total.coefficient([C2]) == 0


def test_cancellation_removes_terms():
    a = Element({(LEAF,): 1, (C2,): Fraction(-1, 2)})
    assert (a - a).is_zero()
    assert len(a - a) == 0


def test_mode_mismatch_raises():
    planar = Element({(LEAF,): 1})
    commutative = Element({(LEAF,): 1}, mode=AlgebraMode.PRELIE)
    with pytest.raises(ModeMismatchError):
        planar + commutative


def test_items_follow_canonical_order():
    element = Element({(C2, LEAF): 1, (V,): 2, (LEAF, C2): 3, (LEAF,): 4, UNIT: 5})
    assert [w for w, _ in element.items()] == [UNIT, (LEAF,), (V,), (LEAF, C2), (C2, LEAF)]


def test_prelie_words_commute():
    element = Element({(C2, LEAF): 1, (LEAF, C2): 1}, mode=AlgebraMode.PRELIE)
    assert len(element) == 1
    assert element.coefficient([LEAF, C2]) == 2


def test_prelie_trees_are_abelianized():
    element = Element({(PlanarTree("[[[]][]]"),): 1}, mode=AlgebraMode.PRELIE)
    assert element.coefficient([PlanarTree("[[][[]]]")]) == 1


def test_scalar_arithmetic():
    a = Element({(LEAF,): 1, (C2,): 3})
    assert (a * Fraction(1, 3)).coefficient([C2]) == 1
    assert (2 * a).coefficient([LEAF]) == 2
    assert (a / 3).coefficient([LEAF]) == Fraction(1, 3)
    assert (a * 0).is_zero()
    assert (-a).coefficient([C2]) == -3


def test_element_product_is_not_scalar_multiplication():
    a = Element({(LEAF,): 1})
    with pytest.raises(TypeError):
        a * a


def test_equality_compares_at_common_order():
    a = Element({(LEAF,): 1, (C2,): 1}, order=2)
    b = Element({(LEAF,): 1}, order=1)
    assert a == b
    assert a != Element({(LEAF,): 2}, order=1)


def test_elements_are_unhashable():
    with pytest.raises(TypeError):
        hash(Element.one())


def test_unit_and_augmentation():
    one = Element.one(order=4)
    assert one.augmentation() == 1
    assert Element.zero().augmentation() == 0
    assert Element({(LEAF,): 1}).augmentation() == 0


def test_homogeneous_and_degrees():
    element = Element({(LEAF,): 1, (LEAF, LEAF): 1, (C2,): -1, (V,): 2})
    assert element.degrees() == [1, 2, 3]
    assert element.homogeneous(2) == Element({(LEAF, LEAF): 1, (C2,): -1})
    assert element.max_length() == 2


def test_format():
    element = Element({(LEAF,): 1, (C2,): Fraction(-1, 2), (LEAF, C2): Fraction(1, 12)})
    assert element.format() == "1\t[]\n-1/2\t[[]]\n1/12\t[] [[]]"
    assert format_monomial(UNIT) == "1"


def test_deshuffle_of_two_letters():
    assert deshuffle((LEAF, C2)) == [
        ((LEAF, C2), ()),
        ((LEAF,), (C2,)),
        ((C2,), (LEAF,)),
        ((), (LEAF, C2)),
    ]


def test_deshuffle_size_and_degree():
    word = (LEAF, C2, V)
    pairs = deshuffle(word)
    assert len(pairs) == 8
    assert all(monomial_degree(l) + monomial_degree(r) == 6 for l, r in pairs)
