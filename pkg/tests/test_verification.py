"""
Tests for the invariant suites.
"""

from fractions import Fraction

import numpy as np
import pytest

from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.utils.config import RunConfig
from plmagnus.verification import GROUPS, VerificationContext, get_suites, matrix_bch_series, run_suites


@pytest.fixture
def context():
    return VerificationContext(RunConfig(truncation_order=4))


def _flip_letter_concat(original):
    """GL kernel with the sign of the concatenation term flipped for two single letters."""

    def mutated(self, left, right):
        result = dict(original(self, left, right))
        if len(left) == 1 and len(right) == 1:
            word = self._concat(left, right)
            result[word] = -result.get(word, Fraction(0))
        return result

    return mutated


def test_every_group_has_suites():
    for group in GROUPS:
        assert get_suites([group]), group
    assert len(get_suites()) == sum(len(get_suites([g])) for g in GROUPS)


def test_unknown_group_is_rejected():
    with pytest.raises(ValueError):
        get_suites(["bogus"])


@pytest.mark.parametrize("group", ["exact", "trees", "postlie", "bch", "prelie"])
def test_exact_groups_pass(context, group):
    results = run_suites(context, [group])
    failed = [(r.name, r.residual, r.detail) for r in results if not r.passed]
    assert not failed


def test_numeric_group_passes(context):
    results = run_suites(context, ["numeric"])
    failed = [(r.name, r.residual, r.detail) for r in results if not r.passed]
    assert not failed


def test_broken_gl_product_is_detected(context, mocker):
    mocker.patch.object(PostLieAlgebra, "_gl_words", _flip_letter_concat(PostLieAlgebra._gl_words))
    results = {r.name: r for r in run_suites(context, ["postlie"])}
    assert not results["GL associativity"].passed
    assert results["GL associativity"].residual > 0


def test_matrix_bch_series_of_commuting_matrices():
    P, Q = np.diag([1.0, 2.0]), np.diag([-1.0, 3.0])
    series = matrix_bch_series(P, Q, (1, 2), 4)
    np.testing.assert_allclose(series[1], P, atol=1e-14)
    np.testing.assert_allclose(series[2], Q, atol=1e-14)
    for order in (0, 3, 4):
        np.testing.assert_allclose(series[order], 0.0, atol=1e-14)
