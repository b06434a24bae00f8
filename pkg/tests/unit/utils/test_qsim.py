"""
Unit tests for the sparse quantum state simulator.
"""
from fractions import Fraction
from unittest.mock import patch

import numpy as np
import pytest

from utils.circuit import BitVec, Circuit, mct, random_circuit
from utils.errors import StateLimitError, WidthMismatchError
from utils.qsim import (
    SparseState,
    WireInit,
    apply_circuit,
    basis_state,
    inner_product,
    inner_product_squared,
    prepare,
    same_up_to_global_sign,
    swap_test,
    swap_test_probability,
)

ZERO, ONE, PLUS, MINUS = WireInit.ZERO, WireInit.ONE, WireInit.PLUS, WireInit.MINUS


def random_inits(n: int, rng: np.random.Generator):
    return [list(WireInit)[int(i)] for i in rng.integers(0, 4, size=n)]


class TestPrepare:
    """Test product-state preparation."""

    def test_basis_wires(self):
        """Test that only Zero/One wires give a single pattern."""
        s = prepare([ONE, ZERO, ONE])
        assert list(s.support) == [0b101]
        assert list(s.signs) == [1]

    def test_plus_and_minus(self):
        """Test support and signs of |+>|->."""
        s = prepare([PLUS, MINUS])
        assert list(s.support) == [0, 1, 2, 3]
        assert list(s.signs) == [1, 1, -1, -1]
        assert s.amplitude(2) == pytest.approx(-0.5)
        assert s.amplitude(7) == 0.0

    def test_normalized(self):
        """Test that a prepared state has unit norm."""
        s = prepare([PLUS, MINUS, ZERO, PLUS])
        assert inner_product_squared(s, s) == 1

    def test_empty_inits(self):
        """Test that at least one wire is required."""
        with pytest.raises(ValueError):
            prepare([])

    def test_support_limit(self):
        """Test that the support limit is enforced."""
        with patch.dict('utils.qsim.LIMITS', {'max_state_support': 4}):
            with pytest.raises(StateLimitError):
                prepare([PLUS, PLUS, PLUS])

    def test_invalid_state(self):
        """Test direct construction errors."""
        with pytest.raises(ValueError):
            SparseState(2, np.array([1, 1]), np.array([1, 1]))
        with pytest.raises(ValueError):
            SparseState(2, np.array([4]), np.array([1]))
        with pytest.raises(ValueError):
            SparseState(2, np.array([0]), np.array([2]))


class TestApplyCircuit:
    """Test circuit action on states."""

    def test_not_on_basis_state(self):
        """Test that NOT maps |0> to |1>."""
        s = apply_circuit(Circuit(1, (mct(0),)), basis_state(1, 0))
        assert list(s.support) == [1]

    def test_signs_travel_with_patterns(self):
        """Test that X on a |-> wire flips the global sign only."""
        s = prepare([MINUS])
        t = apply_circuit(Circuit(1, (mct(0),)), s)
        assert inner_product(s, t) == pytest.approx(-1.0)
        assert same_up_to_global_sign(s, t)

    def test_inner_product_preserved(self):
        """Test exact inner-product preservation on random circuits and states."""
        rng = np.random.default_rng(5)
        for trial in range(200):
            n = int(rng.integers(1, 9))
            c = random_circuit(n, 12, rng_seed=trial)
            s1, s2 = prepare(random_inits(n, rng)), prepare(random_inits(n, rng))
            before = inner_product_squared(s1, s2)
            after = inner_product_squared(apply_circuit(c, s1), apply_circuit(c, s2))
            assert before == after

    def test_width_mismatch(self):
        """Test that widths must agree."""
        with pytest.raises(WidthMismatchError):
            apply_circuit(Circuit(2), basis_state(1, 0))
        with pytest.raises(WidthMismatchError):
            inner_product(basis_state(1, 0), basis_state(2, 0))


class TestSwapTest:
    """Test swap-test probabilities and sampling."""

    def test_probabilities(self):
        """Test the three reference cases exactly."""
        zero, one, plus = basis_state(1, 0), basis_state(1, BitVec(1, 1)), prepare([PLUS])
        assert swap_test_probability(zero, zero) == 0
        assert swap_test_probability(zero, one) == Fraction(1, 2)
        assert swap_test_probability(zero, plus) == Fraction(1, 4)

    def test_identical_states_never_fire(self):
        """Test that equal states never measure 1."""
        rng = np.random.default_rng(0)
        s = prepare([PLUS, MINUS, ONE])
        assert sum(swap_test(s, s, rng) for _ in range(2000)) == 0

    def test_orthogonal_frequency(self):
        """Test the outcome frequency for orthogonal states."""
        rng = np.random.default_rng(1)
        hits = sum(swap_test(basis_state(2, 0), basis_state(2, 3), rng) for _ in range(10000))
        assert 0.485 <= hits / 10000 <= 0.515

    def test_partial_overlap_frequency(self):
        """Test the outcome frequency at squared overlap one half."""
        rng = np.random.default_rng(2)
        hits = sum(swap_test(basis_state(1, 0), prepare([PLUS]), rng) for _ in range(10000))
        assert 0.237 <= hits / 10000 <= 0.263


if __name__ == '__main__':
    pytest.main([__file__])
