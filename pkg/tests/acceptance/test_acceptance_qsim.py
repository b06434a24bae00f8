"""
Acceptance: swap-test statistics and inner-product preservation.
"""
import numpy as np
import pytest

from utils.circuit import random_circuit
from utils.qsim import WireInit, apply_circuit, basis_state, inner_product_squared, prepare, swap_test

pytestmark = pytest.mark.acceptance

TRIALS = 10000


def _frequency(s1, s2, seed: int) -> float:
    rng = np.random.default_rng(seed)
    return sum(swap_test(s1, s2, rng) for _ in range(TRIALS)) / TRIALS


class TestSwapTestStatistics:
    """Outcome frequencies over 10,000 swap tests."""

    def test_identical(self):
        """Test that identical states never give 1."""
        s = prepare([WireInit.PLUS, WireInit.MINUS, WireInit.ZERO])
        assert _frequency(s, s, 10) == 0

    def test_orthogonal(self):
        """Test frequency 1/2 within three standard deviations."""
        assert 0.485 <= _frequency(basis_state(3, 0), basis_state(3, 5), 11) <= 0.515

    def test_overlap_half(self):
        """Test frequency 1/4 for inner product 1/sqrt(2)."""
        s1 = prepare([WireInit.ZERO, WireInit.ONE])
        s2 = prepare([WireInit.PLUS, WireInit.ONE])
        assert 0.237 <= _frequency(s1, s2, 12) <= 0.263


class TestInnerProductPreservation:
    """Circuits preserve inner products exactly."""

    def test_random_cases(self):
        """Test 1,000 random circuit and state-pair cases with n <= 12."""
        rng = np.random.default_rng(2024)
        inits = list(WireInit)
        for case in range(1000):
            n = int(rng.integers(1, 13))
            c = random_circuit(n, int(rng.integers(1, 30)), rng_seed=case)
            s1 = prepare([inits[int(i)] for i in rng.integers(0, 4, size=n)])
            s2 = prepare([inits[int(i)] for i in rng.integers(0, 4, size=n)])
            assert inner_product_squared(s1, s2) == inner_product_squared(apply_circuit(c, s1), apply_circuit(c, s2))
