"""
Unit tests for counted oracles and their virtual views.
"""
import threading

import numpy as np
import pytest

from utils.circuit import (
    BitVec,
    Circuit,
    NegationMap,
    PermutationMap,
    compose,
    invert,
    mct,
    neg_circuit,
    perm_circuit,
    random_circuit,
)
from utils.errors import InvalidInverseError, InverseUnavailableError, WidthMismatchError
from utils.oracle import InvertedOracle, Oracle, OracleView, check_inverse
from utils.qsim import WireInit, apply_circuit, prepare, same_up_to_global_sign


@pytest.fixture
def circuit():
    return random_circuit(4, 15, rng_seed=9)


class TestOracle:
    """Test query counting and inverse handling."""

    def test_counts_each_kind(self, circuit):
        """Test that every query kind increments its own counter."""
        o = Oracle.from_circuit(circuit, with_inverse=True)
        x = BitVec(4, 5)
        y = o.query(x)
        assert o.query_inverse(y) == x
        o.query_state(prepare([WireInit.PLUS] * 4))
        assert o.counts() == {'classical': 1, 'inverse': 1, 'quantum': 1}
        assert o.total_queries == 3

    def test_query_matches_circuit(self, circuit):
        """Test that answers come from the forward circuit."""
        o = Oracle(circuit)
        for x in range(16):
            assert o.query(BitVec(4, x)).value == circuit.apply_int(x)

    def test_no_inverse(self, circuit):
        """Test that inverse queries fail without an inverse."""
        o = Oracle(circuit)
        assert not o.has_inverse
        with pytest.raises(InverseUnavailableError):
            o.query_inverse(BitVec(4, 0))
        assert o.counts()['inverse'] == 0

    def test_width_mismatch(self, circuit):
        """Test that wrong-width queries are rejected."""
        with pytest.raises(WidthMismatchError):
            Oracle(circuit).query(BitVec(3, 0))

    def test_bad_inverse_rejected(self, circuit):
        """Test that a wrong inverse fails validation."""
        with pytest.raises(InvalidInverseError):
            Oracle(circuit, compose(invert(circuit), Circuit(4, (mct(0),))))

    def test_check_inverse_sampled(self):
        """Test sampled checking above the exhaustive width."""
        c = random_circuit(12, 20, rng_seed=4)
        check_inverse(c, invert(c), samples=64, seed=1)
        with pytest.raises(InvalidInverseError):
            check_inverse(c, compose(invert(c), Circuit(12, (mct(0),))), samples=64, seed=1)

    def test_check_inverse_wide(self):
        """Test sampled checking on a circuit wider than 64 bits."""
        c = random_circuit(64, 20, rng_seed=4)
        check_inverse(c, invert(c), samples=32, seed=1)
        with pytest.raises(InvalidInverseError):
            check_inverse(c, compose(invert(c), Circuit(64, (mct(0),))), samples=32, seed=1)

    def test_concurrent_counts(self, circuit):
        """Test that parallel queries lose no counts."""
        o = Oracle(circuit)

        def worker():
            for x in range(250):
                o.query(BitVec(4, x % 16))

        threads = [threading.Thread(target=worker) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert o.classical_queries == 1000


class TestOracleView:
    """Test pre-permutation and post-negation views."""

    def test_forward(self, circuit):
        """Test that the view computes post . base . pre."""
        rng = np.random.default_rng(0)
        pi, nu = PermutationMap.random(4, rng), NegationMap.random(4, rng)
        expected = compose(compose(perm_circuit(pi), circuit), neg_circuit(nu))
        base = Oracle.from_circuit(circuit, with_inverse=True)
        view = OracleView(base, pre=pi, post=nu)
        for x in range(16):
            y = view.query(BitVec(4, x))
            assert y.value == expected.apply_int(x)
            assert view.query_inverse(y).value == x
        assert view.counts() == base.counts()

    def test_state_queries(self, circuit):
        """Test the quantum path against direct simulation."""
        rng = np.random.default_rng(1)
        pi, nu = PermutationMap.random(4, rng), NegationMap.random(4, rng)
        expected = compose(compose(perm_circuit(pi), circuit), neg_circuit(nu))
        view = OracleView(Oracle.from_circuit(circuit, with_inverse=True), pre=pi, post=nu)
        s = prepare([WireInit.PLUS, WireInit.MINUS, WireInit.ZERO, WireInit.PLUS])
        out = view.query_state(s)
        assert same_up_to_global_sign(out, apply_circuit(expected, s))
        assert same_up_to_global_sign(view.query_state_inverse(out), s)

    def test_width_checks(self, circuit):
        """Test that mis-sized maps are rejected."""
        with pytest.raises(WidthMismatchError):
            OracleView(Oracle(circuit), pre=PermutationMap.identity(3))


class TestInvertedOracle:
    """Test the inverse-as-forward adapter."""

    def test_swaps_directions(self, circuit):
        """Test that forward queries hit the inverse."""
        base = Oracle.from_circuit(circuit, with_inverse=True)
        flipped = InvertedOracle(base)
        y = base.query(BitVec(4, 7))
        assert flipped.query(y).value == 7
        assert base.counts()['inverse'] == 1

    def test_requires_inverse(self, circuit):
        """Test that an oracle without an inverse cannot be flipped."""
        with pytest.raises(InverseUnavailableError):
            InvertedOracle(Oracle(circuit))


if __name__ == '__main__':
    pytest.main([__file__])
