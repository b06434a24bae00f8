"""
Unit tests for the swap-test matchers.
"""
from unittest.mock import patch

import numpy as np
import pytest

from matchers.quantum import match_n_i_quantum, match_np_i_quantum, probe_state
from matchers.types import MatchConfig
from utils.circuit import NegationMap, PermutationMap, compose, neg_circuit, perm_circuit, random_circuit
from utils.errors import AmbiguityError, NoPartnerError
from utils.oracle import Oracle
from utils.qsim import WireInit, swap_test_probability


def n_i_pair(n: int, seed: int):
    rng = np.random.default_rng(seed)
    c2 = random_circuit(n, 20, rng_seed=seed)
    nu = NegationMap.random(n, rng)
    return compose(neg_circuit(nu), c2), c2, nu


def np_i_pair(n: int, seed: int):
    rng = np.random.default_rng(seed)
    c2 = random_circuit(n, 20, rng_seed=seed)
    nu, pi = NegationMap.random(n, rng), PermutationMap.random(n, rng)
    c1 = compose(compose(neg_circuit(nu), perm_circuit(pi)), c2)
    return c1, c2, nu, pi


class TestProbeState:
    """Test probe preparation."""

    def test_probe(self):
        """Test one special wire among |+> wires."""
        s = probe_state(3, 1, WireInit.ZERO)
        assert len(s) == 4
        assert all((x >> 1) & 1 == 0 for x in s.support)


class TestNIQuantum:
    """Test N-I matching without inverses."""

    def test_recovers_negation(self):
        """Test recovery across seeds with a strict epsilon."""
        for seed in range(10):
            c1, c2, nu = n_i_pair(5, seed)
            o1, o2 = Oracle(c1), Oracle(c2)
            assert match_n_i_quantum(o1, o2, MatchConfig(epsilon=0.001, seed=seed)) == nu

    def test_query_bound(self):
        """Test at most 2nk quantum queries and no classical ones."""
        n, cfg = 6, MatchConfig(epsilon=0.05, seed=3)
        c1, c2, _ = n_i_pair(n, 3)
        o1, o2 = Oracle(c1), Oracle(c2)
        match_n_i_quantum(o1, o2, cfg)
        k = cfg.swap_rounds(n)
        assert o1.counts()['quantum'] + o2.counts()['quantum'] <= 2 * n * k
        assert o1.counts()['classical'] == 0

    def test_unnegated_uses_all_rounds(self):
        """Test that an equal pair spends exactly k tests per wire."""
        c = random_circuit(4, 10, rng_seed=0)
        cfg = MatchConfig(rounds=3, seed=0)
        o1, o2 = Oracle(c), Oracle(c)
        assert match_n_i_quantum(o1, o2, cfg) == NegationMap.zeros(4)
        assert o1.counts()['quantum'] == 12

    def test_swap_test_is_mockable(self):
        """Test that the decision follows the swap-test outcomes."""
        c = random_circuit(3, 5, rng_seed=1)
        with patch('matchers.quantum.swap_test', return_value=1):
            nu = match_n_i_quantum(Oracle(c), Oracle(c), MatchConfig(rounds=2))
        assert nu == NegationMap((1, 1, 1))


class TestNPIQuantum:
    """Test NP-I matching without inverses."""

    def test_recovers_witness(self):
        """Test recovery of both maps."""
        for seed in range(5):
            c1, c2, nu, pi = np_i_pair(4, seed)
            found_nu, found_pi = match_np_i_quantum(Oracle(c1), Oracle(c2), MatchConfig(epsilon=0.001, seed=seed))
            assert (found_nu, found_pi) == (nu, pi)

    def test_query_bound(self):
        """Test at most 2k(n^2 + n) quantum queries."""
        n = 4
        cfg = MatchConfig(epsilon=0.05, seed=11)
        c1, c2, _, _ = np_i_pair(n, 11)
        o1, o2 = Oracle(c1), Oracle(c2)
        match_np_i_quantum(o1, o2, cfg)
        k = cfg.swap_rounds(n * n)
        assert o1.counts()['quantum'] + o2.counts()['quantum'] <= 2 * k * (n * n + n)

    def test_pairing_is_exact_across_seeds(self):
        """Test that the default policy recovers pi on every seed within 2k(n^2 + n) queries."""
        n = 5
        for seed in range(10):
            c1, c2, _, pi = np_i_pair(n, 100 + seed)
            o1, o2 = Oracle(c1), Oracle(c2)
            cfg = MatchConfig(seed=seed)
            _, found_pi = match_np_i_quantum(o1, o2, cfg)
            assert found_pi == pi
            k = cfg.swap_rounds(n * n)
            assert o1.counts()['quantum'] + o2.counts()['quantum'] <= 2 * k * (n * n + n)

    def test_survivors_are_retested(self):
        """Test that wrong wires surviving their first k tests are dropped by later tests."""
        n, k = 4, 3
        c1, c2, nu, pi = np_i_pair(n, 8)
        calls = []

        def late_swap_test(s1, s2, rng):
            # Every candidate of wire 0 passes its first k tests
            calls.append(1)
            if len(calls) <= n * k:
                return 0
            return int(swap_test_probability(s1, s2) > 0)

        with patch('matchers.quantum.swap_test', side_effect=late_swap_test):
            found_nu, found_pi = match_np_i_quantum(Oracle(c1), Oracle(c2), MatchConfig(rounds=k))
        assert (found_nu, found_pi) == (nu, pi)

    def test_budget_exhausted(self):
        """Test that candidates surviving the whole test budget raise AmbiguityError."""
        n = 3
        c = random_circuit(n, 5, rng_seed=2)
        o1, o2 = Oracle(c), Oracle(c)
        with patch('matchers.quantum.swap_test', return_value=0):
            with pytest.raises(AmbiguityError):
                match_np_i_quantum(o1, o2, MatchConfig(rounds=1))
        assert o1.counts()['quantum'] + o2.counts()['quantum'] == 2 * n * n

    def test_no_partner(self):
        """Test that a wire with no matching partner raises NoPartnerError."""
        c = random_circuit(3, 5, rng_seed=2)
        with patch('matchers.quantum.swap_test', return_value=1):
            with pytest.raises(NoPartnerError):
                match_np_i_quantum(Oracle(c), Oracle(c), MatchConfig(rounds=1))


if __name__ == '__main__':
    pytest.main([__file__])
