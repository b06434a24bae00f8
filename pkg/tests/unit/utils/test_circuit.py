"""
Unit tests for the circuit module.
"""
import numpy as np
import pytest

from utils.circuit import (
    BitVec,
    Circuit,
    NegationMap,
    PermutationMap,
    Rewire,
    commute_neg_perm,
    compose,
    evaluate,
    identity_circuit,
    invert,
    is_bijection,
    mct,
    neg_circuit,
    perm_circuit,
    random_circuit,
    random_inputs,
    truth_table,
    truth_table_array,
    uncommute_neg_perm,
)
from utils.errors import WidthLimitError, WidthMismatchError


def fig2_circuit() -> Circuit:
    """MCT on wire 2 with a positive control on 0 and a negative one on 1, then NOT on 1."""
    return Circuit(3, (mct(2, positive=[0], negative=[1]), mct(1)))


class TestBitVec:
    """Test the bit-pattern type."""

    def test_wire_zero_is_least_significant(self):
        """Test that wire 0 maps to bit 0 of the integer value."""
        x = BitVec.from_bits([1, 0, 0])
        assert x.value == 1
        assert x[0] == 1
        assert x.bits == (1, 0, 0)

    def test_xor_and_string(self):
        """Test XOR and wire-0-first rendering."""
        x = BitVec.from_bits([1, 1, 0]) ^ BitVec.from_bits([0, 1, 1])
        assert x.bits == (1, 0, 1)
        assert str(x) == '101'

    def test_invalid_values(self):
        """Test width and range validation."""
        with pytest.raises(ValueError):
            BitVec(0, 0)
        with pytest.raises(ValueError):
            BitVec(2, 4)
        with pytest.raises(IndexError):
            BitVec(2, 0)[2]
        with pytest.raises(WidthMismatchError):
            BitVec(2, 1) ^ BitVec(3, 1)


class TestMctGate:
    """Test gate construction and evaluation."""

    def test_fig2_examples(self):
        """Test the three-wire example circuit on two inputs."""
        c = fig2_circuit()
        assert evaluate(c, BitVec.from_bits([0, 0, 0])).bits == (0, 1, 0)
        assert evaluate(c, BitVec.from_bits([1, 0, 1])).bits == (1, 1, 0)

    def test_not_and_cnot(self):
        """Test zero and one control gates."""
        assert mct(0).apply_int(0) == 1
        cnot = mct(1, positive=[0])
        assert cnot.apply_int(0b01) == 0b11
        assert cnot.apply_int(0b10) == 0b10

    def test_invalid_gates(self):
        """Test that duplicate controls and target-as-control are rejected."""
        with pytest.raises(ValueError):
            mct(0, positive=[0])
        with pytest.raises(ValueError):
            mct(0, positive=[1], negative=[1])

    def test_gate_outside_width(self):
        """Test that a circuit rejects gates beyond its width."""
        with pytest.raises(ValueError):
            Circuit(2, (mct(2),))

    def test_array_matches_int(self):
        """Test vectorised evaluation against the scalar path."""
        c = random_circuit(5, 30, rng_seed=7)
        xs = np.arange(32, dtype=np.int64)
        assert list(c.apply_array(xs)) == [c.apply_int(int(x)) for x in xs]


class TestMaps:
    """Test permutation and negation maps."""

    def test_permutation_validation(self):
        """Test that non-permutations are rejected."""
        with pytest.raises(ValueError):
            PermutationMap((0, 0))
        with pytest.raises(ValueError):
            PermutationMap(())

    def test_permutation_inverse(self):
        """Test inverse and identity."""
        pi = PermutationMap.cyclic_shift(4)
        assert pi.mapping == (1, 2, 3, 0)
        assert pi.inverse().mapping == (3, 0, 1, 2)
        assert PermutationMap(tuple(pi.inverse()(pi(i)) for i in range(4))).is_identity()

    def test_permutation_moves_values(self):
        """Test that the value on wire i lands on wire pi(i)."""
        pi = PermutationMap.transposition(2, 0, 1)
        assert pi.apply_int(0b01) == 0b10
        assert evaluate(perm_circuit(pi), BitVec.from_bits([1, 0])).bits == (0, 1)

    def test_negation_mask(self):
        """Test mask round trip and XOR semantics."""
        nu = NegationMap((1, 0, 1))
        assert nu.mask == 0b101
        assert NegationMap.from_mask(3, 0b101) == nu
        assert evaluate(neg_circuit(nu), BitVec.zeros(3)).bits == (1, 0, 1)

    def test_negation_validation(self):
        """Test that flags other than 0 and 1 are rejected."""
        with pytest.raises(ValueError):
            NegationMap((0, 2))

    def test_zero_negation_is_empty(self):
        """Test that an all-zero negation builds no gates."""
        assert len(neg_circuit(NegationMap.zeros(4))) == 0


class TestCircuitOperations:
    """Test inversion, composition and truth tables."""

    def test_invert_single_gate(self):
        """Test that a lone MCT gate is its own inverse."""
        c = Circuit(2, (mct(1, positive=[0]),))
        assert invert(c) == c

    def test_invert_rewire(self):
        """Test that a Rewire inverts to the inverse permutation."""
        shift = PermutationMap.cyclic_shift(3)
        inverted = invert(Circuit(3, (Rewire(shift),)))
        assert inverted.elements == (Rewire(PermutationMap.cyclic_shift(3, -1)),)

    def test_compose_with_inverse_is_identity(self):
        """Test c followed by its inverse on every input."""
        for seed in range(5):
            c = random_circuit(6, 25, rng_seed=seed)
            assert list(truth_table_array(compose(c, invert(c)))) == list(range(64))

    def test_compose_order(self):
        """Test that compose(a, b) applies a first."""
        a = neg_circuit(NegationMap((1, 0)))
        b = perm_circuit(PermutationMap.transposition(2, 0, 1))
        assert compose(a, b).apply_int(0) == 0b10
        assert compose(b, a).apply_int(0) == 0b01

    def test_compose_width_mismatch(self):
        """Test that differing widths cannot be composed."""
        with pytest.raises(WidthMismatchError):
            compose(identity_circuit(2), identity_circuit(3))

    def test_not_twice_is_identity(self):
        """Test that two NOTs on one wire cancel."""
        c = compose(Circuit(1, (mct(0),)), Circuit(1, (mct(0),)))
        assert [t.value for t in truth_table(c)] == [0, 1]

    def test_truth_tables(self):
        """Test identity, NOT and the example circuit."""
        assert [t.value for t in truth_table(identity_circuit(3))] == list(range(8))
        assert [t.value for t in truth_table(Circuit(1, (mct(0),)))] == [1, 0]
        assert is_bijection(truth_table(fig2_circuit()))

    def test_truth_table_limit(self):
        """Test that the configured width limit is enforced."""
        with pytest.raises(WidthLimitError):
            truth_table_array(identity_circuit(5), limit=4)

    def test_is_bijection_rejects_repeats(self):
        """Test a table with a repeated value."""
        assert not is_bijection([0, 0, 1, 2])


class TestCommutation:
    """Test exchanging negation and permutation."""

    def test_example(self):
        """Test the two-wire swap example and check both orders agree."""
        nu, pi = NegationMap((1, 0)), PermutationMap.transposition(2, 0, 1)
        nu_after = commute_neg_perm(nu, pi)
        assert nu_after.flags == (0, 1)
        before = compose(neg_circuit(nu), perm_circuit(pi))
        after = compose(perm_circuit(pi), neg_circuit(nu_after))
        assert list(truth_table_array(before)) == list(truth_table_array(after))

    def test_identity_and_all_ones(self):
        """Test the fixed points of the exchange."""
        rng = np.random.default_rng(3)
        nu = NegationMap.random(5, rng)
        assert commute_neg_perm(nu, PermutationMap.identity(5)) == nu
        ones = NegationMap((1,) * 5)
        assert commute_neg_perm(ones, PermutationMap.random(5, rng)) == ones

    def test_uncommute_round_trip(self):
        """Test that uncommute undoes commute."""
        rng = np.random.default_rng(11)
        for _ in range(10):
            nu, pi = NegationMap.random(6, rng), PermutationMap.random(6, rng)
            assert uncommute_neg_perm(commute_neg_perm(nu, pi), pi) == nu


class TestRandomCircuit:
    """Test random circuit generation."""

    def test_reproducible(self):
        """Test that equal seeds give equal circuits."""
        assert random_circuit(5, 20, rng_seed=42) == random_circuit(5, 20, rng_seed=42)

    def test_shape(self):
        """Test gate count and fan-in cap."""
        c = random_circuit(8, 50, rng_seed=1, max_fan_in=2)
        assert c.gate_count == 50
        assert all(len(g.controls) <= 2 for g in c.elements)

    def test_single_wire(self):
        """Test that one wire allows only NOT gates."""
        c = random_circuit(1, 10, rng_seed=0)
        assert all(not g.controls for g in c.elements)


class TestWidePatterns:
    """Test sampling and batch evaluation beyond 64-bit lanes."""

    def test_random_inputs_any_width(self):
        """Test that drawn patterns fit their width, also above 63 wires."""
        xs = random_inputs(80, 50, np.random.default_rng(0))
        assert len(xs) == 50
        assert all(0 <= x < 1 << 80 for x in xs)
        assert max(xs).bit_length() > 63

    def test_apply_many_matches_apply_int(self):
        """Test the vectorised and the wide path against single evaluation."""
        for width in (8, 64):
            c = random_circuit(width, 30, rng_seed=width)
            xs = random_inputs(width, 20, np.random.default_rng(1))
            assert c.apply_many(xs) == [c.apply_int(x) for x in xs]


if __name__ == '__main__':
    pytest.main([__file__])
