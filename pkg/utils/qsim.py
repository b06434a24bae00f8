"""
Exact simulation of signed uniform superpositions under permutation circuits.

States prepared from |0>, |1>, |+> and |-> wires have equal-magnitude
amplitudes over a subcube of basis patterns with +1/-1 signs. A reversible
circuit only permutes basis patterns, so that form is kept exactly: the
state is a sorted support array plus a matching sign array.
"""
import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .circuit import BitVec, Circuit
from .config import LIMITS
from .errors import StateLimitError, WidthMismatchError


class WireInit(Enum):
    ZERO = '0'
    ONE = '1'
    PLUS = '+'
    MINUS = '-'


class SparseState:
    """
    Uniform-magnitude state sum_x sign(x)/sqrt(|S|) |x> over a support S.

    Attributes:
        width: Number of qubits
        support: Sorted int64 array of basis patterns
        signs: int8 array of +1/-1 aligned with support
    """

    def __init__(self, width: int, support: np.ndarray, signs: np.ndarray):
        support = np.asarray(support, dtype=np.int64)
        signs = np.asarray(signs, dtype=np.int8)
        if width < 1:
            raise ValueError(f"State width must be at least 1, got {width}")
        if support.size == 0:
            raise ValueError("State support must be non-empty")
        if support.shape != signs.shape:
            raise ValueError("Support and sign arrays differ in length")
        if support.size > LIMITS['max_state_support']:
            raise StateLimitError(f"Support of {support.size} exceeds limit {LIMITS['max_state_support']}")
        if not np.all(np.abs(signs) == 1):
            raise ValueError("Signs must be +1 or -1")
        order = np.argsort(support, kind='stable')
        support = support[order]
        if np.any(support[1:] == support[:-1]):
            raise ValueError("Support contains duplicate patterns")
        if support[0] < 0 or support[-1] >= (1 << width):
            raise ValueError(f"Support pattern outside {width}-qubit space")
        self.width = width
        self.support = support
        self.signs = signs[order]
        self.support.setflags(write=False)
        self.signs.setflags(write=False)

    def __len__(self) -> int:
        return int(self.support.size)

    def amplitude(self, x: int) -> float:
        i = np.searchsorted(self.support, x)
        if i < len(self) and self.support[i] == x:
            return float(self.signs[i]) / math.sqrt(len(self))
        return 0.0

    def __repr__(self) -> str:
        return f"SparseState(width={self.width}, support_size={len(self)})"


def _check_widths(s1: SparseState, s2: SparseState) -> None:
    if s1.width != s2.width:
        raise WidthMismatchError(f"State widths differ: {s1.width} vs {s2.width}")


def prepare(inits: Sequence[WireInit]) -> SparseState:
    """
    Build the product state described by one WireInit per wire.

    Args:
        inits: Initialization of wire 0, wire 1, ...

    Returns:
        State whose support is every pattern agreeing with the Zero/One
        wires; the sign of x is (-1) to the number of Minus wires reading 1

    Raises:
        ValueError: If inits is empty
        StateLimitError: If the free wires span more than the support limit
    """
    if not inits:
        raise ValueError("prepare needs at least one wire")
    width = len(inits)
    base = sum(1 << i for i, init in enumerate(inits) if init is WireInit.ONE)
    free = [i for i, init in enumerate(inits) if init in (WireInit.PLUS, WireInit.MINUS)]
    minus = [i for i, init in enumerate(inits) if init is WireInit.MINUS]
    if (1 << len(free)) > LIMITS['max_state_support']:
        raise StateLimitError(f"{len(free)} superposed wires exceed the support limit")

    index = np.arange(1 << len(free), dtype=np.int64)
    support = np.full_like(index, base)
    for t, wire in enumerate(free):
        support |= ((index >> t) & 1) << wire
    parity = np.zeros_like(index)
    for wire in minus:
        parity ^= (support >> wire) & 1
    signs = (1 - 2 * parity).astype(np.int8)
    return SparseState(width, support, signs)


def basis_state(width: int, x: Union[BitVec, int]) -> SparseState:
    value = x.value if isinstance(x, BitVec) else int(x)
    return SparseState(width, np.array([value]), np.array([1]))


def apply_circuit(c: Circuit, s: SparseState) -> SparseState:
    """Permute the support through `c`; signs travel with their patterns."""
    if c.width != s.width:
        raise WidthMismatchError(f"Circuit width {c.width} does not match state width {s.width}")
    return SparseState(s.width, c.apply_array(s.support), s.signs)


def _overlap(s1: SparseState, s2: SparseState) -> int:
    _, i1, i2 = np.intersect1d(s1.support, s2.support, assume_unique=True, return_indices=True)
    return int(np.sum(s1.signs[i1].astype(np.int64) * s2.signs[i2]))


def inner_product(s1: SparseState, s2: SparseState) -> float:
    _check_widths(s1, s2)
    return _overlap(s1, s2) / math.sqrt(len(s1) * len(s2))


def inner_product_squared(s1: SparseState, s2: SparseState) -> Fraction:
    """|<s1|s2>|^2 as an exact rational."""
    _check_widths(s1, s2)
    overlap = _overlap(s1, s2)
    return Fraction(overlap * overlap, len(s1) * len(s2))


def same_up_to_global_sign(s1: SparseState, s2: SparseState) -> bool:
    return inner_product_squared(s1, s2) == 1


def swap_test_probability(s1: SparseState, s2: SparseState) -> Fraction:
    """Probability that the swap test measures 1."""
    return Fraction(1, 2) - inner_product_squared(s1, s2) / 2


def swap_test(s1: SparseState, s2: SparseState, rng: np.random.Generator) -> int:
    """Sample one swap-test outcome: 1 with probability 1/2 - 1/2 |<s1|s2>|^2."""
    p_one = swap_test_probability(s1, s2)
    outcome = int(rng.random() < float(p_one))
    logging.debug("Swap test: P(1)=%s, outcome=%d", p_one, outcome)
    return outcome
