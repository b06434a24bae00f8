"""
Reversible circuit representation built from multiple-controlled Toffoli gates.

Wires are indexed 0..n-1. Wire 0 is the top wire of a drawing and also the
least significant bit of the integer encoding of a pattern. Every object in
this module is immutable once constructed.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import LIMITS
from .errors import WidthLimitError, WidthMismatchError


def _check_width(expected: int, actual: int, what: str = "width") -> None:
    if expected != actual:
        raise WidthMismatchError(f"{what} mismatch: expected {expected}, got {actual}")


@dataclass(frozen=True)
class BitVec:
    """Fixed-width bit pattern; bit i is the value carried by wire i."""
    width: int
    value: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"BitVec width must be at least 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"Value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> 'BitVec':
        value = 0
        for i, bit in enumerate(bits):
            if bit:
                value |= 1 << i
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, width: int) -> 'BitVec':
        return cls(width, 0)

    @classmethod
    def one_hot(cls, width: int, index: int) -> 'BitVec':
        if not 0 <= index < width:
            raise IndexError(f"Wire {index} out of range for width {width}")
        return cls(width, 1 << index)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.width:
            raise IndexError(f"Wire {index} out of range for width {self.width}")
        return (self.value >> index) & 1

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def __xor__(self, other: 'BitVec') -> 'BitVec':
        _check_width(self.width, other.width)
        return BitVec(self.width, self.value ^ other.value)

    def __str__(self) -> str:
        return ''.join(str(bit) for bit in self.bits)


class Polarity(Enum):
    POSITIVE = '+'
    NEGATIVE = '-'


@dataclass(frozen=True)
class ControlLine:
    wire: int
    polarity: Polarity = Polarity.POSITIVE

    @property
    def positive(self) -> bool:
        return self.polarity is Polarity.POSITIVE


@dataclass(frozen=True)
class MctGate:
    """Flips `target` iff every positive control reads 1 and every negative control reads 0."""
    target: int
    controls: Tuple[ControlLine, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'controls', tuple(self.controls))
        wires = [control.wire for control in self.controls]
        if len(set(wires)) != len(wires):
            raise ValueError(f"Duplicate control wire in {wires}")
        if self.target in wires:
            raise ValueError(f"Target wire {self.target} is also a control")
        if self.target < 0 or any(wire < 0 for wire in wires):
            raise ValueError("Wire indices must be non-negative")

    @property
    def control_mask(self) -> int:
        mask = 0
        for control in self.controls:
            mask |= 1 << control.wire
        return mask

    @property
    def control_pattern(self) -> int:
        pattern = 0
        for control in self.controls:
            if control.positive:
                pattern |= 1 << control.wire
        return pattern

    @property
    def max_wire(self) -> int:
        return max([self.target] + [control.wire for control in self.controls])

    def apply_int(self, x: int) -> int:
        if x & self.control_mask == self.control_pattern:
            return x ^ (1 << self.target)
        return x

    def apply_array(self, xs: np.ndarray) -> np.ndarray:
        fire = (xs & self.control_mask) == self.control_pattern
        return xs ^ (fire.astype(np.int64) << self.target)


def mct(target: int, positive: Sequence[int] = (), negative: Sequence[int] = ()) -> MctGate:
    """Shorthand for an MCT gate from lists of positive and negative control wires."""
    controls = [ControlLine(wire, Polarity.POSITIVE) for wire in positive]
    controls += [ControlLine(wire, Polarity.NEGATIVE) for wire in negative]
    return MctGate(target, tuple(controls))


@dataclass(frozen=True)
class PermutationMap:
    """pi(i) = j moves the value of wire i onto wire j."""
    mapping: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'mapping', tuple(int(j) for j in self.mapping))
        if not self.mapping:
            raise ValueError("PermutationMap must cover at least one wire")
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"Not a permutation of 0..{len(self.mapping) - 1}: {list(self.mapping)}")

    @property
    def width(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    @classmethod
    def identity(cls, width: int) -> 'PermutationMap':
        return cls(tuple(range(width)))

    @classmethod
    def transposition(cls, width: int, i: int, j: int) -> 'PermutationMap':
        mapping = list(range(width))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(tuple(mapping))

    @classmethod
    def cyclic_shift(cls, width: int, k: int = 1) -> 'PermutationMap':
        return cls(tuple((i + k) % width for i in range(width)))

    @classmethod
    def random(cls, width: int, rng: np.random.Generator) -> 'PermutationMap':
        return cls(tuple(int(j) for j in rng.permutation(width)))

    def inverse(self) -> 'PermutationMap':
        inverse = [0] * self.width
        for i, j in enumerate(self.mapping):
            inverse[j] = i
        return PermutationMap(tuple(inverse))

    def is_identity(self) -> bool:
        return self.mapping == tuple(range(self.width))

    def apply_int(self, x: int) -> int:
        out = 0
        for i, j in enumerate(self.mapping):
            if (x >> i) & 1:
                out |= 1 << j
        return out

    def apply_array(self, xs: np.ndarray) -> np.ndarray:
        out = np.zeros_like(xs)
        for i, j in enumerate(self.mapping):
            out |= ((xs >> i) & 1) << j
        return out


@dataclass(frozen=True)
class NegationMap:
    """flags[i] = 1 negates wire i."""
    flags: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'flags', tuple(int(f) for f in self.flags))
        if not self.flags:
            raise ValueError("NegationMap must cover at least one wire")
        if any(f not in (0, 1) for f in self.flags):
            raise ValueError(f"Negation flags must be 0 or 1: {list(self.flags)}")

    @property
    def width(self) -> int:
        return len(self.flags)

    def __getitem__(self, i: int) -> int:
        return self.flags[i]

    @property
    def mask(self) -> int:
        return sum(1 << i for i, f in enumerate(self.flags) if f)

    @classmethod
    def zeros(cls, width: int) -> 'NegationMap':
        return cls((0,) * width)

    @classmethod
    def from_mask(cls, width: int, mask: int) -> 'NegationMap':
        return cls(tuple((mask >> i) & 1 for i in range(width)))

    @classmethod
    def random(cls, width: int, rng: np.random.Generator) -> 'NegationMap':
        return cls(tuple(int(f) for f in rng.integers(0, 2, size=width)))

    def apply_int(self, x: int) -> int:
        return x ^ self.mask


@dataclass(frozen=True)
class Rewire:
    """Primitive wire permutation element."""
    perm: PermutationMap

    def apply_int(self, x: int) -> int:
        return self.perm.apply_int(x)

    def apply_array(self, xs: np.ndarray) -> np.ndarray:
        return self.perm.apply_array(xs)


CircuitElement = Union[MctGate, Rewire]


@dataclass(frozen=True)
class Circuit:
    """Ordered list of elements applied left to right on `width` wires."""
    width: int
    elements: Tuple[CircuitElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(self.elements))
        if self.width < 1:
            raise ValueError(f"Circuit width must be at least 1, got {self.width}")
        for element in self.elements:
            if isinstance(element, MctGate):
                if element.max_wire >= self.width:
                    raise ValueError(f"Gate {element} uses a wire outside width {self.width}")
            elif isinstance(element, Rewire):
                _check_width(self.width, element.perm.width, "Rewire width")
            else:
                raise TypeError(f"Unsupported circuit element: {element!r}")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def gate_count(self) -> int:
        return sum(1 for element in self.elements if isinstance(element, MctGate))

    def apply_int(self, x: int) -> int:
        for element in self.elements:
            x = element.apply_int(x)
        return x

    def apply_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        for element in self.elements:
            xs = element.apply_array(xs)
        return xs

    def apply_many(self, xs: Sequence[int]) -> List[int]:
        """Evaluate a batch of patterns; vectorised while they fit an int64 lane."""
        if self.width <= LIMITS['array_width']:
            return [int(y) for y in self.apply_array(np.asarray(xs, dtype=np.int64))]
        return [self.apply_int(x) for x in xs]


def random_inputs(width: int, count: int, rng: np.random.Generator) -> List[int]:
    """`count` uniform patterns drawn bit by bit, so any width works."""
    bits = rng.integers(0, 2, size=(count, width))
    return [BitVec.from_bits(row).value for row in bits]


def identity_circuit(width: int) -> Circuit:
    return Circuit(width, ())


def evaluate(c: Circuit, x: BitVec) -> BitVec:
    """Return f(x) for the function f implemented by `c`."""
    _check_width(c.width, x.width)
    return BitVec(c.width, c.apply_int(x.value))


def invert(c: Circuit) -> Circuit:
    """MCT gates are self-inverse; a Rewire is undone by the inverse permutation."""
    elements = []
    for element in reversed(c.elements):
        if isinstance(element, Rewire):
            elements.append(Rewire(element.perm.inverse()))
        else:
            elements.append(element)
    return Circuit(c.width, tuple(elements))


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Circuit `a` followed by circuit `b` (the matrix product B A)."""
    _check_width(a.width, b.width)
    return Circuit(a.width, a.elements + b.elements)


def neg_circuit(nu: NegationMap) -> Circuit:
    return Circuit(nu.width, tuple(mct(i) for i, flag in enumerate(nu.flags) if flag))


def perm_circuit(pi: PermutationMap) -> Circuit:
    return Circuit(pi.width, (Rewire(pi),))


def commute_neg_perm(nu: NegationMap, pi: PermutationMap) -> NegationMap:
    """
    Return nu' such that applying nu then pi equals applying pi then nu'.

    nu'(j) = nu(pi^-1(j)).
    """
    _check_width(nu.width, pi.width)
    inverse = pi.inverse()
    return NegationMap(tuple(nu[inverse(j)] for j in range(nu.width)))


def uncommute_neg_perm(nu_after: NegationMap, pi: PermutationMap) -> NegationMap:
    """Inverse of commute_neg_perm: nu(i) = nu'(pi(i))."""
    _check_width(nu_after.width, pi.width)
    return NegationMap(tuple(nu_after[pi(i)] for i in range(pi.width)))


def truth_table_array(c: Circuit, limit: Optional[int] = None) -> np.ndarray:
    """Outputs of `c` for inputs 0..2^n-1 as an int64 array."""
    limit = LIMITS['truth_table_width'] if limit is None else limit
    if c.width > limit:
        raise WidthLimitError(f"Truth table of width {c.width} exceeds limit {limit}")
    return c.apply_array(np.arange(1 << c.width, dtype=np.int64))


def truth_table(c: Circuit, limit: Optional[int] = None) -> List[BitVec]:
    return [BitVec(c.width, int(v)) for v in truth_table_array(c, limit)]


def is_bijection(table: Union[Sequence[BitVec], np.ndarray]) -> bool:
    values = np.asarray([t.value if isinstance(t, BitVec) else int(t) for t in table], dtype=np.int64)
    return bool(np.array_equal(np.sort(values), np.arange(len(values), dtype=np.int64)))


def random_circuit(n: int, gate_count: int, rng_seed: int, max_fan_in: Optional[int] = None) -> Circuit:
    """
    Generate a random MCT circuit.

    Args:
        n: Number of wires
        gate_count: Number of gates
        rng_seed: Seed; equal seeds give equal circuits
        max_fan_in: Cap on controls per gate (defaults to the configured fan-in)

    Returns:
        Circuit with uniformly chosen targets, control counts in
        [0, min(n-1, max_fan_in)] and random polarities
    """
    if n < 1:
        raise ValueError(f"Circuit width must be at least 1, got {n}")
    max_fan_in = LIMITS['random_fan_in'] if max_fan_in is None else max_fan_in
    rng = np.random.default_rng(rng_seed)
    fan_in = min(n - 1, max_fan_in)
    gates = []
    for _ in range(gate_count):
        target = int(rng.integers(n))
        k = int(rng.integers(0, fan_in + 1))
        others = [wire for wire in range(n) if wire != target]
        wires = rng.choice(others, size=k, replace=False) if k else []
        polarities = rng.integers(0, 2, size=k)
        controls = tuple(
            ControlLine(int(wire), Polarity.POSITIVE if pol else Polarity.NEGATIVE)
            for wire, pol in zip(wires, polarities)
        )
        gates.append(MctGate(target, controls))
    logging.debug("Generated random circuit: n=%d, gates=%d, seed=%s", n, gate_count, rng_seed)
    return Circuit(n, tuple(gates))
