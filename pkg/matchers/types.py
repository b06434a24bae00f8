"""
Equivalence types, witnesses and matcher configuration.

Composition convention: C1 = T_Y . C2 . T_X, where each side transform
T(nu, pi) negates first and permutes second (C_pi C_nu as a matrix product).
"""
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any, Dict, List, Optional

import numpy as np

from utils.circuit import (
    Circuit,
    NegationMap,
    PermutationMap,
    compose,
    identity_circuit,
    neg_circuit,
    perm_circuit,
)
from utils.config import FAILURE_BUDGETS, MATCH_DEFAULTS
from utils.errors import WitnessShapeError


class Side(Enum):
    I = 'I'
    N = 'N'
    P = 'P'
    NP = 'NP'

    @property
    def negates(self) -> bool:
        return self in (Side.N, Side.NP)

    @property
    def permutes(self) -> bool:
        return self in (Side.P, Side.NP)

    def covers(self, other: 'Side') -> bool:
        """True when every transform of `other` is also a transform of self."""
        return (self.negates or not other.negates) and (self.permutes or not other.permutes)


@dataclass(frozen=True)
class EquivType:
    input_side: Side
    output_side: Side

    @classmethod
    def parse(cls, label: str) -> 'EquivType':
        """Parse an 'X-Y' label such as 'NP-I'."""
        parts = label.strip().upper().split('-')
        choices = [e.label for e in cls.all()]
        if len(parts) != 2 or any(p not in Side.__members__ for p in parts):
            logging.error("Unknown equivalence: %s", label)
            raise ValueError(f"Unknown equivalence: {label}. Available types: {choices}")
        return cls(Side[parts[0]], Side[parts[1]])

    @classmethod
    def all(cls) -> List['EquivType']:
        return [cls(x, y) for x in Side for y in Side]

    @property
    def label(self) -> str:
        return f"{self.input_side.value}-{self.output_side.value}"

    def __str__(self) -> str:
        return self.label


def dominates(a: EquivType, b: EquivType) -> bool:
    """Whether matching `a` subsumes matching `b` (side-wise I <= N <= NP, I <= P <= NP)."""
    return a.input_side.covers(b.input_side) and a.output_side.covers(b.output_side)


TRACTABLE = frozenset(
    EquivType.parse(label)
    for label in ('I-I', 'I-N', 'I-P', 'I-NP', 'P-I', 'P-N', 'N-P', 'N-I', 'NP-I')
)


def is_tractable(equiv: EquivType) -> bool:
    return equiv in TRACTABLE


def _maps_to_list(value):
    return None if value is None else list(value.flags if isinstance(value, NegationMap) else value.mapping)


@dataclass(frozen=True)
class MatchWitness:
    """
    Negation and permutation maps realizing an equivalence.

    Exactly the components demanded by `equiv` are present: nu_x iff the
    input side negates, pi_x iff it permutes, and likewise on the output side.
    """
    equiv: EquivType
    nu_x: Optional[NegationMap] = None
    pi_x: Optional[PermutationMap] = None
    nu_y: Optional[NegationMap] = None
    pi_y: Optional[PermutationMap] = None

    def __post_init__(self):
        expected = {
            'nu_x': self.equiv.input_side.negates,
            'pi_x': self.equiv.input_side.permutes,
            'nu_y': self.equiv.output_side.negates,
            'pi_y': self.equiv.output_side.permutes,
        }
        for name, needed in expected.items():
            present = getattr(self, name) is not None
            if present != needed:
                state = 'missing' if needed else 'unexpected'
                raise WitnessShapeError(f"{self.equiv.label} witness has {state} component {name}")
        widths = {m.width for m in (self.nu_x, self.pi_x, self.nu_y, self.pi_y) if m is not None}
        if len(widths) > 1:
            raise WitnessShapeError(f"Witness components disagree on width: {sorted(widths)}")

    @property
    def width(self) -> Optional[int]:
        for m in (self.nu_x, self.pi_x, self.nu_y, self.pi_y):
            if m is not None:
                return m.width
        return None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'equiv': self.equiv.label}
        for name in ('nu_x', 'nu_y', 'pi_x', 'pi_y'):
            value = _maps_to_list(getattr(self, name))
            if value is not None:
                data[name] = value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MatchWitness':
        if 'equiv' not in data:
            raise WitnessShapeError("Witness object has no 'equiv' field")
        kwargs = {}
        for name, build in (('nu_x', NegationMap), ('nu_y', NegationMap),
                            ('pi_x', PermutationMap), ('pi_y', PermutationMap)):
            if data.get(name) is not None:
                kwargs[name] = build(tuple(data[name]))
        return cls(EquivType.parse(data['equiv']), **kwargs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> 'MatchWitness':
        return cls.from_dict(json.loads(text))


@dataclass
class MatchConfig:
    """
    Per-run settings of the randomized and quantum matchers.

    Attributes:
        epsilon: Target failure probability, strictly between 0 and 1
        seed: Seed of the matcher's random stream
        rounds: Fixes k instead of deriving it from epsilon
        failure_budget: 'per-decision' spends epsilon on every decision;
            'union-bound' splits it over all decisions of a run
    """
    epsilon: float = MATCH_DEFAULTS['epsilon']
    seed: Optional[int] = MATCH_DEFAULTS['seed']
    rounds: Optional[int] = None
    failure_budget: str = MATCH_DEFAULTS['failure_budget']
    _rng: Optional[np.random.Generator] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            logging.error("Invalid epsilon: %s", self.epsilon)
            raise ValueError(f"epsilon must lie strictly between 0 and 1, got {self.epsilon}")
        if self.failure_budget not in FAILURE_BUDGETS:
            logging.error("Unknown failure budget: %s", self.failure_budget)
            raise ValueError(f"Unknown failure budget: {self.failure_budget}. Available budgets: {list(FAILURE_BUDGETS)}")
        if self.rounds is not None and self.rounds < 1:
            raise ValueError(f"rounds must be positive, got {self.rounds}")

    def rng(self) -> np.random.Generator:
        """The run's random stream, created on first use."""
        if self._rng is None:
            self._rng = np.random.default_rng(self.seed)
        return self._rng

    def sequence_rounds(self, n: int) -> int:
        """k random patterns so n output sequences are pairwise distinct with probability >= 1 - epsilon."""
        if self.rounds is not None:
            return self.rounds
        if n < 2:
            return 1
        return max(1, math.ceil(math.log2(n * (n - 1) / self.epsilon)))

    def swap_rounds(self, decisions: int = 1) -> int:
        """k swap tests per decision so that a missed difference has probability 2^-k."""
        if self.rounds is not None:
            return self.rounds
        budget = self.epsilon
        if self.failure_budget == 'union-bound':
            budget = self.epsilon / max(1, decisions)
        return max(1, math.ceil(math.log2(1 / budget)))


def side_circuit(width: int, nu: Optional[NegationMap] = None, pi: Optional[PermutationMap] = None) -> Circuit:
    """C_pi C_nu: negate, then permute."""
    parts = [identity_circuit(width)]
    if nu is not None:
        parts.append(neg_circuit(nu))
    if pi is not None:
        parts.append(perm_circuit(pi))
    return reduce(compose, parts)


def apply_witness(c2: Circuit, w: MatchWitness) -> Circuit:
    """Build T_Y . C2 . T_X, the circuit the witness claims equals C1."""
    return reduce(compose, [
        side_circuit(c2.width, w.nu_x, w.pi_x),
        c2,
        side_circuit(c2.width, w.nu_y, w.pi_y),
    ])
