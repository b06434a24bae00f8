"""
Black-box access to reversible circuits.

Matchers only see the query methods defined here; every call is counted.
"""
import logging
import threading
from typing import Dict, Optional

import numpy as np

from .circuit import (
    BitVec,
    Circuit,
    NegationMap,
    PermutationMap,
    invert,
    neg_circuit,
    perm_circuit,
    random_inputs,
)
from .config import LIMITS
from .errors import InvalidInverseError, InverseUnavailableError, WidthMismatchError
from .qsim import SparseState, apply_circuit


class BlackBox:
    """Query interface shared by oracles and the virtual views built on them."""

    @property
    def width(self) -> int:
        raise NotImplementedError

    @property
    def has_inverse(self) -> bool:
        raise NotImplementedError

    def query(self, x: BitVec) -> BitVec:
        raise NotImplementedError

    def query_inverse(self, x: BitVec) -> BitVec:
        raise NotImplementedError

    def query_state(self, s: SparseState) -> SparseState:
        raise NotImplementedError

    def query_state_inverse(self, s: SparseState) -> SparseState:
        raise NotImplementedError

    def counts(self) -> Dict[str, int]:
        raise NotImplementedError

    def _check_width(self, width: int) -> None:
        if width != self.width:
            message = f"Query width {width} does not match oracle width {self.width}"
            logging.error(message)
            raise WidthMismatchError(message)


def check_inverse(forward: Circuit, inverse: Circuit, samples: Optional[int] = None, seed: int = 0) -> None:
    """
    Raise InvalidInverseError unless `inverse` undoes `forward`.

    Exhaustive up to the configured width, sampled above it.
    """
    if forward.width != inverse.width:
        raise InvalidInverseError(f"Inverse width {inverse.width} differs from forward width {forward.width}")
    if forward.width <= LIMITS['exhaustive_check_width']:
        xs = list(range(1 << forward.width))
    else:
        samples = LIMITS['inverse_check_samples'] if samples is None else samples
        xs = random_inputs(forward.width, samples, np.random.default_rng(seed))
    restored = inverse.apply_many(forward.apply_many(xs))
    mismatched = [x for x, back in zip(xs, restored) if back != x]
    if mismatched:
        message = f"Supplied inverse fails on input {mismatched[0]}"
        logging.error(message)
        raise InvalidInverseError(message)


class Oracle(BlackBox):
    """
    Counted black box around a forward circuit and an optional inverse.

    Counters only grow. Updates are guarded by a lock so concurrent queries
    never lose counts.
    """

    def __init__(self, forward: Circuit, inverse: Optional[Circuit] = None, validate: bool = True):
        if inverse is not None and validate:
            check_inverse(forward, inverse)
        self._forward = forward
        self._inverse = inverse
        self._lock = threading.Lock()
        self.classical_queries = 0
        self.inverse_queries = 0
        self.quantum_queries = 0

    @classmethod
    def from_circuit(cls, c: Circuit, with_inverse: bool = False) -> 'Oracle':
        return cls(c, invert(c) if with_inverse else None, validate=False)

    @property
    def width(self) -> int:
        return self._forward.width

    @property
    def has_inverse(self) -> bool:
        return self._inverse is not None

    def _require_inverse(self) -> Circuit:
        if self._inverse is None:
            raise InverseUnavailableError("This oracle has no inverse circuit")
        return self._inverse

    def query(self, x: BitVec) -> BitVec:
        self._check_width(x.width)
        with self._lock:
            self.classical_queries += 1
        return BitVec(self.width, self._forward.apply_int(x.value))

    def query_inverse(self, x: BitVec) -> BitVec:
        inverse = self._require_inverse()
        self._check_width(x.width)
        with self._lock:
            self.inverse_queries += 1
        return BitVec(self.width, inverse.apply_int(x.value))

    def query_state(self, s: SparseState) -> SparseState:
        self._check_width(s.width)
        with self._lock:
            self.quantum_queries += 1
        return apply_circuit(self._forward, s)

    def query_state_inverse(self, s: SparseState) -> SparseState:
        inverse = self._require_inverse()
        self._check_width(s.width)
        with self._lock:
            self.quantum_queries += 1
        return apply_circuit(inverse, s)

    def counts(self) -> Dict[str, int]:
        with self._lock:
            return {
                'classical': self.classical_queries,
                'inverse': self.inverse_queries,
                'quantum': self.quantum_queries,
            }

    @property
    def total_queries(self) -> int:
        return sum(self.counts().values())


class OracleView(BlackBox):
    """
    Virtual oracle computing post . base . pre without counting its own queries.

    `pre` permutes the input wires before the base circuit; `post` negates
    output wires after it.
    """

    def __init__(self, base: BlackBox, pre: Optional[PermutationMap] = None, post: Optional[NegationMap] = None):
        if pre is not None and pre.width != base.width:
            raise WidthMismatchError(f"Pre-permutation width {pre.width} differs from oracle width {base.width}")
        if post is not None and post.width != base.width:
            raise WidthMismatchError(f"Post-negation width {post.width} differs from oracle width {base.width}")
        self.base = base
        self.pre = pre
        self.post = post

    @property
    def width(self) -> int:
        return self.base.width

    @property
    def has_inverse(self) -> bool:
        return self.base.has_inverse

    def query(self, x: BitVec) -> BitVec:
        self._check_width(x.width)
        if self.pre is not None:
            x = BitVec(self.width, self.pre.apply_int(x.value))
        y = self.base.query(x)
        if self.post is not None:
            y = BitVec(self.width, self.post.apply_int(y.value))
        return y

    def query_inverse(self, y: BitVec) -> BitVec:
        self._check_width(y.width)
        if self.post is not None:
            y = BitVec(self.width, self.post.apply_int(y.value))
        x = self.base.query_inverse(y)
        if self.pre is not None:
            x = BitVec(self.width, self.pre.inverse().apply_int(x.value))
        return x

    def query_state(self, s: SparseState) -> SparseState:
        self._check_width(s.width)
        if self.pre is not None:
            s = apply_circuit(perm_circuit(self.pre), s)
        s = self.base.query_state(s)
        if self.post is not None:
            s = apply_circuit(neg_circuit(self.post), s)
        return s

    def query_state_inverse(self, s: SparseState) -> SparseState:
        self._check_width(s.width)
        if self.post is not None:
            s = apply_circuit(neg_circuit(self.post), s)
        s = self.base.query_state_inverse(s)
        if self.pre is not None:
            s = apply_circuit(perm_circuit(self.pre.inverse()), s)
        return s

    def counts(self) -> Dict[str, int]:
        return self.base.counts()


class InvertedOracle(BlackBox):
    """Presents the inverse of `base` as the forward query."""

    def __init__(self, base: BlackBox):
        if not base.has_inverse:
            raise InverseUnavailableError("Cannot invert an oracle without an inverse circuit")
        self.base = base

    @property
    def width(self) -> int:
        return self.base.width

    @property
    def has_inverse(self) -> bool:
        return True

    def query(self, x: BitVec) -> BitVec:
        return self.base.query_inverse(x)

    def query_inverse(self, x: BitVec) -> BitVec:
        return self.base.query(x)

    def query_state(self, s: SparseState) -> SparseState:
        return self.base.query_state_inverse(s)

    def query_state_inverse(self, s: SparseState) -> SparseState:
        return self.base.query_state(s)

    def counts(self) -> Dict[str, int]:
        return self.base.counts()
