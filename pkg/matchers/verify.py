"""
Witness verification: one round of equivalence checking.
"""
import logging
from typing import Optional

import numpy as np

from utils.circuit import Circuit, random_inputs
from utils.config import LIMITS, MATCH_DEFAULTS
from utils.errors import WidthLimitError, WitnessShapeError
from .types import MatchWitness, apply_witness

VERIFY_MODES = ('exhaustive', 'sampled')


def verify_witness(c1: Circuit, c2: Circuit, w: MatchWitness, mode: str = 'exhaustive',
                   samples: Optional[int] = None, seed: Optional[int] = None) -> bool:
    """
    Check that T_Y . C2 . T_X agrees with C1.

    Args:
        c1: First circuit
        c2: Second circuit
        w: Witness to check
        mode: 'exhaustive' compares all 2^n inputs; 'sampled' compares
            `samples` random inputs drawn from `seed`
        samples: Number of sampled inputs
        seed: Seed for sampled mode

    Returns:
        True if the composed circuit matches C1 on every checked input

    Raises:
        WitnessShapeError: If the witness width differs from the circuits
    """
    if mode not in VERIFY_MODES:
        logging.error("Unknown verification mode: %s", mode)
        raise ValueError(f"Unknown verification mode: {mode}. Available modes: {list(VERIFY_MODES)}")
    if c1.width != c2.width or (w.width is not None and w.width != c1.width):
        raise WitnessShapeError(
            f"Witness width {w.width} does not fit circuits of widths {c1.width} and {c2.width}"
        )
    n = c1.width
    composed = apply_witness(c2, w)
    if mode == 'exhaustive':
        if n > LIMITS['truth_table_width']:
            raise WidthLimitError(f"Exhaustive verification is limited to width {LIMITS['truth_table_width']}")
        xs = np.arange(1 << n, dtype=np.int64)
        ok = bool(np.array_equal(c1.apply_array(xs), composed.apply_array(xs)))
        checked = xs.size
    else:
        samples = MATCH_DEFAULTS['verify_samples'] if samples is None else samples
        rng = np.random.default_rng(MATCH_DEFAULTS['seed'] if seed is None else seed)
        inputs = random_inputs(n, samples, rng)
        ok = c1.apply_many(inputs) == composed.apply_many(inputs)
        checked = len(inputs)
    logging.debug("Verified %s witness (%s, %d inputs): %s", w.equiv.label, mode, checked, ok)
    return ok
