"""
Algorithm selection by equivalence and inverse availability, and matcher runs.
"""
import logging
import time
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from matchers import (
    EquivType,
    MatchConfig,
    MatchWitness,
    brute_force_match,
    match_i_n,
    match_i_np_inv,
    match_i_np_rand,
    match_i_p_inv,
    match_i_p_rand,
    match_n_i_inv,
    match_n_i_quantum,
    match_n_p_inv,
    match_np_i_inv,
    match_np_i_quantum,
    match_p_i_inv,
    match_p_i_onehot,
    match_p_n,
    verify_witness,
)
from utils.circuit import Circuit, invert
from utils.config import MATCH_DEFAULTS, MATCH_MODES
from utils.errors import AmbiguityError, NoAlgorithmError, NoPartnerError, PromiseViolationError
from utils.oracle import BlackBox, Oracle
from .instances import Instance, verification_mode
from .report import BenchRecord

Runner = Callable[[BlackBox, BlackBox, MatchConfig], MatchWitness]


def _witness(label: str, **maps) -> MatchWitness:
    return MatchWitness(EquivType.parse(label), **maps)


def _run_i_np_inv(o1, o2, cfg):
    nu, pi = match_i_np_inv(o1, o2)
    return _witness('I-NP', nu_y=nu, pi_y=pi)


def _run_i_np_rand(o1, o2, cfg):
    nu, pi = match_i_np_rand(o1, o2, cfg)
    return _witness('I-NP', nu_y=nu, pi_y=pi)


def _run_np_i_inv(o1, o2, cfg):
    nu, pi = match_np_i_inv(o1, o2)
    return _witness('NP-I', nu_x=nu, pi_x=pi)


def _run_np_i_quantum(o1, o2, cfg):
    nu, pi = match_np_i_quantum(o1, o2, cfg)
    return _witness('NP-I', nu_x=nu, pi_x=pi)


def _run_p_n(o1, o2, cfg):
    pi, nu = match_p_n(o1, o2)
    return _witness('P-N', pi_x=pi, nu_y=nu)


def _run_n_p(o1, o2, cfg):
    nu, pi = match_n_p_inv(o1, o2)
    return _witness('N-P', nu_x=nu, pi_y=pi)


# Registered algorithms - single source of truth
RUNNERS: Dict[str, Runner] = {
    'identity': lambda o1, o2, cfg: _witness('I-I'),
    'i_n': lambda o1, o2, cfg: _witness('I-N', nu_y=match_i_n(o1, o2)),
    'i_p_inv': lambda o1, o2, cfg: _witness('I-P', pi_y=match_i_p_inv(o1, o2)),
    'i_p_rand': lambda o1, o2, cfg: _witness('I-P', pi_y=match_i_p_rand(o1, o2, cfg)),
    'i_np_inv': _run_i_np_inv,
    'i_np_rand': _run_i_np_rand,
    'p_i_inv': lambda o1, o2, cfg: _witness('P-I', pi_x=match_p_i_inv(o1, o2)),
    'p_i_onehot': lambda o1, o2, cfg: _witness('P-I', pi_x=match_p_i_onehot(o1, o2)),
    'p_n_inv': _run_p_n,
    'p_n_onehot': _run_p_n,
    'n_i_inv': lambda o1, o2, cfg: _witness('N-I', nu_x=match_n_i_inv(o1, o2)),
    'n_i_quantum': lambda o1, o2, cfg: _witness('N-I', nu_x=match_n_i_quantum(o1, o2, cfg)),
    'np_i_inv': _run_np_i_inv,
    'np_i_quantum': _run_np_i_quantum,
    'n_p_inv': _run_n_p,
}

# Rows of the complexity table: inverse availability, equivalences, paradigm, queries
COMPLEXITY_TABLE = [
    ('available', 'N-I*, I-N*', 'classical', 'O(1)'),
    ('available', 'I-P*, P-I*, N-P**, P-N*, I-NP*, NP-I*', 'classical', 'O(log n)'),
    ('not available', 'I-N', 'classical', 'O(1)'),
    ('not available', 'I-P, I-NP', 'classical', 'O(log n + log(1/eps))'),
    ('not available', 'P-I, P-N', 'classical', 'O(n)'),
    ('not available', 'N-I', 'quantum', 'O(n log(1/eps))'),
    ('not available', 'NP-I', 'quantum', 'O(n^2 log(1/eps))'),
]

# Cells that are solvable with one inverse: (with inverse, without inverse)
_ONE_INVERSE_CELLS = {
    'I-P': ('i_p_inv', 'i_p_rand'),
    'I-NP': ('i_np_inv', 'i_np_rand'),
    'P-I': ('p_i_inv', 'p_i_onehot'),
    'P-N': ('p_n_inv', 'p_n_onehot'),
    'N-I': ('n_i_inv', 'n_i_quantum'),
    'NP-I': ('np_i_inv', 'np_i_quantum'),
}
QUANTUM_ALGORITHMS = ('n_i_quantum', 'np_i_quantum')


def complexity_table() -> List[Dict[str, str]]:
    return [
        {'inverse': inverse, 'equivalences': equivalences, 'paradigm': paradigm, 'complexity': complexity}
        for inverse, equivalences, paradigm, complexity in COMPLEXITY_TABLE
    ]


def _no_algorithm(message: str) -> NoAlgorithmError:
    logging.error(message)
    return NoAlgorithmError(message)


def select_algorithm(equiv: EquivType, inv1: bool = False, inv2: bool = False, mode: str = 'auto') -> str:
    """
    Choose the algorithm for an equivalence given which inverses exist.

    Inverse-assisted algorithms win when an inverse exists, then
    inverse-free classical ones, then quantum ones. mode='quantum' prefers
    the quantum algorithm where one exists; mode='classical' never picks one;
    mode='brute' always picks the exhaustive reference matcher.

    Raises:
        ValueError: On an unknown mode
        NoAlgorithmError: For the intractable cells and N-P without both inverses
    """
    if mode not in MATCH_MODES:
        logging.error("Unknown match mode: %s", mode)
        raise ValueError(f"Unknown match mode: {mode}. Available modes: {list(MATCH_MODES)}")
    if mode == 'brute':
        return 'brute'
    label = equiv.label
    if label == 'I-I':
        return 'identity'
    if label == 'I-N':
        return 'i_n'
    if label == 'N-P':
        if inv1 and inv2:
            return 'n_p_inv'
        raise _no_algorithm("N-P matching needs both inverses; use --mode brute for small widths")
    if label not in _ONE_INVERSE_CELLS:
        raise _no_algorithm(f"{label} is intractable; use --mode brute for small widths")

    with_inverse, without_inverse = _ONE_INVERSE_CELLS[label]
    if without_inverse in QUANTUM_ALGORITHMS:
        if mode == 'quantum':
            return without_inverse
        if inv1 or inv2:
            return with_inverse
        if mode == 'classical':
            raise _no_algorithm(f"{label} without inverses has only a quantum algorithm")
        return without_inverse
    return with_inverse if (inv1 or inv2) else without_inverse


def _match_with_retries(name: str, o1: BlackBox, o2: BlackBox,
                        cfg: MatchConfig, retries: int) -> Tuple[MatchWitness, int]:
    """
    Run a registered algorithm, drawing a fresh seed after each AmbiguityError.

    NoPartnerError is retried the same way and re-raised once the retries are
    used up.
    """
    seeds = np.random.default_rng(cfg.seed)
    attempt_cfg = cfg
    attempt = 1
    while True:
        try:
            return RUNNERS[name](o1, o2, attempt_cfg), attempt
        except (AmbiguityError, NoPartnerError) as e:
            if attempt > retries:
                raise
            logging.warning("Attempt %d of %s failed (%s); retrying with a fresh seed", attempt, name, e)
            attempt_cfg = MatchConfig(cfg.epsilon, int(seeds.integers(1 << 31)), cfg.rounds, cfg.failure_budget)
            attempt += 1


def _fill_counts(record: BenchRecord, o1: Oracle, o2: Oracle) -> None:
    for prefix, oracle in (('c1', o1), ('c2', o2)):
        for kind, value in oracle.counts().items():
            setattr(record, f"{prefix}_{kind}", value)


def run_match(instance: Instance, mode: str = 'auto', cfg: Optional[MatchConfig] = None,
              trial: int = 0, timed: bool = False,
              retries: int = MATCH_DEFAULTS['ambiguity_retries'],
              max_width: Optional[int] = None) -> Tuple[Optional[MatchWitness], BenchRecord]:
    """
    Match one instance and verify the result.

    Args:
        instance: Instance to match
        mode: 'auto', 'classical', 'quantum' or 'brute'
        cfg: Matcher configuration (defaults when omitted)
        trial: Trial id stored in the record
        timed: Record wall time
        retries: Fresh-seed retries after an AmbiguityError or NoPartnerError
        max_width: Width limit for mode='brute' (configured limit when omitted)

    Returns:
        (witness or None, BenchRecord); success means the witness verified

    Raises:
        NoAlgorithmError: If no algorithm covers the cell
    """
    cfg = MatchConfig() if cfg is None else cfg
    name = select_algorithm(instance.equiv, instance.inv1 is not None, instance.inv2 is not None, mode)
    logging.info("Matching %s (n=%d) with %s", instance.equiv.label, instance.n, name)
    o1, o2 = instance.oracles()
    record = BenchRecord(instance.equiv.label, instance.n, mode, name, trial)
    start = time.perf_counter()

    witness: Optional[MatchWitness] = None
    try:
        if name == 'brute':
            witness = brute_force_match(instance.c1, instance.c2, instance.equiv, max_width=max_width)
        else:
            witness, record.attempts = _match_with_retries(name, o1, o2, cfg, retries)
    except AmbiguityError:
        record.attempts = retries + 1
        logging.warning("%s stayed ambiguous after %d attempts", name, record.attempts)
    except PromiseViolationError as e:
        if isinstance(e, NoPartnerError):
            record.attempts = retries + 1
        logging.warning("%s reported a promise violation: %s", name, e)

    if timed:
        record.wall_time = time.perf_counter() - start
    _fill_counts(record, o1, o2)
    if witness is not None:
        mode_name = verification_mode(instance.n)
        record.success = verify_witness(instance.c1, instance.c2, witness, mode_name, seed=instance.seed)
    return witness, record


def decide_equivalence(c1: Circuit, c2: Circuit, equiv: EquivType, inverses: Tuple[bool, bool] = (False, False),
                       mode: str = 'auto', cfg: Optional[MatchConfig] = None) -> Tuple[bool, Optional[MatchWitness]]:
    """
    Decide an equivalence without a promise: match, then verify once.

    Promise-violation signals and unresolved ambiguity count as "not equivalent".
    """
    instance = Instance(
        equiv, c1, c2, planted=None, seed=None,
        inv1=invert(c1) if inverses[0] else None,
        inv2=invert(c2) if inverses[1] else None,
    )
    witness, record = run_match(instance, mode, cfg)
    return record.success, witness if record.success else None
