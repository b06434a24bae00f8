"""
Monte-Carlo benchmarks: matcher failure rates, the classical collision
search for N-I, and the analytic probabilities they are compared against.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Tuple

import numpy as np

from matchers.types import EquivType, MatchConfig
from utils.circuit import BitVec, NegationMap, compose, neg_circuit, random_circuit
from utils.config import MATCH_DEFAULTS
from utils.oracle import Oracle
from .dispatch import run_match
from .instances import gen_instance
from .report import BenchRecord


def distinct_sequences_probability(n: int, k: int) -> Fraction:
    """Probability that n uniformly random k-bit sequences are pairwise distinct."""
    space = 1 << k
    p = Fraction(1)
    for i in range(n):
        p *= Fraction(max(space - i, 0), space)
    return p


def collision_free_probability(space: int, k: int) -> Fraction:
    """Probability that k queries into a space of `space` patterns see no repeat."""
    p = Fraction(1)
    for i in range(k):
        p *= Fraction(max(space - i, 0), space)
    return p


def swap_miss_probability(k: int) -> Fraction:
    """Chance that k swap tests on orthogonal states all return 0."""
    return Fraction(1, 1 << k)


def trial_seeds(seed: int, trials: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials)]


def _run_trial(args: Tuple) -> BenchRecord:
    equiv_label, n, gate_count, trial, seed, mode, with_inverses, epsilon, budget, timed = args
    instance = gen_instance(EquivType.parse(equiv_label), n, gate_count, seed, with_inverses)
    cfg = MatchConfig(epsilon=epsilon, seed=seed + 1, failure_budget=budget)
    _, record = run_match(instance, mode, cfg, trial=trial, timed=timed)
    return record


def run_bench(equiv: EquivType, n: int, trials: int, gate_count: int = MATCH_DEFAULTS['gate_count'],
              seed: int = MATCH_DEFAULTS['seed'], mode: str = 'auto',
              with_inverses: Tuple[bool, bool] = (False, False),
              epsilon: float = MATCH_DEFAULTS['epsilon'],
              failure_budget: str = MATCH_DEFAULTS['failure_budget'],
              workers: int = 1, timed: bool = False) -> List[BenchRecord]:
    """
    Match `trials` fresh planted instances and record each run.

    Every trial derives its own seed from `seed`, so results do not depend
    on `workers`.

    Returns:
        BenchRecords ordered by trial id
    """
    jobs = [
        (equiv.label, n, gate_count, trial, s, mode, tuple(with_inverses), epsilon, failure_budget, timed)
        for trial, s in enumerate(trial_seeds(seed, trials))
    ]
    logging.info("Bench %s: n=%d, trials=%d, mode=%s, workers=%d", equiv.label, n, trials, mode, workers)
    if workers > 1:
        with Pool(processes=workers) as pool:
            records = pool.map(_run_trial, jobs)
    else:
        records = [_run_trial(job) for job in jobs]
    return sorted(records, key=lambda r: r.trial)


@dataclass
class CollisionStats:
    n: int
    trials: int
    queries: List[int] = field(default_factory=list)
    recovered: int = 0

    @property
    def median(self) -> float:
        return float(np.median(self.queries)) if self.queries else 0.0

    @property
    def mean(self) -> float:
        return float(np.mean(self.queries)) if self.queries else 0.0

    def to_dict(self) -> Dict[str, float]:
        return {
            'n': self.n,
            'trials': self.trials,
            'median_queries': self.median,
            'mean_queries': self.mean,
            'max_queries': max(self.queries, default=0),
            'recovered': self.recovered,
        }


def collision_search(o1: Oracle, o2: Oracle, rng: np.random.Generator) -> Tuple[NegationMap, int]:
    """
    Classical N-I search without inverses.

    C1 and C2 are queried on fresh random inputs until an output of one
    equals an output of the other; then nu = x1 XOR x2.

    Returns:
        (nu, number of C2 queries spent)
    """
    n = o1.width
    order1 = rng.permutation(1 << n)
    order2 = rng.permutation(1 << n)
    seen1: Dict[int, int] = {}
    seen2: Dict[int, int] = {}
    for step in range(1 << n):
        x1, x2 = int(order1[step]), int(order2[step])
        y1 = o1.query(BitVec(n, x1)).value
        y2 = o2.query(BitVec(n, x2)).value
        seen1[y1] = x1
        seen2[y2] = x2
        if y1 in seen2:
            return NegationMap.from_mask(n, x1 ^ seen2[y1]), step + 1
        if y2 in seen1:
            return NegationMap.from_mask(n, seen1[y2] ^ x2), step + 1
    raise RuntimeError("No collision after exhausting the input space")


def collision_bench(n: int, trials: int, seed: int = MATCH_DEFAULTS['seed'],
                    gate_count: int = MATCH_DEFAULTS['gate_count']) -> CollisionStats:
    """Run collision_search on `trials` planted N-I instances of width n."""
    stats = CollisionStats(n, trials)
    for s in trial_seeds(seed, trials):
        rng = np.random.default_rng(s)
        c2 = random_circuit(n, gate_count, int(rng.integers(1 << 31)))
        nu = NegationMap.random(n, rng)
        c1 = compose(neg_circuit(nu), c2)
        nu_found, queries = collision_search(Oracle.from_circuit(c1), Oracle.from_circuit(c2), rng)
        stats.queries.append(queries)
        stats.recovered += int(nu_found == nu)
    logging.info("Collision bench n=%d: median=%.1f, mean=%.1f", n, stats.median, stats.mean)
    return stats
