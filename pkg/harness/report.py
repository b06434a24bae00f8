"""
Benchmark records and their CSV / summary emission.
"""
import logging
import math
from dataclasses import asdict, dataclass, fields
from typing import List, Optional

import pandas as pd


@dataclass
class BenchRecord:
    """One matcher run: which algorithm, how many queries, whether it succeeded."""
    equiv: str
    n: int
    mode: str
    algorithm: str
    trial: int
    c1_classical: int = 0
    c1_inverse: int = 0
    c1_quantum: int = 0
    c2_classical: int = 0
    c2_inverse: int = 0
    c2_quantum: int = 0
    attempts: int = 1
    success: bool = False
    wall_time: Optional[float] = None

    @property
    def total_queries(self) -> int:
        return (self.c1_classical + self.c1_inverse + self.c1_quantum
                + self.c2_classical + self.c2_inverse + self.c2_quantum)


COLUMNS = [f.name for f in fields(BenchRecord)]


def records_frame(records: List[BenchRecord]) -> pd.DataFrame:
    """One row per record, ordered by trial id, columns in field order."""
    frame = pd.DataFrame([asdict(r) for r in records], columns=COLUMNS)
    if not frame.empty:
        frame = frame.sort_values(['equiv', 'n', 'mode', 'trial'], kind='stable').reset_index(drop=True)
    return frame


def write_csv(records: List[BenchRecord], path: Optional[str] = None) -> str:
    """
    Render records as CSV; an empty list gives the header line only.

    Args:
        records: Bench records
        path: Also write the text here when given

    Returns:
        The CSV text
    """
    text = records_frame(records).to_csv(index=False, lineterminator='\n')
    if path is not None:
        try:
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
        except OSError as e:
            logging.error("Could not write report %s: %s", path, e)
            raise
        logging.info("Wrote %d records to %s", len(records), path)
    return text


def failure_bound(epsilon: float, trials: int) -> float:
    """epsilon plus three binomial standard deviations."""
    if trials <= 0:
        return 1.0
    return epsilon + 3 * math.sqrt(epsilon * (1 - epsilon) / trials)


def summarize(records: List[BenchRecord], epsilon: Optional[float] = None) -> pd.DataFrame:
    """
    Per (equiv, n, mode, algorithm): trials, success rate and query statistics.

    When epsilon is given, a `failure_bound` column holds epsilon + 3 sigma
    and `within_bound` says whether the observed failure rate respects it.
    """
    frame = records_frame(records)
    keys = ['equiv', 'n', 'mode', 'algorithm']
    if frame.empty:
        return pd.DataFrame(columns=keys + ['trials', 'success_rate', 'mean_queries', 'max_queries'])
    frame['queries'] = frame[[c for c in COLUMNS if c.startswith(('c1_', 'c2_'))]].sum(axis=1)
    summary = frame.groupby(keys, sort=True).agg(
        trials=('trial', 'count'),
        success_rate=('success', 'mean'),
        mean_queries=('queries', 'mean'),
        max_queries=('queries', 'max'),
    ).reset_index()
    if epsilon is not None:
        summary['failure_bound'] = summary['trials'].map(lambda t: failure_bound(epsilon, t))
        summary['within_bound'] = (1 - summary['success_rate']) <= summary['failure_bound']
    return summary


def summary_text(records: List[BenchRecord], epsilon: Optional[float] = None) -> str:
    summary = summarize(records, epsilon)
    if summary.empty:
        return "No records."
    return summary.to_string(index=False)
