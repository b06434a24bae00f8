"""
Experiment driver: planted instances, algorithm dispatch, benchmarks and reports.
"""
from .bench import (
    CollisionStats,
    collision_bench,
    collision_free_probability,
    distinct_sequences_probability,
    run_bench,
    swap_miss_probability,
)
from .dispatch import complexity_table, decide_equivalence, run_match, select_algorithm
from .instances import Instance, gen_instance, load_instance, save_instance
from .report import BenchRecord, summarize, summary_text, write_csv

__all__ = [
    'BenchRecord',
    'CollisionStats',
    'Instance',
    'collision_bench',
    'collision_free_probability',
    'complexity_table',
    'decide_equivalence',
    'distinct_sequences_probability',
    'gen_instance',
    'load_instance',
    'run_bench',
    'run_match',
    'save_instance',
    'select_algorithm',
    'summarize',
    'summary_text',
    'swap_miss_probability',
    'write_csv',
]
