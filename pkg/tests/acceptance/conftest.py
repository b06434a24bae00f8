"""
Pytest configuration and fixtures for the acceptance suite.
"""
import math
import os
import sys
from typing import Callable, List, Tuple

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from harness.instances import Instance, gen_instance  # noqa: E402
from matchers.types import EquivType  # noqa: E402

# Set by run_tests.py --quick
QUICK = os.environ.get('REVMATCH_QUICK') == '1'

# Acceptance configuration
ACCEPTANCE_WIDTHS = (4, 6, 8)
ACCEPTANCE_EPSILON = 0.05
FULL_TRIALS = 100
QUICK_TRIALS = 20
MIN_SUCCESS_RATE = 0.9


@pytest.fixture(scope="session")
def trial_count() -> int:
    """Planted instances per (algorithm, width) cell."""
    return QUICK_TRIALS if QUICK else FULL_TRIALS


@pytest.fixture(scope="session")
def min_successes(trial_count) -> int:
    """Successes a randomized or quantum matcher must reach."""
    return math.floor(MIN_SUCCESS_RATE * trial_count)


@pytest.fixture(scope="session")
def planted_instances() -> Callable[..., List[Instance]]:
    """Factory for reproducible planted instances of one cell."""

    def build(label: str, n: int, count: int, inverses: Tuple[bool, bool] = (False, False),
              base_seed: int = 1000) -> List[Instance]:
        equiv = EquivType.parse(label)
        return [gen_instance(equiv, n, seed=base_seed + i, with_inverses=inverses) for i in range(count)]

    return build


@pytest.fixture
def skip_in_quick_mode():
    """Skip long Monte-Carlo checks under --quick."""
    if QUICK:
        pytest.skip("skipped in quick mode")
