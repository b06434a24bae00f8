"""
Configuration defaults for circuit evaluation, simulation and matching.
"""

# Size limits - single source of truth
LIMITS = {
    'truth_table_width': 16,          # 2^16 entries is the largest table we build
    'exhaustive_check_width': 10,     # above this, checks fall back to sampling
    'inverse_check_samples': 256,
    'max_state_support': 1 << 22,
    'random_fan_in': 4,
    'brute_force_permutation_width': 6,
    'brute_force_negation_width': 12,
    'sat_oracle_variables': 20,
    'array_width': 62,                # widest pattern held in a signed 64-bit lane
}

# Matcher and harness defaults
MATCH_DEFAULTS = {
    'epsilon': 0.05,
    'seed': 2024,
    'failure_budget': 'per-decision',
    'ambiguity_retries': 3,
    'verify_samples': 256,
    'gate_count': 20,
}

FAILURE_BUDGETS = ('per-decision', 'union-bound')

MATCH_MODES = ('auto', 'classical', 'quantum', 'brute')
