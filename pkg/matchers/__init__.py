"""
Boolean matching algorithms for black-box reversible circuits.
"""
from .brute_force import brute_force_match
from .classical import (
    match_i_n,
    match_i_np_inv,
    match_i_np_rand,
    match_i_p_inv,
    match_i_p_rand,
    match_n_i_inv,
    match_n_p_inv,
    match_np_i_inv,
    match_p_i_inv,
    match_p_i_onehot,
    match_p_n,
)
from .quantum import match_n_i_quantum, match_np_i_quantum
from .types import (
    EquivType,
    MatchConfig,
    MatchWitness,
    Side,
    apply_witness,
    dominates,
    is_tractable,
    side_circuit,
)
from .verify import verify_witness

__all__ = [
    'EquivType',
    'MatchConfig',
    'MatchWitness',
    'Side',
    'apply_witness',
    'brute_force_match',
    'dominates',
    'is_tractable',
    'match_i_n',
    'match_i_np_inv',
    'match_i_np_rand',
    'match_i_p_inv',
    'match_i_p_rand',
    'match_n_i_inv',
    'match_n_i_quantum',
    'match_n_p_inv',
    'match_np_i_inv',
    'match_np_i_quantum',
    'match_p_i_inv',
    'match_p_i_onehot',
    'match_p_n',
    'side_circuit',
    'verify_witness',
]
