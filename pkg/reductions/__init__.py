"""
UNIQUE-SAT reductions to N-N and P-P matching.
"""
from .cnf import (
    Cnf,
    Literal,
    brute_force_models,
    count_models,
    dual_rail,
    evaluate_cnf,
    parse_dimacs,
    random_cnf,
    random_unique_sat,
    solve_unique,
    write_dimacs,
)
from .encoding import (
    ReductionLayout,
    build_nn_instance,
    build_pp_instance,
    build_u_phi,
    clause_encoder,
    nn_layout,
    pp_layout,
    verify_encoding,
    verify_pattern_circuit,
)
from .extraction import extract_assignment_nn, extract_assignment_pp, solve_via_matching

__all__ = [
    'Cnf',
    'Literal',
    'ReductionLayout',
    'brute_force_models',
    'build_nn_instance',
    'build_pp_instance',
    'build_u_phi',
    'clause_encoder',
    'count_models',
    'dual_rail',
    'evaluate_cnf',
    'extract_assignment_nn',
    'extract_assignment_pp',
    'nn_layout',
    'parse_dimacs',
    'pp_layout',
    'random_cnf',
    'random_unique_sat',
    'solve_unique',
    'solve_via_matching',
    'verify_encoding',
    'verify_pattern_circuit',
    'write_dimacs',
]
