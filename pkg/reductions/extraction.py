"""
Reading a satisfying assignment back out of an N-N or P-P witness.
"""
import logging
from typing import Optional

from matchers.brute_force import brute_force_match
from matchers.types import EquivType, MatchWitness, Side
from utils.errors import UnsatError, WitnessShapeError
from .cnf import Assignment, Cnf, evaluate_cnf
from .encoding import ReductionLayout, build_nn_instance, build_pp_instance, nn_layout, pp_layout

REDUCTION_KINDS = ('nn', 'pp')


def _checked(cnf: Cnf, assignment: Assignment) -> Assignment:
    if not evaluate_cnf(cnf, assignment):
        message = f"Extracted assignment {list(assignment)} does not satisfy the formula"
        logging.warning(message)
        raise UnsatError(message)
    return assignment


def extract_assignment_nn(cnf: Cnf, w: MatchWitness, layout: Optional[ReductionLayout] = None) -> Assignment:
    """
    x_i = 1 - nu_x(x_i wire).

    C2 fires on x all 1, so a negated x wire means the model has x_i = 0.

    Raises:
        WitnessShapeError: If w is not an N-N witness
        UnsatError: If the candidate does not satisfy the formula
    """
    if w.equiv != EquivType(Side.N, Side.N):
        raise WitnessShapeError(f"Expected an N-N witness, got {w.equiv.label}")
    layout = nn_layout(cnf) if layout is None else layout
    assignment = tuple(1 - w.nu_x[wire] for wire in layout.x)
    return _checked(cnf, assignment)


def extract_assignment_pp(cnf: Cnf, w: MatchWitness, layout: Optional[ReductionLayout] = None) -> Assignment:
    """
    x_i = 1 iff pi_x moves the x_i wire into the positive-control region of C2.

    Raises:
        WitnessShapeError: If w is not a P-P witness
        UnsatError: If the candidate does not satisfy the formula
    """
    if w.equiv != EquivType(Side.P, Side.P):
        raise WitnessShapeError(f"Expected a P-P witness, got {w.equiv.label}")
    layout = pp_layout(cnf) if layout is None else layout
    region = len(layout.x)
    assignment = tuple(int(w.pi_x(wire) < region) for wire in layout.x)
    return _checked(cnf, assignment)


def solve_via_matching(cnf: Cnf, kind: str = 'nn') -> Optional[Assignment]:
    """
    Decide a promise UNIQUE-SAT formula through brute-force matching.

    Returns:
        The unique model, or None when the encoded circuits do not match
        (the formula has no model, or more than one)
    """
    if kind not in REDUCTION_KINDS:
        logging.error("Unknown reduction kind: %s", kind)
        raise ValueError(f"Unknown reduction kind: {kind}. Available kinds: {list(REDUCTION_KINDS)}")
    if kind == 'nn':
        c1, c2, layout = build_nn_instance(cnf)
        equiv, extract = EquivType(Side.N, Side.N), extract_assignment_nn
    else:
        c1, c2, layout = build_pp_instance(cnf)
        equiv, extract = EquivType(Side.P, Side.P), extract_assignment_pp
    witness = brute_force_match(c1, c2, equiv, max_width=layout.width)
    if witness is None:
        logging.info("No %s witness: formula has no unique model", equiv.label)
        return None
    return extract(cnf, witness, layout)
