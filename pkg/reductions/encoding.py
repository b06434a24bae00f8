"""
Circuits that encode a CNF formula as an N-N or P-P matching instance.

Wire layout, top to bottom: x variables, y variables (P-P only), one
ancilla per clause, then b and z. C1 flips z exactly when the formula holds
and every clause ancilla reads 0; C2 is a single wide MCT gate that flips z
on one fixed pattern. The pair is matchable iff the formula has exactly one
model, and the model can be read off the witness.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from utils.circuit import Circuit, MctGate, mct
from utils.config import LIMITS
from utils.errors import WidthLimitError
from .cnf import Cnf, Literal, dual_rail

LAYOUT_KINDS = ('nn', 'pp')


@dataclass(frozen=True)
class ReductionLayout:
    """Wire positions of each role; together they cover 0..width-1 exactly once."""
    kind: str
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    a: Tuple[int, ...]
    b: int
    z: int

    @property
    def width(self) -> int:
        return len(self.x) + len(self.y) + len(self.a) + 2

    @property
    def variable_wires(self) -> Tuple[int, ...]:
        return self.x + self.y

    def variable_wire(self, variable: int) -> int:
        wires = self.variable_wires
        if not 0 <= variable < len(wires):
            raise ValueError(f"Variable {variable} has no wire; layout covers {len(wires)} variables")
        return wires[variable]

    def roles(self) -> List[str]:
        """Role label per wire, e.g. ['x1', 'a1', 'b', 'z']."""
        labels = [''] * self.width
        for i, wire in enumerate(self.x):
            labels[wire] = f"x{i + 1}"
        for i, wire in enumerate(self.y):
            labels[wire] = f"y{i + 1}"
        for i, wire in enumerate(self.a):
            labels[wire] = f"a{i + 1}"
        labels[self.b] = 'b'
        labels[self.z] = 'z'
        return labels


def _require_clauses(cnf: Cnf) -> None:
    if not cnf.clauses:
        logging.error("Cannot encode a formula without clauses")
        raise ValueError("Cannot encode a formula without clauses")


def nn_layout(cnf: Cnf) -> ReductionLayout:
    n, m = cnf.var_count, cnf.clause_count
    return ReductionLayout('nn', tuple(range(n)), (), tuple(range(n, n + m)), n + m, n + m + 1)


def pp_layout(cnf: Cnf) -> ReductionLayout:
    """Layout of the dual-rail instance: n x wires, n y wires, m + 2n ancillas."""
    n, m = cnf.var_count, cnf.clause_count
    clauses = m + 2 * n
    a_start = 2 * n
    b = a_start + clauses
    return ReductionLayout('pp', tuple(range(n)), tuple(range(n, 2 * n)),
                           tuple(range(a_start, b)), b, b + 1)


def clause_encoder(clause: Tuple[Literal, ...], layout: ReductionLayout, index: int) -> Tuple[MctGate, MctGate]:
    """
    Gates computing a_index ^= clause(x).

    A positive literal becomes a negative control and a negated literal a
    positive control, so the MCT fires exactly when the clause is false;
    the trailing NOT turns that into the clause value.
    """
    if not 0 <= index < len(layout.a):
        raise ValueError(f"Clause index {index} outside the {len(layout.a)} ancillas of the layout")
    target = layout.a[index]
    positive = [layout.variable_wire(lit.variable) for lit in clause if not lit.positive]
    negative = [layout.variable_wire(lit.variable) for lit in clause if lit.positive]
    return mct(target, positive=positive, negative=negative), mct(target)


def build_u_phi(cnf: Cnf, layout: ReductionLayout) -> Circuit:
    """Clause encoders in clause order; the result is its own inverse."""
    gates: List[MctGate] = []
    for index, clause in enumerate(cnf.clauses):
        gates.extend(clause_encoder(clause, layout, index))
    return Circuit(layout.width, tuple(gates))


def _encoding_circuit(cnf: Cnf, layout: ReductionLayout) -> Circuit:
    """
    t1 U t2 U t3 U t4 U with t1 = t3 flipping b when every ancilla reads 0
    and t2 = t4 flipping z when every ancilla and b read 1.
    """
    u_phi = build_u_phi(cnf, layout).elements
    t_b = mct(layout.b, negative=layout.a)
    t_z = mct(layout.z, positive=layout.a + (layout.b,))
    elements = (t_b,) + u_phi + (t_z,) + u_phi + (t_b,) + u_phi + (t_z,) + u_phi
    return Circuit(layout.width, elements)


def _pattern_circuit(layout: ReductionLayout) -> Circuit:
    """Single MCT on z: positive controls on x, negative on y and the ancillas."""
    return Circuit(layout.width, (mct(layout.z, positive=layout.x, negative=layout.y + layout.a),))


def build_nn_instance(cnf: Cnf) -> Tuple[Circuit, Circuit, ReductionLayout]:
    """
    N-N instance of width n+m+2; C1 has 8m+4 gates.

    Raises:
        ValueError: If the formula has no clauses
    """
    _require_clauses(cnf)
    layout = nn_layout(cnf)
    c1 = _encoding_circuit(cnf, layout)
    c2 = _pattern_circuit(layout)
    logging.info("Built N-N instance: width=%d, C1 gates=%d", layout.width, c1.gate_count)
    return c1, c2, layout


def build_pp_instance(cnf: Cnf) -> Tuple[Circuit, Circuit, ReductionLayout]:
    """
    P-P instance of width 4n+m+2 built from the dual-rail formula.

    C1 has 8(m+2n)+4 gates; C2 has n positive and 3n+m negative controls.
    """
    _require_clauses(cnf)
    layout = pp_layout(cnf)
    c1 = _encoding_circuit(dual_rail(cnf), layout)
    c2 = _pattern_circuit(layout)
    logging.info("Built P-P instance: width=%d, C1 gates=%d", layout.width, c1.gate_count)
    return c1, c2, layout


def _formula_values(cnf: Cnf, xs: np.ndarray, wire_of: Callable[[int], int]) -> np.ndarray:
    values = np.ones(xs.size, dtype=bool)
    for clause in cnf.clauses:
        clause_true = np.zeros(xs.size, dtype=bool)
        for lit in clause:
            bit = ((xs >> wire_of(lit.variable)) & 1).astype(bool)
            clause_true |= bit if lit.positive else ~bit
        values &= clause_true
    return values


def _all_equal(xs: np.ndarray, wires, value: int) -> np.ndarray:
    result = np.ones(xs.size, dtype=bool)
    for wire in wires:
        result &= ((xs >> wire) & 1) == value
    return result


def _check_z_function(c: Circuit, layout: ReductionLayout, expected: np.ndarray, xs: np.ndarray) -> bool:
    out = c.apply_array(xs)
    z_bit = 1 << layout.z
    return bool(np.array_equal(out, xs ^ (expected.astype(np.int64) * z_bit)))


def _exhaustive_inputs(width: int) -> np.ndarray:
    if width > LIMITS['truth_table_width']:
        raise WidthLimitError(f"Exhaustive check is limited to width {LIMITS['truth_table_width']}, got {width}")
    return np.arange(1 << width, dtype=np.int64)


def verify_encoding(cnf: Cnf, c1: Circuit, layout: ReductionLayout) -> bool:
    """
    Exhaustively check that C1 maps (x, a, b, z) to (x, a, b, z ^ f).

    f is the formula over the variable wires AND every ancilla reading 0.
    For a P-P layout the original formula is dual-rail encoded first.
    """
    if layout.kind == 'pp' and cnf.var_count == len(layout.x):
        cnf = dual_rail(cnf)
    xs = _exhaustive_inputs(c1.width)
    f = _formula_values(cnf, xs, layout.variable_wire) & _all_equal(xs, layout.a, 0)
    ok = _check_z_function(c1, layout, f, xs)
    logging.debug("Encoding check (%s, width %d): %s", layout.kind, c1.width, ok)
    return ok


def verify_pattern_circuit(c2: Circuit, layout: ReductionLayout) -> bool:
    """Exhaustively check that C2 flips z iff x reads all 1 and y, a read all 0."""
    xs = _exhaustive_inputs(c2.width)
    g = _all_equal(xs, layout.x, 1) & _all_equal(xs, layout.y + layout.a, 0)
    return _check_z_function(c2, layout, g, xs)
