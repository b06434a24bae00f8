"""
CNF formulas: DIMACS I/O, dual-rail encoding, random generation and an
independent brute-force SAT oracle.

Variables are indexed from 0 internally; DIMACS literal k refers to
variable k-1.
"""
import logging
from dataclasses import dataclass
from typing import List, NoReturn, Optional, Sequence, Tuple

import numpy as np

from utils.config import LIMITS
from utils.errors import DimacsFormatError, WidthLimitError

Assignment = Tuple[int, ...]


@dataclass(frozen=True)
class Literal:
    variable: int
    positive: bool = True

    def to_dimacs(self) -> int:
        return (self.variable + 1) * (1 if self.positive else -1)

    @classmethod
    def from_dimacs(cls, value: int) -> 'Literal':
        return cls(abs(value) - 1, value > 0)

    def __str__(self) -> str:
        return ('' if self.positive else '~') + f"x{self.variable + 1}"


@dataclass(frozen=True)
class Cnf:
    """Conjunction of clauses over variables 0..var_count-1."""
    var_count: int
    clauses: Tuple[Tuple[Literal, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'clauses', tuple(tuple(clause) for clause in self.clauses))
        if self.var_count < 1:
            raise ValueError(f"A formula needs at least one variable, got {self.var_count}")
        for index, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"Clause {index} is empty")
            variables = [lit.variable for lit in clause]
            if any(v < 0 or v >= self.var_count for v in variables):
                raise ValueError(f"Clause {index} uses a variable outside 0..{self.var_count - 1}")
            if len(set(variables)) != len(variables):
                raise ValueError(f"Clause {index} contains a variable twice")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return ' & '.join('(' + ' | '.join(str(lit) for lit in clause) + ')' for clause in self.clauses)


def _fail(message: str) -> NoReturn:
    logging.error(message)
    raise DimacsFormatError(message)


def parse_dimacs(text: str) -> Cnf:
    """
    Parse DIMACS CNF text.

    Raises:
        DimacsFormatError: On a malformed header, an empty clause, an
            out-of-range literal or a clause count that disagrees with the header
    """
    header = None
    clauses: List[Tuple[Literal, ...]] = []
    current: List[Literal] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        if line.startswith('%'):
            break
        if line.startswith('p'):
            parts = line.split()
            if header is not None:
                _fail(f"Line {line_no}: second problem line")
            if len(parts) != 4 or parts[1] != 'cnf' or not parts[2].isdigit() or not parts[3].isdigit():
                _fail(f"Line {line_no}: malformed header '{line}'")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            _fail(f"Line {line_no}: clause before the 'p cnf' header")
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                _fail(f"Line {line_no}: invalid literal '{token}'")
            if value == 0:
                if not current:
                    _fail(f"Line {line_no}: zero-length clause")
                clauses.append(tuple(current))
                current = []
                continue
            if abs(value) > header[0]:
                _fail(f"Line {line_no}: literal {value} outside 1..{header[0]}")
            literal = Literal.from_dimacs(value)
            if any(lit.variable == literal.variable for lit in current):
                _fail(f"Line {line_no}: variable {abs(value)} appears twice in one clause")
            current.append(literal)

    if header is None:
        _fail("Missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != header[1]:
        _fail(f"Header declares {header[1]} clauses, found {len(clauses)}")
    try:
        return Cnf(header[0], tuple(clauses))
    except ValueError as exc:
        _fail(str(exc))


def write_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.var_count} {cnf.clause_count}"]
    for clause in cnf.clauses:
        lines.append(' '.join(str(lit.to_dimacs()) for lit in clause) + ' 0')
    return '\n'.join(lines) + '\n'


def read_dimacs_file(path: str) -> Cnf:
    with open(path, 'r', encoding='utf-8') as handle:
        return parse_dimacs(handle.read())


def evaluate_clause(clause: Sequence[Literal], assignment: Sequence[int]) -> bool:
    return any(bool(assignment[lit.variable]) == lit.positive for lit in clause)


def evaluate_cnf(cnf: Cnf, assignment: Sequence[int]) -> bool:
    if len(assignment) != cnf.var_count:
        raise ValueError(f"Assignment has {len(assignment)} values for {cnf.var_count} variables")
    return all(evaluate_clause(clause, assignment) for clause in cnf.clauses)


def dual_rail(cnf: Cnf) -> Cnf:
    """
    Add y_j = not x_j for every variable.

    Variable n+j is y_j. After the original clauses come (x_j | y_j) and
    (~x_j | ~y_j) for j = 0..n-1.
    """
    n = cnf.var_count
    clauses = list(cnf.clauses)
    for j in range(n):
        clauses.append((Literal(j, True), Literal(n + j, True)))
        clauses.append((Literal(j, False), Literal(n + j, False)))
    return Cnf(2 * n, tuple(clauses))


def brute_force_models(cnf: Cnf) -> List[Assignment]:
    """Every satisfying assignment, ordered by integer encoding (variable 0 least significant)."""
    n = cnf.var_count
    if n > LIMITS['sat_oracle_variables']:
        raise WidthLimitError(f"SAT oracle is limited to {LIMITS['sat_oracle_variables']} variables, got {n}")
    xs = np.arange(1 << n, dtype=np.int64)
    satisfied = np.ones(xs.size, dtype=bool)
    for clause in cnf.clauses:
        clause_true = np.zeros(xs.size, dtype=bool)
        for lit in clause:
            bit = ((xs >> lit.variable) & 1).astype(bool)
            clause_true |= bit if lit.positive else ~bit
        satisfied &= clause_true
    return [tuple((int(x) >> v) & 1 for v in range(n)) for x in xs[satisfied]]


def count_models(cnf: Cnf) -> int:
    return len(brute_force_models(cnf))


def solve_unique(cnf: Cnf) -> Optional[Assignment]:
    """The only model of `cnf`, or None when it has zero or several."""
    models = brute_force_models(cnf)
    return models[0] if len(models) == 1 else None


def random_cnf(n: int, m: int, max_clause_len: int = 3, seed: Optional[int] = None) -> Cnf:
    """m clauses over n variables, each of 1..max_clause_len distinct random literals."""
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(m):
        size = int(rng.integers(1, min(max_clause_len, n) + 1))
        variables = rng.choice(n, size=size, replace=False)
        signs = rng.integers(0, 2, size=size)
        clauses.append(tuple(Literal(int(v), bool(s)) for v, s in zip(variables, signs)))
    return Cnf(n, tuple(clauses))


def random_unique_sat(n: int, m: int, seed: Optional[int] = None, max_clause_len: int = 3,
                      attempts: int = 10000) -> Cnf:
    """Rejection-sample random_cnf until the formula has exactly one model."""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        cnf = random_cnf(n, m, max_clause_len, int(rng.integers(1 << 31)))
        if count_models(cnf) == 1:
            return cnf
    raise ValueError(f"No uniquely satisfiable formula with n={n}, m={m} after {attempts} attempts")
