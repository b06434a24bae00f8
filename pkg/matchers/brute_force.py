"""
Exhaustive reference matcher for all sixteen equivalences.

Works on full truth tables. The input-side transform is enumerated; the
output-side transform is then read off the truth-table columns exactly,
since the columns of a bijection are pairwise distinct. Input permutations
are searched depth-first, pruned by comparing sub-cubes of the two tables.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np

from utils.circuit import Circuit, NegationMap, PermutationMap, truth_table_array
from utils.config import LIMITS
from utils.errors import WidthLimitError, WidthMismatchError
from .types import EquivType, MatchWitness, Side

OutputMaps = Tuple[Optional[NegationMap], Optional[PermutationMap]]


def _columns(rows: np.ndarray, n: int) -> np.ndarray:
    """Bit matrix of shape (n, len(rows)); row i is the column of output wire i."""
    return ((rows[None, :] >> np.arange(n, dtype=np.int64)[:, None]) & 1).astype(np.uint8)


def _column_keys(rows: np.ndarray, n: int, canonical: bool = False) -> List[bytes]:
    columns = _columns(rows, n)
    if canonical:
        columns = columns ^ columns[:, :1]
    return [np.packbits(column).tobytes() for column in columns]


def _rows_compatible(rows1: np.ndarray, rows2: np.ndarray, n: int, side: Side) -> bool:
    """Necessary condition for rows1 = T_Y(rows2) for some output transform of kind `side`."""
    if side is Side.I:
        return bool(np.array_equal(rows1, rows2))
    if side is Side.N:
        diff = rows1 ^ rows2
        return bool(np.all(diff == diff[0]))
    canonical = side is Side.NP
    return sorted(_column_keys(rows1, n, canonical)) == sorted(_column_keys(rows2, n, canonical))


def solve_output_side(t1: np.ndarray, h: np.ndarray, n: int, side: Side) -> Optional[OutputMaps]:
    """
    Find nu_y, pi_y with t1 = pi_y(h XOR nu_y), or None.

    Args:
        t1: Truth table of C1
        h: Truth table of C2 after the input transform
        n: Width
        side: Output transform kind
    """
    if side is Side.I:
        return (None, None) if np.array_equal(t1, h) else None
    if side is Side.N:
        mask = int(t1[0] ^ h[0])
        if np.array_equal(t1, h ^ mask):
            return NegationMap.from_mask(n, mask), None
        return None

    canonical = side is Side.NP
    groups: Dict[bytes, List[int]] = defaultdict(list)
    for wire, key in enumerate(_column_keys(t1, n, canonical)):
        groups[key].append(wire)
    columns1 = _columns(t1, n)
    columns2 = _columns(h, n)
    mapping, flags = [], []
    for wire, key in enumerate(_column_keys(h, n, canonical)):
        if not groups.get(key):
            return None
        target = groups[key].pop(0)
        mapping.append(target)
        flags.append(int(columns1[target, 0] != columns2[wire, 0]))
    pi = PermutationMap(tuple(mapping))
    nu = NegationMap(tuple(flags)) if canonical else None
    y = h if nu is None else h ^ nu.mask
    if not np.array_equal(t1, pi.apply_array(y)):
        return None
    return nu, pi


def _subcube_consistent(t1: np.ndarray, t2: np.ndarray, mapping: List[int], depth: int,
                        n: int, side: Side) -> bool:
    """
    Check the partial input permutation wires 0..depth-1 -> mapping on sub-cubes.

    Unassigned wires are held at a constant background (all 0, then all 1)
    on both sides while the assigned wires range over every combination.
    """
    free = np.arange(1 << depth, dtype=np.int64)
    source = np.zeros_like(free)
    assigned = 0
    for i in range(depth):
        source |= ((free >> i) & 1) << mapping[i]
        assigned |= 1 << mapping[i]
    full = (1 << n) - 1
    rest1 = full ^ ((1 << depth) - 1)
    rest2 = full ^ assigned
    for background in (False, True):
        rows1 = t1[free | (rest1 if background else 0)]
        rows2 = t2[source | (rest2 if background else 0)]
        if not _rows_compatible(rows1, rows2, n, side):
            return False
    return True


def _search_permutations(t1: np.ndarray, t2: np.ndarray, n: int,
                         side: Side) -> Optional[Tuple[PermutationMap, OutputMaps]]:
    xs = np.arange(1 << n, dtype=np.int64)
    mapping = [-1] * n
    used = [False] * n
    visited = 0

    def descend(depth: int):
        nonlocal visited
        if depth == n:
            pi = PermutationMap(tuple(mapping))
            out = solve_output_side(t1, t2[pi.apply_array(xs)], n, side)
            return (pi, out) if out is not None else None
        for target in [depth] + [t for t in range(n) if t != depth]:
            if used[target]:
                continue
            mapping[depth] = target
            used[target] = True
            visited += 1
            if _subcube_consistent(t1, t2, mapping, depth + 1, n, side):
                found = descend(depth + 1)
                if found is not None:
                    return found
            used[target] = False
            mapping[depth] = -1
        return None

    result = descend(0)
    logging.debug("Permutation search visited %d nodes", visited)
    return result


def _width_limit(equiv: EquivType) -> int:
    if equiv.input_side.permutes:
        return LIMITS['brute_force_permutation_width']
    return LIMITS['brute_force_negation_width']


def brute_force_match(c1: Circuit, c2: Circuit, equiv: EquivType,
                      max_width: Optional[int] = None) -> Optional[MatchWitness]:
    """
    Find a witness for C1 = T_Y . C2 . T_X by exhaustive search.

    Args:
        c1: First circuit
        c2: Second circuit
        equiv: Equivalence to decide
        max_width: Override of the configured width limit

    Returns:
        A verified MatchWitness, or None when no witness exists

    Raises:
        WidthLimitError: If the width exceeds the applicable limit
    """
    if c1.width != c2.width:
        raise WidthMismatchError(f"Circuit widths differ: {c1.width} vs {c2.width}")
    n = c1.width
    limit = _width_limit(equiv) if max_width is None else max_width
    if n > limit:
        message = f"Brute force for {equiv.label} is limited to width {limit}, got {n}"
        logging.error(message)
        raise WidthLimitError(message)

    t1 = truth_table_array(c1)
    t2 = truth_table_array(c2)
    xs = np.arange(1 << n, dtype=np.int64)
    masks = range(1 << n) if equiv.input_side.negates else (0,)

    for mask in masks:
        nu_x = NegationMap.from_mask(n, mask) if equiv.input_side.negates else None
        # Absorb the input negation into C1's table: T1[x ^ nu] = T_Y(T2[pi(x)])
        t1_shifted = t1[xs ^ mask]
        if equiv.input_side.permutes:
            found = _search_permutations(t1_shifted, t2, n, equiv.output_side)
            if found is None:
                continue
            pi_x, (nu_y, pi_y) = found
        else:
            out = solve_output_side(t1, t2[xs ^ mask], n, equiv.output_side)
            if out is None:
                continue
            pi_x, (nu_y, pi_y) = None, out
        witness = MatchWitness(equiv, nu_x=nu_x, pi_x=pi_x, nu_y=nu_y, pi_y=pi_y)
        logging.debug("Brute force %s found %s", equiv.label, witness.to_dict())
        return witness
    logging.debug("Brute force %s: no witness", equiv.label)
    return None
