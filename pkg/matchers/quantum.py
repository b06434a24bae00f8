"""
Swap-test matchers for N-I and NP-I when no inverse circuit is available.

Both oracles are run on product states of |0>, |+> and |-> wires. A NOT
gate leaves |+> unchanged and only flips the sign of |->, so superposed
wires hide the negation and the swap test compares what is left.
"""
import logging
from typing import List, Tuple

from utils.circuit import NegationMap, PermutationMap
from utils.errors import AmbiguityError, NoPartnerError, WidthMismatchError
from utils.oracle import BlackBox, OracleView
from utils.qsim import SparseState, WireInit, prepare, swap_test
from .types import MatchConfig


def probe_state(n: int, wire: int, probe: WireInit) -> SparseState:
    """All wires |+> except `wire`, which starts in `probe`."""
    inits: List[WireInit] = [WireInit.PLUS] * n
    inits[wire] = probe
    return prepare(inits)


def _swap_rounds_until_differ(o1: BlackBox, s1: SparseState, o2: BlackBox, s2: SparseState,
                              rounds: int, cfg: MatchConfig) -> Tuple[bool, int]:
    """Run up to `rounds` swap tests; (True on the first outcome 1, tests spent)."""
    rng = cfg.rng()
    for spent in range(1, rounds + 1):
        if swap_test(o1.query_state(s1), o2.query_state(s2), rng):
            return True, spent
    return False, rounds


def _differs(o1: BlackBox, s1: SparseState, o2: BlackBox, s2: SparseState, rounds: int, cfg: MatchConfig) -> bool:
    """Run up to `rounds` swap tests; True on the first outcome 1."""
    return _swap_rounds_until_differ(o1, s1, o2, s2, rounds, cfg)[0]


def match_n_i_quantum(o1: BlackBox, o2: BlackBox, cfg: MatchConfig) -> NegationMap:
    """
    Input negation without inverses.

    For each wire i, both oracles get wire i in |0> and every other wire in
    |+>. The outputs are identical when nu(i) = 0 and orthogonal when
    nu(i) = 1, so up to k swap tests decide the bit.

    Args:
        o1: Oracle of C1 = C2 C_nu
        o2: Oracle of C2
        cfg: Epsilon and failure budget; k = swap_rounds(n)

    Returns:
        NegationMap nu; at most 2*n*k quantum queries are spent
    """
    if o1.width != o2.width:
        raise WidthMismatchError(f"Oracle widths differ: {o1.width} vs {o2.width}")
    n = o1.width
    k = cfg.swap_rounds(n)
    flags = []
    for i in range(n):
        state = probe_state(n, i, WireInit.ZERO)
        flags.append(int(_differs(o1, state, o2, state, k, cfg)))
    logging.debug("N-I quantum: k=%d, nu=%s", k, flags)
    return NegationMap(tuple(flags))


def match_np_i_quantum(o1: BlackBox, o2: BlackBox, cfg: MatchConfig) -> Tuple[NegationMap, PermutationMap]:
    """
    Input negation and permutation without inverses.

    Pairing phase: wire b1 of C1 and wire b2 of C2 start in |->, all other
    wires in |+>. Negations only flip the global sign, and the permutation
    carries the |-> wire of C1 to pi(b1), so the outputs coincide (up to
    sign) iff pi(b1) = b2 and are orthogonal otherwise. Every remaining
    candidate b2 gets up to k swap tests. The true partner never yields a 1,
    so while more than one candidate survives, the survivors get one more
    test each. The phase stops at k*n^2 swap tests in total, which keeps the
    whole run within 2k(n^2 + n) quantum queries.

    Negation phase: N-I matching of C1 against the virtual oracle C2 C_pi.

    Raises:
        NoPartnerError: If some wire of C1 matches no remaining wire of C2
        AmbiguityError: If the test budget runs out with several candidates left
    """
    if o1.width != o2.width:
        raise WidthMismatchError(f"Oracle widths differ: {o1.width} vs {o2.width}")
    n = o1.width
    k = cfg.swap_rounds(n * n)
    budget = k * n * n
    spent = 0
    mapping = [-1] * n
    unused = list(range(n))
    for b1 in range(n):
        s1 = probe_state(n, b1, WireInit.MINUS)
        states = {b2: probe_state(n, b2, WireInit.MINUS) for b2 in unused}
        survivors = []
        for b2 in unused:
            differs, tests = _swap_rounds_until_differ(o1, s1, o2, states[b2], k, cfg)
            spent += tests
            if not differs:
                survivors.append(b2)
        while len(survivors) > 1 and spent + len(survivors) <= budget:
            kept = []
            for b2 in survivors:
                spent += 1
                if not _differs(o1, s1, o2, states[b2], 1, cfg):
                    kept.append(b2)
            survivors = kept
        if not survivors:
            message = f"Wire {b1} of C1 matched no wire of C2"
            logging.error(message)
            raise NoPartnerError(message)
        if len(survivors) > 1:
            raise AmbiguityError(f"Wire {b1} of C1 still matches wires {survivors} of C2; retry with a fresh seed")
        mapping[b1] = survivors[0]
        unused.remove(survivors[0])
    pi = PermutationMap(tuple(mapping))
    logging.debug("NP-I quantum: k=%d, swap tests=%d, pi=%s", k, spent, mapping)
    nu = match_n_i_quantum(o1, OracleView(o2, pre=pi), cfg)
    return nu, pi
