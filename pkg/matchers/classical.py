"""
Classical matchers for the tractable equivalences.

Every matcher sees its circuits only through BlackBox queries. With the
convention C1 = T_Y . C2 . T_X:

    I-N   C1 = C_nu C2            P-I   C1 = C2 C_pi
    I-P   C1 = C_pi C2            N-I   C1 = C2 C_nu
    I-NP  C1 = C_pi C_nu C2       NP-I  C1 = C2 C_pi C_nu
    P-N   C1 = C_nu C2 C_pi       N-P   C1 = C_pi C2 C_nu
"""
import logging
import math
from typing import Callable, Dict, List, Tuple

from utils.circuit import BitVec, NegationMap, PermutationMap, uncommute_neg_perm
from utils.errors import (
    AmbiguityError,
    InverseUnavailableError,
    MissingKeyError,
    PromiseViolationError,
    WidthMismatchError,
)
from utils.oracle import BlackBox, InvertedOracle, OracleView
from .types import MatchConfig

Query = Callable[[BitVec], BitVec]


def _common_width(o1: BlackBox, o2: BlackBox) -> int:
    if o1.width != o2.width:
        raise WidthMismatchError(f"Oracle widths differ: {o1.width} vs {o2.width}")
    return o1.width


def code_patterns(n: int) -> List[BitVec]:
    """Pattern t carries bit t of j on wire j, least significant bit first."""
    count = math.ceil(math.log2(n)) if n > 1 else 0
    return [BitVec(n, sum(((j >> t) & 1) << j for j in range(n))) for t in range(count)]


def decode_codes(outputs: List[BitVec], n: int) -> PermutationMap:
    """
    Recover pi from the outputs of C_pi on the code patterns.

    Output wire q carries the code of the input wire p with pi(p) = q.
    """
    mapping = [-1] * n
    for q in range(n):
        p = sum(out[q] << t for t, out in enumerate(outputs))
        if p >= n or mapping[p] != -1:
            raise PromiseViolationError(f"Output wire {q} carries invalid or repeated code {p}")
        mapping[p] = q
    return PermutationMap(tuple(mapping))


def _permutation_from(c_query: Query, n: int) -> PermutationMap:
    outputs = [c_query(pattern) for pattern in code_patterns(n)]
    return decode_codes(outputs, n)


def _negated_permutation_from(c_query: Query, n: int) -> Tuple[NegationMap, PermutationMap]:
    """For C(x) = pi(x) XOR nu, read nu from C(0) and pi from the corrected code outputs."""
    nu = c_query(BitVec.zeros(n))
    outputs = [c_query(pattern) ^ nu for pattern in code_patterns(n)]
    return NegationMap(nu.bits), decode_codes(outputs, n)


def _chain(first: Query, second: Query) -> Query:
    return lambda x: second(first(x))


def match_i_n(o1: BlackBox, o2: BlackBox) -> NegationMap:
    """Output negation from a single all-zero query to each oracle."""
    n = _common_width(o1, o2)
    zero = BitVec.zeros(n)
    nu = o1.query(zero) ^ o2.query(zero)
    logging.debug("I-N: nu=%s", nu)
    return NegationMap(nu.bits)


def match_i_p_inv(o1: BlackBox, o2: BlackBox) -> PermutationMap:
    """
    Output permutation through the composed oracle C1 C2^-1 = C_pi.

    Falls back to C2 C1^-1 = C_pi^-1 when only C1 is invertible.

    Raises:
        InverseUnavailableError: If neither oracle has an inverse
    """
    n = _common_width(o1, o2)
    if o2.has_inverse:
        return _permutation_from(_chain(o2.query_inverse, o1.query), n)
    if o1.has_inverse:
        return _permutation_from(_chain(o1.query_inverse, o2.query), n).inverse()
    raise InverseUnavailableError("I-P matching with inverses needs C1^-1 or C2^-1")


def _random_sequences(o1: BlackBox, o2: BlackBox, rounds: int, cfg: MatchConfig) -> Tuple[List[int], List[int]]:
    """Feed `rounds` random patterns; sequence b packs the outputs of wire b, one bit per round."""
    n = o1.width
    rng = cfg.rng()
    seq1 = [0] * n
    seq2 = [0] * n
    for r in range(rounds):
        x = BitVec.from_bits(rng.integers(0, 2, size=n))
        y1, y2 = o1.query(x), o2.query(x)
        for b in range(n):
            seq1[b] |= y1[b] << r
            seq2[b] |= y2[b] << r
    return seq1, seq2


def _index_sequences(sequences: List[int]) -> Dict[int, int]:
    lookup = {s: b for b, s in enumerate(sequences)}
    if len(lookup) < len(sequences):
        raise AmbiguityError("Two output wires share an output sequence; retry with a fresh seed")
    return lookup


def match_i_p_rand(o1: BlackBox, o2: BlackBox, cfg: MatchConfig) -> PermutationMap:
    """
    Output permutation from k random patterns, k = ceil(log2(n(n-1)/epsilon)).

    Wire pi(b) of C1 repeats the output sequence of wire b of C2.

    Raises:
        AmbiguityError: If two wires of one circuit produce the same sequence
    """
    n = _common_width(o1, o2)
    k = cfg.sequence_rounds(n)
    seq1, seq2 = _random_sequences(o1, o2, k, cfg)
    lookup = _index_sequences(seq1)
    _index_sequences(seq2)
    mapping = []
    for b, s in enumerate(seq2):
        if s not in lookup:
            raise PromiseViolationError(f"Sequence of C2 wire {b} never appears in C1")
        mapping.append(lookup[s])
    logging.debug("I-P randomized: k=%d, pi=%s", k, mapping)
    return PermutationMap(tuple(mapping))


def match_i_np_inv(o1: BlackBox, o2: BlackBox) -> Tuple[NegationMap, PermutationMap]:
    """
    Output negation and permutation through an inverse-composed oracle.

    C1 C2^-1 = C_pi C_nu = C_nu' C_pi, so C(0) gives nu' and nu follows by
    undoing the commutation. C2 C1^-1 = C_nu C_pi^-1 gives nu directly.
    """
    n = _common_width(o1, o2)
    if o2.has_inverse:
        nu_after, pi = _negated_permutation_from(_chain(o2.query_inverse, o1.query), n)
        return uncommute_neg_perm(nu_after, pi), pi
    if o1.has_inverse:
        nu, pi_inverse = _negated_permutation_from(_chain(o1.query_inverse, o2.query), n)
        return nu, pi_inverse.inverse()
    raise InverseUnavailableError("I-NP matching with inverses needs C1^-1 or C2^-1")


def match_i_np_rand(o1: BlackBox, o2: BlackBox, cfg: MatchConfig) -> Tuple[NegationMap, PermutationMap]:
    """
    Output negation and permutation from k random patterns.

    Wire pi(b) of C1 repeats the sequence of wire b of C2, complemented
    exactly when nu(b) = 1.

    Raises:
        AmbiguityError: If some sequence of C2 equals another one or its complement
    """
    n = _common_width(o1, o2)
    k = cfg.sequence_rounds(n)
    full = (1 << k) - 1
    seq1, seq2 = _random_sequences(o1, o2, k, cfg)
    lookup = _index_sequences(seq1)
    _index_sequences(seq2 + [s ^ full for s in seq2])
    mapping, flags = [], []
    for b, s in enumerate(seq2):
        if s in lookup:
            mapping.append(lookup[s])
            flags.append(0)
        elif s ^ full in lookup:
            mapping.append(lookup[s ^ full])
            flags.append(1)
        else:
            raise PromiseViolationError(f"Sequence of C2 wire {b} never appears in C1, plain or complemented")
    logging.debug("I-NP randomized: k=%d, nu=%s, pi=%s", k, flags, mapping)
    return NegationMap(tuple(flags)), PermutationMap(tuple(mapping))


def match_p_i_inv(o1: BlackBox, o2: BlackBox) -> PermutationMap:
    """
    Input permutation: C2^-1 C1 = C_pi, or C1^-1 C2 = C_pi^-1.
    """
    n = _common_width(o1, o2)
    if o2.has_inverse:
        return _permutation_from(_chain(o1.query, o2.query_inverse), n)
    if o1.has_inverse:
        return _permutation_from(_chain(o2.query, o1.query_inverse), n).inverse()
    raise InverseUnavailableError("P-I matching with inverses needs C1^-1 or C2^-1")


def match_p_i_onehot(o1: BlackBox, o2: BlackBox) -> PermutationMap:
    """
    Input permutation from n one-hot queries per oracle.

    M1 maps the response of C1 to one-hot i back to i; M2[j] is the response
    of C2 to one-hot j. Since C1(e_i) = C2(e_pi(i)), M1[M2[j]] = pi^-1(j).

    Raises:
        MissingKeyError: If some response of C2 never appears among those of C1
    """
    n = _common_width(o1, o2)
    m1 = {o1.query(BitVec.one_hot(n, i)).value: i for i in range(n)}
    m2 = [o2.query(BitVec.one_hot(n, j)).value for j in range(n)]
    preimage = []
    for j, response in enumerate(m2):
        if response not in m1:
            message = f"Response of C2 to one-hot {j} is missing from C1's responses"
            logging.error(message)
            raise MissingKeyError(message)
        preimage.append(m1[response])
    return PermutationMap(tuple(preimage)).inverse()


def match_n_i_inv(o1: BlackBox, o2: BlackBox) -> NegationMap:
    """
    Input negation from one composed evaluation on the all-zero pattern.

    C2^-1 C1 = C_nu; with only C1^-1, C1^-1 C2 = C_nu^-1 = C_nu.
    """
    n = _common_width(o1, o2)
    zero = BitVec.zeros(n)
    if o2.has_inverse:
        return NegationMap(o2.query_inverse(o1.query(zero)).bits)
    if o1.has_inverse:
        return NegationMap(o1.query_inverse(o2.query(zero)).bits)
    raise InverseUnavailableError("N-I matching with inverses needs C1^-1 or C2^-1")


def match_np_i_inv(o1: BlackBox, o2: BlackBox) -> Tuple[NegationMap, PermutationMap]:
    """
    Input negation and permutation.

    C2^-1 C1 = C_pi C_nu = C_nu' C_pi; C1^-1 C2 = C_nu C_pi^-1.
    """
    n = _common_width(o1, o2)
    if o2.has_inverse:
        nu_after, pi = _negated_permutation_from(_chain(o1.query, o2.query_inverse), n)
        return uncommute_neg_perm(nu_after, pi), pi
    if o1.has_inverse:
        nu, pi_inverse = _negated_permutation_from(_chain(o2.query, o1.query_inverse), n)
        return nu, pi_inverse.inverse()
    raise InverseUnavailableError("NP-I matching with inverses needs C1^-1 or C2^-1")


def match_p_n(o1: BlackBox, o2: BlackBox) -> Tuple[PermutationMap, NegationMap]:
    """
    Input permutation and output negation.

    On the all-zero input the input permutation has no effect, so
    nu = C1(0) XOR C2(0). What remains is P-I matching of C1 against the
    virtual oracle C_nu C2.

    Returns:
        Tuple of (pi_x, nu_y)
    """
    n = _common_width(o1, o2)
    zero = BitVec.zeros(n)
    nu = NegationMap((o1.query(zero) ^ o2.query(zero)).bits)
    corrected = OracleView(o2, post=nu)
    if o1.has_inverse or o2.has_inverse:
        pi = match_p_i_inv(o1, corrected)
    else:
        pi = match_p_i_onehot(o1, corrected)
    logging.debug("P-N: nu=%s, pi=%s", nu.flags, pi.mapping)
    return pi, nu


def match_n_p_inv(o1: BlackBox, o2: BlackBox) -> Tuple[NegationMap, PermutationMap]:
    """
    Input negation and output permutation from the inverse oracles.

    C1^-1 = C_nu C2^-1 C_pi^-1 is a P-N instance over the inverses.

    Returns:
        Tuple of (nu_x, pi_y)

    Raises:
        InverseUnavailableError: Unless both oracles have inverses
    """
    if not (o1.has_inverse and o2.has_inverse):
        raise InverseUnavailableError("N-P matching needs both C1^-1 and C2^-1")
    pi_inverse, nu = match_p_n(InvertedOracle(o1), InvertedOracle(o2))
    return nu, pi_inverse.inverse()
