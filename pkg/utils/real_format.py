"""
Reader and writer for the line-based .real circuit format.

Only the MCT subset is supported: `t<K>` gate lines whose last token is the
target and whose other tokens are controls, negative controls prefixed `-`.
"""
import logging
import string
from typing import Dict, List, NoReturn, Tuple

from .circuit import Circuit, ControlLine, MctGate, PermutationMap, Polarity, Rewire, mct
from .errors import CircuitFormatError

# RevLib metadata we accept and ignore
IGNORED_DIRECTIVES = ('.model', '.inputs', '.outputs', '.constants', '.garbage')
HEADER_DIRECTIVES = ('.version', '.numvars', '.variables', '.begin', '.end')


def _fail(message: str) -> NoReturn:
    logging.error(message)
    raise CircuitFormatError(message)


def variable_names(width: int) -> List[str]:
    if width <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:width])
    return [f"v{i}" for i in range(width)]


def swap_gates(i: int, j: int) -> Tuple[MctGate, MctGate, MctGate]:
    """Exchange wires i and j with three CNOTs."""
    return mct(j, positive=[i]), mct(i, positive=[j]), mct(j, positive=[i])


def expand_rewire(pi: PermutationMap) -> List[MctGate]:
    """
    Decompose a wire permutation into CNOT swap triples.

    Wire j is filled in order 0..n-1 with the value that pi sends there.
    """
    n = pi.width
    holder = list(range(n))  # holder[w] = original wire whose value sits on w
    location = list(range(n))  # inverse of holder
    source = pi.inverse()
    gates: List[MctGate] = []
    for j in range(n):
        w = location[source(j)]
        if w == j:
            continue
        gates.extend(swap_gates(w, j))
        holder[w], holder[j] = holder[j], holder[w]
        location[holder[w]] = w
        location[holder[j]] = j
    return gates


def _format_gate(gate: MctGate, names: List[str]) -> str:
    tokens = [('' if c.positive else '-') + names[c.wire] for c in gate.controls]
    tokens.append(names[gate.target])
    return f"t{len(tokens)} " + ' '.join(tokens)


def write_real(c: Circuit) -> str:
    """Serialize a circuit; Rewire elements are expanded into CNOT swap triples."""
    names = variable_names(c.width)
    lines = [
        '.version 2.0',
        f'.numvars {c.width}',
        '.variables ' + ' '.join(names),
        '.begin',
    ]
    for element in c.elements:
        if isinstance(element, Rewire):
            lines.extend(_format_gate(gate, names) for gate in expand_rewire(element.perm))
        else:
            lines.append(_format_gate(element, names))
    lines.append('.end')
    return '\n'.join(lines) + '\n'


def _parse_gate(tokens: List[str], index: Dict[str, int], line_no: int) -> MctGate:
    tag = tokens[0]
    try:
        arity = int(tag[1:])
    except ValueError:
        _fail(f"Line {line_no}: malformed gate tag '{tag}'")
    operands = tokens[1:]
    if arity != len(operands) or arity < 1:
        _fail(f"Line {line_no}: gate tag '{tag}' expects {arity} operands, got {len(operands)}")

    def wire_of(name: str) -> int:
        if name not in index:
            _fail(f"Line {line_no}: unknown variable '{name}'. Available variables: {list(index)}")
        return index[name]

    target_token = operands[-1]
    if target_token.startswith('-'):
        _fail(f"Line {line_no}: target '{target_token}' cannot carry a polarity")
    target = wire_of(target_token)
    controls = []
    seen = set()
    for token in operands[:-1]:
        negative = token.startswith('-')
        wire = wire_of(token[1:] if negative else token)
        if wire == target:
            _fail(f"Line {line_no}: control '{token}' equals the target")
        if wire in seen:
            _fail(f"Line {line_no}: duplicate control '{token}'")
        seen.add(wire)
        controls.append(ControlLine(wire, Polarity.NEGATIVE if negative else Polarity.POSITIVE))
    return MctGate(target, tuple(controls))


def parse_real(text: str) -> Circuit:
    """
    Parse .real text into a Circuit.

    Args:
        text: File contents

    Returns:
        Circuit with one MctGate per gate line, in file order

    Raises:
        CircuitFormatError: On a malformed header, unknown variable,
            duplicate control or control equal to the target
    """
    numvars = None
    names: List[str] = []
    index: Dict[str, int] = {}
    gates: List[MctGate] = []
    in_body = False
    ended = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if ended:
            _fail(f"Line {line_no}: content after .end")
        tokens = line.split()
        head = tokens[0].lower()

        if head.startswith('.'):
            if head in IGNORED_DIRECTIVES:
                continue
            if head not in HEADER_DIRECTIVES:
                _fail(f"Line {line_no}: unknown directive '{tokens[0]}'. Available directives: "
                      f"{list(HEADER_DIRECTIVES + IGNORED_DIRECTIVES)}")
            if head == '.numvars':
                if len(tokens) != 2 or not tokens[1].isdigit():
                    _fail(f"Line {line_no}: malformed .numvars line")
                numvars = int(tokens[1])
            elif head == '.variables':
                names = tokens[1:]
            elif head == '.begin':
                if numvars is None or not names:
                    _fail(f"Line {line_no}: .begin before .numvars/.variables")
                if len(names) != numvars:
                    _fail(f".numvars {numvars} does not match {len(names)} variables")
                if len(set(names)) != len(names):
                    _fail(f"Duplicate variable names: {names}")
                index = {name: i for i, name in enumerate(names)}
                in_body = True
            elif head == '.end':
                if not in_body:
                    _fail(f"Line {line_no}: .end without .begin")
                ended = True
            continue

        if not in_body:
            _fail(f"Line {line_no}: gate outside .begin/.end")
        if head[0] != 't':
            _fail(f"Line {line_no}: unsupported gate '{tokens[0]}'; only MCT 't' gates are allowed")
        gates.append(_parse_gate(tokens, index, line_no))

    if not ended:
        _fail("Missing .end")
    logging.debug("Parsed .real circuit: %d wires, %d gates", numvars, len(gates))
    return Circuit(numvars, tuple(gates))


def read_real_file(path: str) -> Circuit:
    with open(path, 'r', encoding='utf-8') as handle:
        return parse_real(handle.read())


def write_real_file(c: Circuit, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(write_real(c))
    logging.info("Wrote circuit to %s", path)
