"""
Tab-separated text format for transducers and symbol tables

Transition:  src  dst  ilabel  olabel  [weight]
Final:       state  [weight]
Initial:     @initial  state  [weight]    (before any transition line)

Omitted weights are the semiring one. Without an @initial directive the
source of the first transition is the initial state. Fields may be separated
by tabs or spaces; blank lines and lines starting with '#' are ignored.
"""
import sys
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

from loguru import logger

from ..core.exceptions import FormatError, InvalidWeightError
from ..core.semiring import Semiring, get_semiring
from ..core.transducer import EPSILON, Transducer, Transition

INITIAL_DIRECTIVE = "@initial"
MAX_ID = 2 ** 31 - 1

PathLike = Union[str, Path]


def _parse_id(token: str, what: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"{what} '{token}' is not an integer", line_number)
    if value < 0 or value > MAX_ID:
        raise FormatError(f"{what} {value} outside 0..{MAX_ID}", line_number)
    return value


def _parse_weight(semiring: Semiring, token: str, line_number: int) -> float:
    try:
        return semiring.parse(token)
    except (ValueError, InvalidWeightError) as e:
        raise FormatError(f"bad weight '{token}': {e}", line_number)


def parse_text(text: str, semiring: Union[Semiring, str] = "probability") -> Transducer:
    """
    Build a machine from text

    Args:
        text: File contents
        semiring: Semiring or its name

    Returns:
        Parsed machine
    """
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    initials: Dict[int, float] = {}
    finals: Dict[int, float] = {}
    arcs: List[tuple] = []
    max_state = -1
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == INITIAL_DIRECTIVE:
            if arcs:
                raise FormatError("@initial must precede every transition line", line_number)
            if len(fields) not in (2, 3):
                raise FormatError("expected '@initial state [weight]'", line_number)
            state = _parse_id(fields[1], "state", line_number)
            weight = _parse_weight(semiring, fields[2], line_number) if len(fields) == 3 else semiring.one
            initials[state] = weight
            max_state = max(max_state, state)
        elif len(fields) in (1, 2):
            state = _parse_id(fields[0], "state", line_number)
            finals[state] = _parse_weight(semiring, fields[1], line_number) if len(fields) == 2 else semiring.one
            max_state = max(max_state, state)
        elif len(fields) in (4, 5):
            src = _parse_id(fields[0], "state", line_number)
            dst = _parse_id(fields[1], "state", line_number)
            ilabel = _parse_id(fields[2], "label", line_number)
            olabel = _parse_id(fields[3], "label", line_number)
            weight = _parse_weight(semiring, fields[4], line_number) if len(fields) == 5 else semiring.one
            if semiring.is_zero(weight):
                raise FormatError(f"transition weight equals the {semiring.name} zero", line_number)
            arcs.append((src, Transition(ilabel, olabel, weight, dst)))
            max_state = max(max_state, src, dst)
        else:
            raise FormatError(f"expected 1, 2, 4 or 5 fields, got {len(fields)}", line_number)

    T = Transducer(semiring)
    T.add_states(max_state + 1)
    for src, arc in arcs:
        T.add_transition(src, arc)
    if not initials and T.num_states:
        initials[arcs[0][0] if arcs else 0] = semiring.one
    for state, weight in initials.items():
        T.set_initial(state, weight)
    for state, weight in finals.items():
        if semiring.is_zero(weight):
            continue
        T.set_final(state, weight)
    return T


def read_text(source: Union[PathLike, TextIO], semiring: Union[Semiring, str] = "probability") -> Transducer:
    """
    Read a machine from a path, '-' (stdin) or an open text stream

    Args:
        source: Where to read from
        semiring: Semiring or its name

    Returns:
        Parsed machine
    """
    if hasattr(source, "read"):
        text = source.read()
    elif str(source) == "-":
        text = sys.stdin.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    T = parse_text(text, semiring)
    logger.debug(f"Read {T} from {source}")
    return T


def format_text(T: Transducer) -> str:
    """Serialize a machine; the inverse of parse_text"""
    K = T.semiring
    lines: List[str] = []
    first_src = next((src for src, _ in T.arcs()), None)
    implicit = (len(T.initials) == 1 and first_src is not None
                and T.initials.get(first_src) == K.one)
    if not implicit:
        for state, weight in sorted(T.initials.items()):
            lines.append(f"{INITIAL_DIRECTIVE}\t{state}\t{K.format(weight)}")
    for src, arc in T.arcs():
        lines.append(f"{src}\t{arc.nextstate}\t{arc.ilabel}\t{arc.olabel}\t{K.format(arc.weight)}")
    for state, weight in sorted(T.finals.items()):
        lines.append(f"{state}\t{K.format(weight)}")
    return "\n".join(lines) + "\n"


def write_text(T: Transducer, target: Optional[Union[PathLike, TextIO]] = None) -> str:
    """
    Write a machine to a path, '-' / None (stdout) or an open text stream

    Returns:
        The serialized text
    """
    text = format_text(T)
    if target is None or str(target) == "-":
        sys.stdout.write(text)
    elif hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")
    return text


def read_symbols(path: PathLike) -> Dict[str, int]:
    """
    Read a `symbol<TAB>id` sidecar file

    Label 0 is reserved for ε and cannot name a symbol.

    Returns:
        symbol -> label id
    """
    table: Dict[str, int] = {}
    for line_number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.rstrip("\n").split("\t")
        if len(fields) != 2:
            raise FormatError("expected 'symbol<TAB>id'", line_number)
        symbol, label = fields
        if symbol in table:
            raise FormatError(f"duplicate symbol '{symbol}'", line_number)
        label_id = _parse_id(label, "label", line_number)
        if label_id == EPSILON:
            raise FormatError(f"symbol '{symbol}' uses label 0, which is reserved for ε", line_number)
        table[symbol] = label_id
    return table


def write_symbols(table: Dict[str, int], path: PathLike):
    lines = [f"{symbol}\t{label}" for symbol, label in sorted(table.items(), key=lambda kv: kv[1])]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
