"""
Graphviz DOT export for transducers and filter automata
"""
from typing import List, Optional

from ..core.transducer import EPSILON, Transducer
from ..skills.filters.automaton import FilterAutomaton


def _label(value: int, symbols: Optional[dict]) -> str:
    if value == EPSILON:
        return "ε"
    if symbols:
        return symbols.get(value, str(value))
    return str(value)


def transducer_to_dot(T: Transducer, name: str = "T", symbols: Optional[dict] = None) -> str:
    """
    DOT source for a transducer

    Args:
        T: Machine to draw
        name: Graph name
        symbols: Optional label id -> symbol map

    Returns:
        DOT text
    """
    K = T.semiring
    lines: List[str] = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for q in range(T.num_states):
        shape = "doublecircle" if q in T.finals else "circle"
        label = str(q)
        if q in T.finals:
            label += f"/{K.format(T.finals[q])}"
        lines.append(f'  {q} [shape={shape}, label="{label}"];')
    for i, q in enumerate(sorted(T.initials)):
        lines.append(f'  start{i} [shape=point]; start{i} -> {q} [label="{K.format(T.initials[q])}"];')
    for src, arc in T.arcs():
        text = f"{_label(arc.ilabel, symbols)}:{_label(arc.olabel, symbols)}/{K.format(arc.weight)}"
        lines.append(f'  {src} -> {arc.nextstate} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def filter_to_dot(A: FilterAutomaton) -> str:
    """DOT source for a filter automaton; every state is accepting"""
    name = A.name or "filter"
    lines: List[str] = [f'digraph "{name}" {{', "  rankdir=LR;", "  start [shape=point];",
                        f"  start -> {A.initial};"]
    for q in range(A.num_states):
        lines.append(f"  {q} [shape=doublecircle];")
    for (src, symbol), dst in sorted(A.transitions.items(), key=lambda item: (item[0][0], str(item[0][1]))):
        text = "".join(str(c) for c in symbol) if isinstance(symbol, tuple) else str(symbol)
        lines.append(f'  {src} -> {dst} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(machine, name: Optional[str] = None) -> str:
    """Dispatch on the machine type"""
    if isinstance(machine, FilterAutomaton):
        return filter_to_dot(machine)
    return transducer_to_dot(machine, name or "T")
