"""
Per-state hash indexes over transition labels
"""
from enum import Enum
from typing import Dict, List, Tuple

from ...core.transducer import StateId, Transducer, Transition

_EMPTY: Tuple[Transition, ...] = ()


class Side(Enum):
    """Tape used as the index key"""
    INPUT = "input"
    OUTPUT = "output"
    PAIR = "pair"


class LabelIndex:
    """Per-state map from a label key to the transitions carrying it"""

    def __init__(self, side: Side, buckets: List[Dict[object, Tuple[Transition, ...]]]):
        self.side = side
        self.buckets = buckets

    def lookup(self, state: StateId, key) -> Tuple[Transition, ...]:
        """Transitions of `state` with the given key; empty when absent"""
        return self.buckets[state].get(key, _EMPTY)

    def keys(self, state: StateId) -> List[object]:
        return list(self.buckets[state])

    def bucket_sizes(self, state: StateId) -> Dict[object, int]:
        return {key: len(arcs) for key, arcs in self.buckets[state].items()}

    def __len__(self):
        return len(self.buckets)


def _key(side: Side, arc: Transition):
    if side is Side.INPUT:
        return arc.ilabel
    if side is Side.OUTPUT:
        return arc.olabel
    return arc.ilabel, arc.olabel


def build_label_index(T: Transducer, side) -> LabelIndex:
    """
    Index every state's transitions by label

    Built once per machine and side, then cached on the machine until it is
    next mutated.

    Args:
        T: Machine to index
        side: Side.INPUT, Side.OUTPUT or Side.PAIR (or their string values)

    Returns:
        LabelIndex whose buckets partition each state's transition list
    """
    side = Side(side)

    def build() -> LabelIndex:
        buckets: List[Dict[object, Tuple[Transition, ...]]] = []
        for arcs in T.states:
            grouped: Dict[object, List[Transition]] = {}
            for arc in arcs:
                grouped.setdefault(_key(side, arc), []).append(arc)
            buckets.append({key: tuple(group) for key, group in grouped.items()})
        return LabelIndex(side, buckets)

    return T.cached(f"label_index:{side.value}", build)
