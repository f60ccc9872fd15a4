"""
Pairwise weighted composition T1 ∘ T2 gated by the ε-filter M
"""
from collections import deque
from typing import Dict, List, NamedTuple, Optional, Tuple

from loguru import logger

from ...core.exceptions import SemiringMismatchError
from ...core.transducer import EPSILON, StateId, Transducer, Transition
from ..filters.filters import X, filter_m
from .label_index import Side, build_label_index


class PairState(NamedTuple):
    """Result state (q1, q2, f) with f the filter M state"""
    q1: StateId
    q2: StateId
    f: int


class _NoFilter:
    """Gate that lets every move through; used to show what M prevents"""
    initial = 0
    name = "none"

    def step(self, state, symbol):
        return 0


def compose(T1: Transducer, T2: Transducer, use_filter: bool = True) -> Transducer:
    """
    Weighted composition of two transducers

    T1's output ε behaves as ε₂ with virtual ε₁ self-loops, T2's input ε as
    ε₁ with virtual ε₂ self-loops; the filter M keeps one path per set of
    equivalent ε interleavings. Only accessible states are built.

    Args:
        T1: Left machine
        T2: Right machine, same semiring
        use_filter: Gate ε moves with M (disable only to observe ε-path
            multiplicity)

    Returns:
        Machine R with R(x, y) = ⊕_z T1(x, z) ⊗ T2(z, y)
    """
    if T1.semiring != T2.semiring:
        logger.error(f"compose() refused: {T1.semiring.name} vs {T2.semiring.name}")
        raise SemiringMismatchError(f"cannot compose {T1.semiring.name} with {T2.semiring.name}")
    K = T1.semiring
    gate = filter_m() if use_filter else _NoFilter()

    # index the machine with the larger out-degree, iterate the other
    index_left = T1.stats().max_out_degree > T2.stats().max_out_degree
    out1 = build_label_index(T1, Side.OUTPUT)
    in2 = build_label_index(T2, Side.INPUT)

    R = Transducer(K)
    ids: Dict[PairState, StateId] = {}
    queue: deque = deque()

    def intern(state: PairState) -> StateId:
        sid = ids.get(state)
        if sid is None:
            sid = R.add_state()
            ids[state] = sid
            queue.append(state)
        return sid

    for q1, w1 in T1.initials.items():
        for q2, w2 in T2.initials.items():
            R.set_initial(intern(PairState(q1, q2, gate.initial)), K.times(w1, w2))

    while queue:
        state = queue.popleft()
        src = ids[state]
        q1, q2, f = state
        if q1 in T1.finals and q2 in T2.finals:
            R.set_final(src, K.times(T1.finals[q1], T2.finals[q2]))

        moves: List[Tuple[str, Optional[Transition], Optional[Transition]]] = []
        if index_left:
            for e2 in T2.states[q2]:
                if e2.ilabel != EPSILON:
                    moves.extend((X, e1, e2) for e1 in out1.lookup(q1, e2.ilabel))
        else:
            for e1 in T1.states[q1]:
                if e1.olabel != EPSILON:
                    moves.extend((X, e1, e2) for e2 in in2.lookup(q2, e1.olabel))
        eps1 = out1.lookup(q1, EPSILON)
        eps2 = in2.lookup(q2, EPSILON)
        moves.extend(("c", e1, e2) for e1 in eps1 for e2 in eps2)
        moves.extend(("a", None, e2) for e2 in eps2)
        moves.extend(("b", e1, None) for e1 in eps1)

        for symbol, e1, e2 in moves:
            nf = gate.step(f, symbol)
            if nf is None:
                continue
            n1 = e1.nextstate if e1 is not None else q1
            n2 = e2.nextstate if e2 is not None else q2
            if e1 is not None and e2 is not None:
                weight = K.times(e1.weight, e2.weight)
            else:
                weight = (e1 or e2).weight
            ilabel = e1.ilabel if e1 is not None else EPSILON
            olabel = e2.olabel if e2 is not None else EPSILON
            R.add_transition(src, Transition(ilabel, olabel, weight, intern(PairState(n1, n2, nf))))

    logger.debug(f"compose: {T1.num_states}x{T2.num_states} states -> {R.num_states} states, "
                 f"{R.num_transitions} transitions (filter={gate.name})")
    return R
