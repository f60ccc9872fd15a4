"""
Graph algorithms over transducers: shortest distance, path sums, trimming,
transduction of a single input and evaluation-based equivalence.
"""
import heapq
import itertools
from collections import deque
from typing import Dict, List, Sequence, Set, Tuple

from loguru import logger

from .exceptions import CyclicMachineError, RegulationError, SemiringMismatchError
from .semiring import DEFAULT_TOLERANCE, TROPICAL
from .transducer import (
    EPSILON,
    Label,
    StateId,
    Transducer,
    epsilon_topological_order,
    evaluate,
    is_regulated,
    topological_order,
)


def shortest_distances(T: Transducer) -> List[float]:
    """
    Per-state tropical shortest distance from the initial states (λ included)

    Dijkstra relaxation; valid because tropical weights are non-negative.

    Args:
        T: Machine over the tropical semiring

    Returns:
        Distance vector indexed by state id (inf when unreachable)
    """
    if T.semiring != TROPICAL:
        raise SemiringMismatchError(f"shortest distance needs the tropical semiring, got {T.semiring.name}")
    dist = [TROPICAL.zero] * T.num_states
    heap: List[Tuple[float, StateId]] = []
    for q, w in T.initials.items():
        if w < dist[q]:
            dist[q] = w
            heapq.heappush(heap, (w, q))
    done = [False] * T.num_states
    while heap:
        d, q = heapq.heappop(heap)
        if done[q]:
            continue
        done[q] = True
        for arc in T.states[q]:
            nd = d + arc.weight
            if nd < dist[arc.nextstate]:
                dist[arc.nextstate] = nd
                heapq.heappush(heap, (nd, arc.nextstate))
    return dist


def shortest_distance(T: Transducer) -> float:
    """min over accepting paths of λ ⊗ w ⊗ ρ; inf if no final state is reachable"""
    dist = shortest_distances(T)
    return min((dist[q] + rho for q, rho in T.finals.items()), default=TROPICAL.zero)


def path_sum(T: Transducer) -> float:
    """
    ⊕ over all accepting paths of an acyclic machine

    Args:
        T: Acyclic machine, any semiring

    Returns:
        Total weight (semiring zero for an empty machine)
    """
    order = topological_order(T)
    if order is None:
        logger.error("path_sum() refused: machine is cyclic")
        raise CyclicMachineError("path_sum requires an acyclic machine")
    K = T.semiring
    forward: Dict[StateId, float] = dict(T.initials)
    total = K.zero
    for q in order:
        w = forward.get(q)
        if w is None:
            continue
        if q in T.finals:
            total = K.plus(total, K.times(w, T.finals[q]))
        for arc in T.states[q]:
            value = K.times(w, arc.weight)
            prev = forward.get(arc.nextstate)
            forward[arc.nextstate] = value if prev is None else K.plus(prev, value)
    return total


def accessible_states(T: Transducer) -> Set[StateId]:
    seen = set(T.initials)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for arc in T.states[q]:
            if arc.nextstate not in seen:
                seen.add(arc.nextstate)
                queue.append(arc.nextstate)
    return seen


def coaccessible_states(T: Transducer) -> Set[StateId]:
    reverse: List[List[StateId]] = [[] for _ in range(T.num_states)]
    for src, arc in T.arcs():
        reverse[arc.nextstate].append(src)
    seen = set(T.finals)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for p in reverse[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def trim(T: Transducer) -> Transducer:
    """
    Remove states that are not both accessible and coaccessible

    Surviving states keep their relative order.

    Args:
        T: Machine to trim

    Returns:
        New machine, evaluation-equivalent to T
    """
    keep = sorted(accessible_states(T) & coaccessible_states(T))
    renumber = {old: new for new, old in enumerate(keep)}
    R = Transducer(T.semiring)
    R.add_states(len(keep))
    for old in keep:
        for arc in T.states[old]:
            if arc.nextstate in renumber:
                R.add_transition(renumber[old], arc._replace(nextstate=renumber[arc.nextstate]))
    for old, w in T.initials.items():
        if old in renumber:
            R.set_initial(renumber[old], w)
    for old, w in T.finals.items():
        if old in renumber:
            R.set_final(renumber[old], w)
    if len(keep) < T.num_states:
        logger.debug(f"trim removed {T.num_states - len(keep)} of {T.num_states} states")
    return R


def transduce(T: Transducer, x: Sequence[Label]) -> Dict[Tuple[Label, ...], float]:
    """
    All outputs of T on input x with their weights

    Requires that no cycle reads only ε on the input tape, so the set of paths
    consuming x is finite.

    Args:
        T: Machine to apply
        x: Input label sequence

    Returns:
        Map output tuple -> T(x, y), zero-weight entries omitted
    """
    order = epsilon_topological_order(T, "input")
    if order is None:
        raise RegulationError("machine has a cycle on ε input; output set may be infinite")
    K = T.semiring
    layers: List[Dict[StateId, Dict[Tuple[Label, ...], float]]] = [{} for _ in range(len(x) + 1)]
    layers[0] = {q: {(): w} for q, w in T.initials.items()}
    result: Dict[Tuple[Label, ...], float] = {}
    for i, layer in enumerate(layers):
        for q in order:
            outputs = layer.get(q)
            if not outputs:
                continue
            for arc in T.states[q]:
                if arc.ilabel == EPSILON:
                    target = layer
                elif i < len(x) and arc.ilabel == x[i]:
                    target = layers[i + 1]
                else:
                    continue
                bucket = target.setdefault(arc.nextstate, {})
                for y, w in outputs.items():
                    y2 = y if arc.olabel == EPSILON else y + (arc.olabel,)
                    value = K.times(w, arc.weight)
                    prev = bucket.get(y2)
                    bucket[y2] = value if prev is None else K.plus(prev, value)
        if i == len(x):
            for q, outputs in layer.items():
                if q in T.finals:
                    for y, w in outputs.items():
                        value = K.times(w, T.finals[q])
                        prev = result.get(y)
                        result[y] = value if prev is None else K.plus(prev, value)
    return {y: w for y, w in result.items() if not K.is_zero(w)}


def label_sequences(alphabet: Sequence[Label], max_len: int):
    """All label tuples over `alphabet` of length 0..max_len, shortest first"""
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def equivalent_by_evaluation(A: Transducer, B: Transducer, max_len: int = 3,
                             tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    Compare T(x, y) of two machines on every pair up to max_len

    Args:
        A: First machine
        B: Second machine (same semiring)
        max_len: Longest input and output sequence tried
        tol: Absolute tolerance

    Returns:
        True if all weights agree
    """
    if A.semiring != B.semiring:
        raise SemiringMismatchError(f"{A.semiring.name} vs {B.semiring.name}")
    if not (is_regulated(A) and is_regulated(B)):
        raise RegulationError("equivalence check needs regulated machines")
    inputs = sorted(set(A.input_alphabet()) | set(B.input_alphabet()))
    outputs = sorted(set(A.output_alphabet()) | set(B.output_alphabet()))
    K = A.semiring
    for x in label_sequences(inputs, max_len):
        for y in label_sequences(outputs, max_len):
            a, b = evaluate(A, x, y), evaluate(B, x, y)
            if not K.approx_equal(a, b, tol):
                logger.debug(f"machines differ on {x}/{y}: {a} vs {b}")
                return False
    return True
