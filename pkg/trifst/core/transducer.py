"""
Weighted finite-state transducer data model

A transducer is the 8-tuple (Σ, Δ, Q, I, F, E, λ, ρ): per-state transition
lists in insertion order, initial weights λ and final weights ρ. Label 0 is ε
on both tapes. Machines are mutable until `freeze()` is called, after which
they are safe to share between threads.
"""
import heapq
from collections import deque
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from .exceptions import (
    FrozenMachineError,
    RegulationError,
    UnknownStateError,
)
from .semiring import PROBABILITY, TROPICAL, Semiring, require_nonzero

EPSILON = 0

Label = int
StateId = int


class Transition(NamedTuple):
    """One arc: (ilabel, olabel, weight, nextstate); the source is the owning state"""
    ilabel: Label
    olabel: Label
    weight: float
    nextstate: StateId


class TransducerStats(NamedTuple):
    """|T|_Q, |T|_E and the maximum out-degree d(T)"""
    num_states: int
    num_transitions: int
    max_out_degree: int

    def to_dict(self) -> Dict[str, int]:
        return self._asdict()


class Transducer:
    """Weighted transducer over a commutative semiring"""

    def __init__(self, semiring: Semiring = PROBABILITY):
        """
        Initialize an empty transducer

        Args:
            semiring: Weight algebra shared by all transitions
        """
        self.semiring = semiring
        self.states: List[List[Transition]] = []
        self.initials: Dict[StateId, float] = {}
        self.finals: Dict[StateId, float] = {}
        self._num_transitions = 0
        self._max_out_degree = 0
        self._frozen = False
        self._cache: Dict[str, object] = {}

    # Construction

    def add_state(self) -> StateId:
        """Append a state and return its id"""
        self._check_mutable()
        self.states.append([])
        self._cache.clear()
        return len(self.states) - 1

    def add_states(self, count: int) -> List[StateId]:
        return [self.add_state() for _ in range(count)]

    def add_transition(self, src: StateId, transition: Transition):
        """
        Append a transition leaving `src`

        Args:
            src: Source state id
            transition: Arc to append; its weight must not be the semiring zero
        """
        self._check_mutable()
        self._check_state(src)
        self._check_state(transition.nextstate)
        if transition.ilabel < 0 or transition.olabel < 0:
            raise ValueError(f"labels must be non-negative, got {transition.ilabel}:{transition.olabel}")
        weight = require_nonzero(self.semiring, transition.weight, "transition weight")
        arcs = self.states[src]
        arcs.append(transition._replace(weight=weight))
        self._num_transitions += 1
        if len(arcs) > self._max_out_degree:
            self._max_out_degree = len(arcs)
        self._cache.clear()

    def add_arc(self, src: StateId, ilabel: Label, olabel: Label, weight: float, dst: StateId):
        """Shorthand for add_transition(src, Transition(ilabel, olabel, weight, dst))"""
        self.add_transition(src, Transition(ilabel, olabel, weight, dst))

    def set_initial(self, state: StateId, weight: Optional[float] = None):
        self._check_mutable()
        self._check_state(state)
        weight = self.semiring.one if weight is None else weight
        self.initials[state] = require_nonzero(self.semiring, weight, "initial weight")
        self._cache.clear()

    def set_final(self, state: StateId, weight: Optional[float] = None):
        self._check_mutable()
        self._check_state(state)
        weight = self.semiring.one if weight is None else weight
        self.finals[state] = require_nonzero(self.semiring, weight, "final weight")
        self._cache.clear()

    def freeze(self) -> "Transducer":
        """Make the machine read-only; returns self for chaining"""
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> "Transducer":
        """Mutable deep copy"""
        other = Transducer(self.semiring)
        other.states = [list(arcs) for arcs in self.states]
        other.initials = dict(self.initials)
        other.finals = dict(self.finals)
        other._num_transitions = self._num_transitions
        other._max_out_degree = self._max_out_degree
        return other

    # Inspection

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_transitions(self) -> int:
        return self._num_transitions

    def transitions(self, state: StateId) -> List[Transition]:
        return self.states[state]

    def arcs(self) -> Iterable[Tuple[StateId, Transition]]:
        """Iterate (source, transition) over the whole machine"""
        for src, arcs in enumerate(self.states):
            for arc in arcs:
                yield src, arc

    def stats(self) -> TransducerStats:
        """Incrementally maintained statistics"""
        return TransducerStats(len(self.states), self._num_transitions, self._max_out_degree)

    def compute_stats(self) -> TransducerStats:
        """Statistics recomputed from the transition lists"""
        degrees = [len(arcs) for arcs in self.states]
        return TransducerStats(len(degrees), sum(degrees), max(degrees, default=0))

    def input_alphabet(self) -> List[Label]:
        return sorted({arc.ilabel for _, arc in self.arcs()} - {EPSILON})

    def output_alphabet(self) -> List[Label]:
        return sorted({arc.olabel for _, arc in self.arcs()} - {EPSILON})

    def cached(self, key: str, build):
        """
        Memoize a derived structure until the next mutation

        Args:
            key: Cache slot name
            build: Zero-argument factory called on a miss

        Returns:
            Cached value
        """
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _check_state(self, state: StateId):
        if not 0 <= state < len(self.states):
            raise UnknownStateError(f"unknown state {state} (machine has {len(self.states)} states)")

    def _check_mutable(self):
        if self._frozen:
            raise FrozenMachineError("machine is frozen")

    def __repr__(self):
        stats = self.stats()
        return (f"<Transducer {self.semiring.name} states={stats.num_states} "
                f"transitions={stats.num_transitions} d={stats.max_out_degree}>")


# Structural queries

def epsilon_topological_order(T: Transducer, mode: str = "both") -> Optional[List[StateId]]:
    """
    Topological order of the states under ε-moves, or None on a cycle

    Args:
        T: Machine to inspect
        mode: 'both' follows ε:ε arcs only, 'input' follows every arc with ε input

    Returns:
        State ids in an order compatible with the chosen ε-arcs
    """
    def build():
        if mode == "both":
            keep = lambda arc: arc.ilabel == EPSILON and arc.olabel == EPSILON
        else:
            keep = lambda arc: arc.ilabel == EPSILON
        return topological_order(T, keep)

    return T.cached(f"eps_topo:{mode}", build)


def topological_order(T: Transducer, keep=lambda arc: True) -> Optional[List[StateId]]:
    """Kahn's algorithm over the arcs selected by `keep`; None when cyclic"""
    indegree = [0] * T.num_states
    for _, arc in T.arcs():
        if keep(arc):
            indegree[arc.nextstate] += 1
    queue = deque(q for q in range(T.num_states) if indegree[q] == 0)
    order: List[StateId] = []
    while queue:
        q = queue.popleft()
        order.append(q)
        for arc in T.states[q]:
            if keep(arc):
                indegree[arc.nextstate] -= 1
                if indegree[arc.nextstate] == 0:
                    queue.append(arc.nextstate)
    return order if len(order) == T.num_states else None


def is_regulated(T: Transducer) -> bool:
    """True iff T has no cycle made only of ε:ε transitions"""
    return epsilon_topological_order(T, "both") is not None


def is_acyclic(T: Transducer) -> bool:
    return T.cached("acyclic", lambda: topological_order(T) is not None)


def is_acceptor(T: Transducer) -> bool:
    """Every transition carries identical input and output labels"""
    return all(arc.ilabel == arc.olabel for _, arc in T.arcs())


def evaluate(T: Transducer, x: Sequence[Label], y: Sequence[Label]) -> float:
    """
    Weight T(x, y): ⊕ over accepting paths labeled (x, y) of λ ⊗ w ⊗ ρ

    Forward dynamic program over configurations (state, i, j); cells are
    visited in lexicographic (i, j) order and, inside a cell, in ε-topological
    order so ε:ε arcs are relaxed before they are read.

    Args:
        T: Regulated machine
        x: Input label sequence (no ε)
        y: Output label sequence (no ε)

    Returns:
        The semiring zero when no path exists
    """
    order = epsilon_topological_order(T, "both")
    if order is None:
        logger.error("evaluate() refused: machine has an ε-cycle")
        raise RegulationError("machine admits an ε-cycle")
    position = T.cached("eps_position:both", lambda: {q: k for k, q in enumerate(order)})
    K = T.semiring
    n, m = len(x), len(y)
    cells: Dict[Tuple[int, int], Dict[StateId, float]] = {(0, 0): dict(T.initials)}
    for i in range(n + 1):
        for j in range(m + 1):
            cell = cells.pop((i, j), None)
            if not cell:
                continue
            # states of the cell in ε-topological order, including ones added by ε:ε arcs
            heap = [(position[q], q) for q in cell]
            heapq.heapify(heap)
            while heap:
                _, q = heapq.heappop(heap)
                w = cell[q]
                for arc in T.states[q]:
                    di = 0 if arc.ilabel == EPSILON else 1
                    dj = 0 if arc.olabel == EPSILON else 1
                    if di and (i >= n or x[i] != arc.ilabel):
                        continue
                    if dj and (j >= m or y[j] != arc.olabel):
                        continue
                    target = cell if not (di or dj) else cells.setdefault((i + di, j + dj), {})
                    value = K.times(w, arc.weight)
                    prev = target.get(arc.nextstate)
                    if prev is None:
                        target[arc.nextstate] = value
                        if target is cell:
                            heapq.heappush(heap, (position[arc.nextstate], arc.nextstate))
                    else:
                        target[arc.nextstate] = K.plus(prev, value)
            if i == n and j == m:
                return K.sum(K.times(w, T.finals[q]) for q, w in cell.items() if q in T.finals)
    return K.zero


# Factories

def identity(alphabet_size: int, semiring: Semiring = PROBABILITY) -> Transducer:
    """Single state with x:x self-loops for labels 1..alphabet_size, initial and final"""
    T = Transducer(semiring)
    q = T.add_state()
    for label in range(1, alphabet_size + 1):
        T.add_arc(q, label, label, semiring.one, q)
    T.set_initial(q)
    T.set_final(q)
    return T


def linear_acceptor(labels: Sequence[Label], semiring: Semiring = PROBABILITY,
                    weight: Optional[float] = None) -> Transducer:
    """Acceptor for exactly one label sequence"""
    T = Transducer(semiring)
    q = T.add_state()
    T.set_initial(q)
    for label in labels:
        nxt = T.add_state()
        T.add_arc(q, label, label, semiring.one, nxt)
        q = nxt
    T.set_final(q, weight)
    return T


def string_set_acceptor(strings: Iterable[Sequence[Label]], semiring: Semiring = PROBABILITY) -> Transducer:
    """Acceptor for a finite set of label sequences, one branch per string"""
    T = Transducer(semiring)
    start = T.add_state()
    T.set_initial(start)
    for labels in strings:
        q = start
        for label in labels:
            nxt = T.add_state()
            T.add_arc(q, label, label, semiring.one, nxt)
            q = nxt
        T.set_final(q)
    return T


def invert(T: Transducer) -> Transducer:
    """Swap input and output labels"""
    R = T.copy()
    R.states = [[arc._replace(ilabel=arc.olabel, olabel=arc.ilabel) for arc in arcs] for arcs in R.states]
    return R


def random_acyclic(num_states: int, alphabet_size: int, eps_prob: float = 0.2, density: float = 0.5,
                   seed: int = 0, semiring: Semiring = PROBABILITY, acceptor: bool = False) -> Transducer:
    """
    Seeded random topologically ordered machine

    Arcs only go from lower to higher state ids, so the result is acyclic and
    therefore regulated. State 0 is initial; the last state is always final and
    every other state is final with probability 0.3.

    Args:
        num_states: Number of states (>= 1)
        alphabet_size: Labels are drawn from 1..alphabet_size
        eps_prob: Probability that a label is ε
        density: Probability of an arc between two ordered states
        seed: Generator seed
        semiring: Weight algebra (tropical weights drawn from [0, 5), others from [0.1, 1))
        acceptor: Use identical input and output labels

    Returns:
        The generated machine
    """
    if num_states < 1 or alphabet_size < 1:
        raise ValueError("num_states and alphabet_size must be positive")
    if not 0.0 <= eps_prob <= 1.0:
        raise ValueError("eps_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)

    def draw_label() -> Label:
        if rng.random() < eps_prob:
            return EPSILON
        return int(rng.integers(1, alphabet_size + 1))

    def draw_weight() -> float:
        if semiring == TROPICAL:
            return float(rng.integers(0, 5))
        return float(np.round(rng.uniform(0.1, 1.0), 3))

    T = Transducer(semiring)
    T.add_states(num_states)
    T.set_initial(0)
    for src in range(num_states):
        for dst in range(src + 1, num_states):
            if rng.random() < density:
                ilabel = draw_label()
                olabel = ilabel if acceptor else draw_label()
                T.add_arc(src, ilabel, olabel, draw_weight(), dst)
        if src == num_states - 1 or rng.random() < 0.3:
            T.set_final(src, draw_weight() if semiring != TROPICAL else 0.0)
    return T
