"""
3-way composition T1 ∘ T2 ∘ T3 in a single pass

Result states are (q1, q2, q3, filter-state). Each expansion enumerates the
legal moves of the three machines at once:

    {0,1}³ moves  every coordinate stays (0) or advances on ε (1)
    (x,x,0|1)     T1/T2 match on a real symbol, T2 outputs ε, T3 stays or
                  advances on an ε input
    (0|1,x,x)     T2/T3 match on a real symbol, T2 reads ε, T1 stays or
                  advances on an ε output
    (x,x,x)       both interfaces match

Matches are found laterally (pairs of T1/T3 transitions probe T2's
(input, output) index), centrally (T2's transitions probe T1's output index
and T3's input index) or per state by whichever is cheaper. The ε-filter
(W, or the M1/M2 pair) decides which interleavings of ε-moves survive.
"""
from collections import deque
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Hashable, List, NamedTuple, Optional, Tuple

from loguru import logger

from ...core.exceptions import EpsilonError, SemiringMismatchError, StrategyError, UnknownStateError
from ...core.transducer import EPSILON, StateId, Transducer, Transition
from ..filters.filters import X, get_filter
from .compose2 import compose
from .label_index import Side, build_label_index

FILTER_MODES = ("pair", "single")


class Strategy(Enum):
    """How 3-way matches are searched at a state"""
    LATERAL = "lateral"
    CENTRAL = "central"
    COMBINED = "combined"
    AUTO = "auto"

    @classmethod
    def parse(cls, value) -> "Strategy":
        if isinstance(value, Strategy):
            strategy = value
        else:
            try:
                strategy = cls(str(value).strip().lower())
            except ValueError:
                raise StrategyError(f"unknown strategy '{value}' (expected one of {[s.value for s in cls]})")
        return cls.COMBINED if strategy is cls.AUTO else strategy


@dataclass
class ComposeCounters:
    """Work done by a 3-way composition"""
    states_expanded: int = 0
    match_probes: int = 0
    transitions_emitted: int = 0
    queue_peak: int = 0

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


class TripleState(NamedTuple):
    q1: StateId
    q2: StateId
    q3: StateId
    eps: Hashable


class Move(NamedTuple):
    """One filter-approved combination; absent transitions stand for stays"""
    move: tuple
    e1: Optional[Transition]
    e2: Optional[Transition]
    e3: Optional[Transition]
    target: TripleState


def _check_machines(T1: Transducer, T2: Transducer, T3: Transducer):
    if not (T1.semiring == T2.semiring == T3.semiring):
        names = ", ".join(T.semiring.name for T in (T1, T2, T3))
        logger.error(f"3-way composition refused: mixed semirings ({names})")
        raise SemiringMismatchError(f"3-way composition needs one semiring, got {names}")


def _check_filter_mode(filter_mode: str) -> str:
    if filter_mode not in FILTER_MODES:
        raise StrategyError(f"unknown filter mode '{filter_mode}' (expected pair or single)")
    return filter_mode


class LazyComposition3:
    """
    On-demand 3-way composition

    States are numbered as they are discovered; a state's transitions are
    computed the first time it is expanded and memoized. Not thread-safe:
    one handle must not be expanded from several threads at once.
    """

    def __init__(self, T1: Transducer, T2: Transducer, T3: Transducer,
                 strategy=Strategy.COMBINED, filter_mode: str = "single"):
        """
        Initialize lazy composition

        Args:
            T1: Left machine
            T2: Middle machine
            T3: Right machine
            strategy: lateral, central, combined or auto
            filter_mode: 'single' (W) or 'pair' (M1 and M2)
        """
        _check_machines(T1, T2, T3)
        self.T1, self.T2, self.T3 = T1, T2, T3
        self.semiring = T1.semiring
        self.strategy = Strategy.parse(strategy)
        self.filter_mode = _check_filter_mode(filter_mode)
        self.gate = get_filter(filter_mode)
        self.counters = ComposeCounters()

        self._out1 = build_label_index(T1, Side.OUTPUT)
        self._pair2 = build_label_index(T2, Side.PAIR)
        self._in3 = build_label_index(T3, Side.INPUT)

        self.result = Transducer(self.semiring)
        self._ids: Dict[TripleState, StateId] = {}
        self._tuples: List[TripleState] = []
        self._expanded: Dict[StateId, List[Transition]] = {}

        K = self.semiring
        for q1, w1 in T1.initials.items():
            for q2, w2 in T2.initials.items():
                for q3, w3 in T3.initials.items():
                    sid = self._intern(TripleState(q1, q2, q3, self.gate.initial))
                    self.result.set_initial(sid, K.product((w1, w2, w3)))

    # State bookkeeping

    def _intern(self, state: TripleState) -> StateId:
        sid = self._ids.get(state)
        if sid is None:
            sid = self.result.add_state()
            self._ids[state] = sid
            self._tuples.append(state)
            q1, q2, q3, _ = state
            if q1 in self.T1.finals and q2 in self.T2.finals and q3 in self.T3.finals:
                rho = (self.T1.finals[q1], self.T2.finals[q2], self.T3.finals[q3])
                self.result.set_final(sid, self.semiring.product(rho))
        return sid

    def initial_states(self) -> List[StateId]:
        return sorted(self.result.initials)

    def state_tuple(self, sid: StateId) -> TripleState:
        """(q1, q2, q3, filter-state) behind a result state id"""
        if not 0 <= sid < len(self._tuples):
            raise UnknownStateError(f"state {sid} has not been discovered")
        return self._tuples[sid]

    @property
    def num_states(self) -> int:
        return len(self._tuples)

    def is_expanded(self, sid: StateId) -> bool:
        return sid in self._expanded

    # Move enumeration

    def _use_lateral(self, q1: StateId, q2: StateId, q3: StateId) -> bool:
        if self.strategy is Strategy.LATERAL:
            return True
        if self.strategy is Strategy.CENTRAL:
            return False
        d1 = len(self.T1.states[q1])
        d3 = len(self.T3.states[q3])
        return d1 * d3 <= len(self.T2.states[q2])

    def _lateral_matches(self, q1, q2, q3, eps1, eps3, found: list):
        pair2 = self._pair2
        real1 = [e1 for e1 in self.T1.states[q1] if e1.olabel != EPSILON]
        real3 = [e3 for e3 in self.T3.states[q3] if e3.ilabel != EPSILON]
        probes = 0
        for e1 in real1:
            for e3 in real3:
                probes += 1
                for e2 in pair2.lookup(q2, (e1.olabel, e3.ilabel)):
                    found.append(((X, X, X), e1, e2, e3))
        for e1 in real1:
            probes += 1
            for e2 in pair2.lookup(q2, (e1.olabel, EPSILON)):
                found.append(((X, X, 0), e1, e2, None))
                found.extend(((X, X, 1), e1, e2, e3) for e3 in eps3)
        for e3 in real3:
            probes += 1
            for e2 in pair2.lookup(q2, (EPSILON, e3.ilabel)):
                found.append(((0, X, X), None, e2, e3))
                found.extend(((1, X, X), e1, e2, e3) for e1 in eps1)
        return probes

    def _central_matches(self, q1, q2, q3, eps1, eps3, found: list):
        out1, in3 = self._out1, self._in3
        probes = 0
        for e2 in self.T2.states[q2]:
            i2, o2 = e2.ilabel, e2.olabel
            if i2 == EPSILON and o2 == EPSILON:
                continue
            probes += 1
            if i2 != EPSILON and o2 != EPSILON:
                for e1 in out1.lookup(q1, i2):
                    found.extend(((X, X, X), e1, e2, e3) for e3 in in3.lookup(q3, o2))
            elif i2 != EPSILON:
                for e1 in out1.lookup(q1, i2):
                    found.append(((X, X, 0), e1, e2, None))
                    found.extend(((X, X, 1), e1, e2, e3) for e3 in eps3)
            else:
                for e3 in in3.lookup(q3, o2):
                    found.append(((0, X, X), None, e2, e3))
                    found.extend(((1, X, X), e1, e2, e3) for e1 in eps1)
        return probes

    def enumerate_moves(self, state: TripleState) -> List[Move]:
        """
        Filter-approved moves out of a result state

        Args:
            state: (q1, q2, q3, filter-state)

        Returns:
            Moves with the transitions taken and the target state
        """
        q1, q2, q3, f = state
        eps1 = self._out1.lookup(q1, EPSILON)
        eps2 = self._pair2.lookup(q2, (EPSILON, EPSILON))
        eps3 = self._in3.lookup(q3, EPSILON)

        found: List[tuple] = []
        for e1 in (None,) + eps1:
            for e2 in (None,) + eps2:
                for e3 in (None,) + eps3:
                    if e1 is None and e2 is None and e3 is None:
                        continue
                    found.append(((int(e1 is not None), int(e2 is not None), int(e3 is not None)), e1, e2, e3))
        probes = 1
        if self._use_lateral(q1, q2, q3):
            probes += self._lateral_matches(q1, q2, q3, eps1, eps3, found)
        else:
            probes += self._central_matches(q1, q2, q3, eps1, eps3, found)
        self.counters.match_probes += probes

        moves: List[Move] = []
        for move, e1, e2, e3 in found:
            nf = self.gate.step(f, move)
            if nf is None:
                continue
            target = TripleState(e1.nextstate if e1 is not None else q1,
                                 e2.nextstate if e2 is not None else q2,
                                 e3.nextstate if e3 is not None else q3,
                                 nf)
            moves.append(Move(move, e1, e2, e3, target))
        return moves

    # Expansion

    def expand_state(self, sid: StateId) -> List[Transition]:
        """
        Transitions leaving a result state, computed once

        Args:
            sid: Discovered state id

        Returns:
            The state's transitions (targets are interned but not expanded)
        """
        cached = self._expanded.get(sid)
        if cached is not None:
            return cached
        state = self.state_tuple(sid)
        K = self.semiring
        arcs: List[Transition] = []
        for move in self.enumerate_moves(state):
            present = [e for e in (move.e1, move.e2, move.e3) if e is not None]
            weight = K.product(e.weight for e in present)
            ilabel = move.e1.ilabel if move.e1 is not None else EPSILON
            olabel = move.e3.olabel if move.e3 is not None else EPSILON
            arc = Transition(ilabel, olabel, weight, self._intern(move.target))
            self.result.add_transition(sid, arc)
            arcs.append(arc)
        self._expanded[sid] = arcs
        self.counters.states_expanded += 1
        self.counters.transitions_emitted += len(arcs)
        return arcs

    def expand_all(self) -> "LazyComposition3":
        """Expand every reachable state in FIFO order, resuming after partial expansion"""
        queue = deque(sid for sid in range(self.num_states) if sid not in self._expanded)
        queued = set(queue)
        while queue:
            self.counters.queue_peak = max(self.counters.queue_peak, len(queue))
            sid = queue.popleft()
            for arc in self.expand_state(sid):
                if arc.nextstate not in queued and arc.nextstate not in self._expanded:
                    queued.add(arc.nextstate)
                    queue.append(arc.nextstate)
        return self

    def to_transducer(self) -> Transducer:
        """Fully expanded result machine"""
        self.expand_all()
        return self.result


def lazy_compose3(T1: Transducer, T2: Transducer, T3: Transducer, strategy=Strategy.COMBINED,
                  filter_mode: str = "single") -> LazyComposition3:
    """On-demand 3-way composition handle; nothing is expanded yet"""
    return LazyComposition3(T1, T2, T3, strategy, filter_mode)


def compose3(T1: Transducer, T2: Transducer, T3: Transducer, strategy=Strategy.COMBINED,
             filter_mode: str = "single") -> Tuple[Transducer, ComposeCounters]:
    """
    Eager 3-way composition

    Args:
        T1: Left machine
        T2: Middle machine
        T3: Right machine
        strategy: lateral, central, combined or auto
        filter_mode: 'single' (W) or 'pair' (M1 and M2)

    Returns:
        (result R with R(x, y) = ⊕_{z,w} T1(x, z) ⊗ T2(z, w) ⊗ T3(w, y), counters)
    """
    lazy = LazyComposition3(T1, T2, T3, strategy, filter_mode)
    R = lazy.to_transducer()
    logger.debug(f"compose3[{lazy.strategy.value}/{filter_mode}]: {R.num_states} states, "
                 f"{R.num_transitions} transitions, {lazy.counters.match_probes} probes")
    return R, lazy.counters


def _epsilon_sides(T1: Transducer, T2: Transducer, T3: Transducer) -> List[str]:
    sides = []
    if any(arc.olabel == EPSILON for _, arc in T1.arcs()):
        sides.append("T1 output")
    if any(arc.ilabel == EPSILON or arc.olabel == EPSILON for _, arc in T2.arcs()):
        sides.append("T2")
    if any(arc.ilabel == EPSILON for _, arc in T3.arcs()):
        sides.append("T3 input")
    return sides


def compose3_eps_free(T1: Transducer, T2: Transducer, T3: Transducer,
                      strategy=Strategy.COMBINED) -> Tuple[Transducer, ComposeCounters]:
    """
    3-way composition of machines without ε on the matched tapes

    Plain worklist over (q1, q2, q3); every result transition is a triple of
    transitions with o[e1] = i[e2] and o[e2] = i[e3].

    Args:
        T1: Left machine, no ε outputs
        T2: Middle machine, no ε labels
        T3: Right machine, no ε inputs
        strategy: lateral, central, combined or auto

    Returns:
        (result machine, counters)
    """
    _check_machines(T1, T2, T3)
    strategy = Strategy.parse(strategy)
    sides = _epsilon_sides(T1, T2, T3)
    if sides:
        logger.error(f"compose3_eps_free() refused: ε on {', '.join(sides)}")
        raise EpsilonError(f"ε labels on {', '.join(sides)}; use compose3 instead")

    K = T1.semiring
    out1 = build_label_index(T1, Side.OUTPUT)
    pair2 = build_label_index(T2, Side.PAIR)
    in3 = build_label_index(T3, Side.INPUT)
    counters = ComposeCounters()
    R = Transducer(K)
    ids: Dict[Tuple[StateId, StateId, StateId], StateId] = {}
    queue: deque = deque()

    def intern(state) -> StateId:
        sid = ids.get(state)
        if sid is None:
            sid = R.add_state()
            ids[state] = sid
            queue.append(state)
            q1, q2, q3 = state
            if q1 in T1.finals and q2 in T2.finals and q3 in T3.finals:
                R.set_final(sid, K.product((T1.finals[q1], T2.finals[q2], T3.finals[q3])))
        return sid

    for q1, w1 in T1.initials.items():
        for q2, w2 in T2.initials.items():
            for q3, w3 in T3.initials.items():
                R.set_initial(intern((q1, q2, q3)), K.product((w1, w2, w3)))

    while queue:
        counters.queue_peak = max(counters.queue_peak, len(queue))
        state = queue.popleft()
        q1, q2, q3 = state
        src = ids[state]
        E1, E2, E3 = T1.states[q1], T2.states[q2], T3.states[q3]
        if strategy is Strategy.LATERAL or (strategy is Strategy.COMBINED and len(E1) * len(E3) <= len(E2)):
            triples = []
            for e1 in E1:
                for e3 in E3:
                    counters.match_probes += 1
                    triples.extend((e1, e2, e3) for e2 in pair2.lookup(q2, (e1.olabel, e3.ilabel)))
        else:
            triples = []
            for e2 in E2:
                counters.match_probes += 1
                for e1 in out1.lookup(q1, e2.ilabel):
                    triples.extend((e1, e2, e3) for e3 in in3.lookup(q3, e2.olabel))
        for e1, e2, e3 in triples:
            weight = K.product((e1.weight, e2.weight, e3.weight))
            target = intern((e1.nextstate, e2.nextstate, e3.nextstate))
            R.add_transition(src, Transition(e1.ilabel, e3.olabel, weight, target))
            counters.transitions_emitted += 1
        counters.states_expanded += 1

    logger.debug(f"compose3_eps_free[{strategy.value}]: {R.num_states} states, {R.num_transitions} transitions")
    return R, counters


class CascadeResult(NamedTuple):
    result: Transducer
    intermediate_transitions: int
    intermediate_states: int


def compose_cascade(T1: Transducer, T2: Transducer, T3: Transducer) -> CascadeResult:
    """
    Standard left-to-right cascade (T1 ∘ T2) ∘ T3

    Args:
        T1: Left machine
        T2: Middle machine
        T3: Right machine

    Returns:
        Final machine plus the size of the materialized T1 ∘ T2
    """
    intermediate = compose(T1, T2)
    R = compose(intermediate, T3)
    return CascadeResult(R, intermediate.num_transitions, intermediate.num_states)
