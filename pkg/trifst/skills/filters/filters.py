"""
The ε-filters used by composition

2-way moves (interface between a left and a right machine):
    a  left stays (virtual ε₁ loop), right advances on an ε input
    b  left advances on an ε output, right stays (virtual ε₂ loop)
    c  both advance on ε
    x  real-symbol match
    d  (M1 only) left stays, right stays on its input side while its own
       right neighbour advances
    e, f  (M2 only) left stays through the (ε₂:ε₀) loop while the right
       machine stays / advances on ε

3-way moves are triplets over {0, 1, 'x'}: 0 stays, 1 advances on ε,
'x' takes part in a real-symbol match on an adjacent interface.
"""
import itertools
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from loguru import logger

from ...core.exceptions import FilterError, StrategyError
from .automaton import FilterAutomaton, derive_filter

X = "x"

MOVE2_ALPHABET: Tuple[str, ...] = ("a", "b", "c", X)
M1_ALPHABET: Tuple[str, ...] = ("a", "b", "c", "d", X)
M2_ALPHABET: Tuple[str, ...] = ("a", "b", "c", "e", "f", X)

Move3 = Tuple[object, object, object]

STAY_MOVE: Move3 = (0, 0, 0)
EPSILON_MOVES: Tuple[Move3, ...] = tuple(m for m in itertools.product((0, 1), repeat=3) if m != STAY_MOVE)
MATCH_MOVES: Tuple[Move3, ...] = ((X, X, 0), (X, X, 1), (0, X, X), (1, X, X), (X, X, X))
MOVE3_ALPHABET: Tuple[Move3, ...] = EPSILON_MOVES + MATCH_MOVES
W_DERIVATION_ALPHABET: Tuple[Move3, ...] = (STAY_MOVE,) + MOVE3_ALPHABET

# 3-way move -> (M1 symbol on the T1/T2 interface, M2 symbol on the T2/T3 interface)
MOVE_TO_PAIR: Dict[Move3, Tuple[str, str]] = {
    (1, 0, 0): ("b", "e"),
    (0, 1, 0): ("a", "b"),
    (0, 0, 1): ("d", "a"),
    (1, 1, 0): ("c", "b"),
    (1, 0, 1): ("b", "f"),
    (0, 1, 1): ("a", "c"),
    (1, 1, 1): ("c", "c"),
    (X, X, 0): (X, "b"),
    (X, X, 1): (X, "c"),
    (0, X, X): ("a", X),
    (1, X, X): ("c", X),
    (X, X, X): (X, X),
}

_M_TABLE: Dict[Tuple[int, str], int] = {
    (0, "a"): 1, (0, "b"): 2, (0, "c"): 0, (0, X): 0,
    (1, "a"): 1, (1, X): 0,
    (2, "b"): 2, (2, X): 0,
}


def m_forbidden_factors() -> List[Tuple[str, str]]:
    """Factors ruled out by M: no ε-advance of one side right after the other side moved alone"""
    return [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")]


def w_forbidden_factors() -> List[Tuple[Move3, ...]]:
    """
    Factors ruled out by W over the W_DERIVATION_ALPHABET

    - a coordinate that stayed cannot advance on ε in the next move
    - after T1 and T2 both stayed, T1/T2 cannot match next unless T3 matches
      too; symmetrically for T2/T3 after T2 and T3 stayed
    - the all-stay triplet never occurs
    """
    factors: List[Tuple[Move3, ...]] = []
    for u, v in itertools.product(W_DERIVATION_ALPHABET, repeat=2):
        if any(u[i] == 0 and v[i] == 1 for i in range(3)):
            factors.append((u, v))
        elif u[0] == 0 and u[1] == 0 and v in ((X, X, 0), (X, X, 1)):
            factors.append((u, v))
        elif u[1] == 0 and u[2] == 0 and v in ((0, X, X), (1, X, X)):
            factors.append((u, v))
    factors.append((STAY_MOVE,))
    return factors


def filter_m() -> FilterAutomaton:
    """The 2-way filter M: three states, unique path through every ε-grid"""
    return FilterAutomaton(MOVE2_ALPHABET, _M_TABLE, 3, name="M")


def filter_m1() -> FilterAutomaton:
    """M with a (ε₁:ε₀) self-loop, symbol 'd', at every state"""
    transitions = dict(_M_TABLE)
    for state in range(3):
        transitions[(state, "d")] = state
    return FilterAutomaton(M1_ALPHABET, transitions, 3, name="M1")


def filter_m2() -> FilterAutomaton:
    """M with (ε₀:ε₂) beside each (ε₂:ε₂) and (ε₀:ε₁) beside each (ε₂:ε₁)"""
    transitions = dict(_M_TABLE)
    for (state, symbol), target in _M_TABLE.items():
        if symbol == "b":
            transitions[(state, "e")] = target
        elif symbol == "c":
            transitions[(state, "f")] = target
    return FilterAutomaton(M2_ALPHABET, transitions, 3, name="M2")


@lru_cache(maxsize=1)
def filter_w() -> FilterAutomaton:
    """The 3-way filter W, derived once from its forbidden factors"""
    W = derive_filter(W_DERIVATION_ALPHABET, w_forbidden_factors(), name="W")
    logger.debug(f"Derived {W}")
    return W


class PairFilter:
    """
    Left-to-right filter pair (M1, M2) driven by 3-way moves

    A state is (f1, f2); each move is split into its two interface symbols
    and both automata must accept it.
    """

    def __init__(self):
        self.left = filter_m1()
        self.right = filter_m2()
        self.initial: Tuple[int, int] = (self.left.initial, self.right.initial)
        self.name = "M1xM2"

    def step(self, state: Tuple[int, int], move: Move3) -> Optional[Tuple[int, int]]:
        pair = MOVE_TO_PAIR.get(move)
        if pair is None:
            raise FilterError(f"illegal 3-way move {move!r}")
        f1 = self.left.step(state[0], pair[0])
        if f1 is None:
            return None
        f2 = self.right.step(state[1], pair[1])
        if f2 is None:
            return None
        return f1, f2

    def __repr__(self):
        return f"<PairFilter {self.left.name}x{self.right.name}>"


def get_filter(mode: str):
    """
    Move gate for a filter mode

    Args:
        mode: 'single' (W) or 'pair' (M1, M2)

    Returns:
        Object with `initial` and `step(state, move)`
    """
    if mode == "single":
        return filter_w()
    if mode == "pair":
        return PairFilter()
    raise StrategyError(f"unknown filter mode '{mode}' (expected pair or single)")
