"""
Canonical representatives of 3-way move sequences

Two move sequences are equivalent when every tape performs the same actions
in the same order. The canonical member takes each ε-advance and each match
as early as possible; it is the one member accepted by filter W.
"""
from typing import List, Sequence, Tuple

from ...core.exceptions import FilterError
from .filters import EPSILON_MOVES, MOVE3_ALPHABET, Move3, X

# Per-tape action codes. T1 and T3 either advance on ε ('1') or match ('x').
# T2 advances on ε ('1') or matches with T1 only ('l'), T3 only ('r') or both ('c').
TapeActions = Tuple[Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]

_MIDDLE_MATCH = {(X, X, 0): "l", (X, X, 1): "l", (0, X, X): "r", (1, X, X): "r", (X, X, X): "c"}


def _validate(moves: Sequence[Move3]) -> List[Move3]:
    result = []
    for move in moves:
        move = tuple(move)
        if move not in MOVE3_ALPHABET:
            raise FilterError(f"illegal 3-way move {move!r}")
        result.append(move)
    return result


def tape_actions(moves: Sequence[Move3]) -> TapeActions:
    """
    Project a move sequence onto the three tapes

    Args:
        moves: 3-way move triplets

    Returns:
        Action strings of T1, T2 and T3
    """
    tapes: Tuple[List[str], List[str], List[str]] = ([], [], [])
    for move in _validate(moves):
        for i in (0, 2):
            if move[i] == 1:
                tapes[i].append("1")
            elif move[i] == X:
                tapes[i].append("x")
        if move[1] == 1:
            tapes[1].append("1")
        elif move[1] == X:
            tapes[1].append(_MIDDLE_MATCH[move])
    return tuple(tapes[0]), tuple(tapes[1]), tuple(tapes[2])


def move_equivalent(first: Sequence[Move3], second: Sequence[Move3]) -> bool:
    """True when both sequences consume the same actions on every tape"""
    return tape_actions(first) == tape_actions(second)


def _staircase(moves: List[Move3]) -> List[Move3]:
    counts = [sum(1 for move in moves if move[i] == 1) for i in range(3)]
    result = []
    for step in range(max(counts, default=0)):
        result.append(tuple(1 if counts[i] > step else 0 for i in range(3)))
    return result


def _earliest_schedule(actions: TapeActions) -> List[Move3]:
    t1, t2, t3 = actions
    h1 = h2 = h3 = 0
    result: List[Move3] = []
    while h1 < len(t1) or h2 < len(t2) or h3 < len(t3):
        a1 = t1[h1] if h1 < len(t1) else None
        a2 = t2[h2] if h2 < len(t2) else None
        a3 = t3[h3] if h3 < len(t3) else None
        if a2 == "c" and a1 == "x" and a3 == "x":
            move = (X, X, X)
        elif a2 == "l" and a1 == "x":
            move = (X, X, 1 if a3 == "1" else 0)
        elif a2 == "r" and a3 == "x":
            move = (1 if a1 == "1" else 0, X, X)
        else:
            move = (1 if a1 == "1" else 0, 1 if a2 == "1" else 0, 1 if a3 == "1" else 0)
            if move == (0, 0, 0):
                raise FilterError(f"tape actions {actions} cannot be scheduled")
        h1 += move[0] != 0
        h2 += move[1] != 0
        h3 += move[2] != 0
        result.append(move)
    return result


def canonicalize_move_sequence(moves: Sequence[Move3]) -> List[Move3]:
    """
    Canonical representative of a move sequence

    A pure ε sequence becomes the staircase (1,1,1)* then two-coordinate moves
    then one-coordinate moves. Sequences with matches are rescheduled so every
    tape acts as soon as its next action is enabled.

    Args:
        moves: Legal 3-way moves

    Returns:
        Equivalent sequence accepted by filter W
    """
    moves = _validate(moves)
    if all(move in EPSILON_MOVES for move in moves):
        return _staircase(moves)
    return _earliest_schedule(tape_actions(moves))
