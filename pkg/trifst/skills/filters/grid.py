"""
Exhaustive ε-grid checks

A grid point is a tuple of per-machine positions along ε-chains. A monotone
path moves with the filter's ε steps; a filter is correct when exactly one
path between any two comparable points survives it.
"""
import itertools
from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

from loguru import logger

from ...core.exceptions import FilterError
from .filters import EPSILON_MOVES

MAX_GRID_SIDE = 5

GRID_STEPS_2WAY: Dict[str, Tuple[int, int]] = {"a": (0, 1), "b": (1, 0), "c": (1, 1)}
GRID_STEPS_3WAY: Dict[tuple, tuple] = {move: move for move in EPSILON_MOVES}

Point = Tuple[int, ...]


def _grid_steps(dims: Sequence[int]):
    if len(dims) == 2:
        return GRID_STEPS_2WAY
    if len(dims) == 3:
        return GRID_STEPS_3WAY
    raise FilterError(f"grid must have 2 or 3 dimensions, got {len(dims)}")


def _check_dims(dims: Sequence[int]):
    for side in dims:
        if side < 0 or side > MAX_GRID_SIDE:
            raise FilterError(f"grid side {side} outside 0..{MAX_GRID_SIDE}")


def _shift(point: Point, delta: Sequence[int]) -> Point:
    return tuple(p + d for p, d in zip(point, delta))


def _inside(point: Point, end: Point) -> bool:
    return all(p <= e for p, e in zip(point, end))


def count_grid_paths(gate, start: Point, end: Point) -> Tuple[int, int]:
    """
    Count monotone paths from start to end

    Args:
        gate: Filter with `initial` and `step(state, symbol)`, or None to only count
        start: First grid point
        end: Last grid point (componentwise >= start)

    Returns:
        (all monotone paths, paths accepted by the gate)
    """
    start, end = tuple(start), tuple(end)
    steps = _grid_steps(start)
    total: Dict[Point, int] = defaultdict(int)
    accepted: Dict[Point, Dict[object, int]] = defaultdict(lambda: defaultdict(int))
    total[start] = 1
    if gate is not None:
        accepted[start][gate.initial] = 1
    # points in order of coordinate sum so predecessors are complete
    ranges = [range(s, e + 1) for s, e in zip(start, end)]
    for point in sorted(itertools.product(*ranges), key=sum):
        for symbol, delta in steps.items():
            target = _shift(point, delta)
            if not _inside(target, end):
                continue
            total[target] += total[point]
            for state, n in accepted[point].items():
                nxt = gate.step(state, symbol)
                if nxt is not None:
                    accepted[target][nxt] += n
    return total[end], sum(accepted[end].values())


def accepted_grid_paths(gate, start: Point, end: Point) -> List[Tuple]:
    """All gate-accepted monotone paths from start to end, as symbol tuples"""
    steps = _grid_steps(start)
    found: List[Tuple] = []
    stack = [(tuple(start), gate.initial, ())]
    while stack:
        point, state, path = stack.pop()
        if point == tuple(end):
            found.append(path)
            continue
        for symbol, delta in steps.items():
            target = _shift(point, delta)
            if not _inside(target, end):
                continue
            nxt = gate.step(state, symbol)
            if nxt is not None:
                stack.append((target, nxt, path + (symbol,)))
    return sorted(found, key=str)


def grid_unique_path_check(gate, dims: Sequence[int]) -> bool:
    """
    Check that exactly one accepted path joins every comparable pair of points

    Args:
        gate: Filter over 2-way symbols (a, b, c) or 3-way ε triplets
        dims: Largest coordinate per axis, each at most MAX_GRID_SIDE

    Returns:
        True if every pair (p, q) with p <= q has exactly one accepted path
    """
    _check_dims(dims)
    steps = _grid_steps(dims)
    points = list(itertools.product(*(range(side + 1) for side in dims)))
    points.sort(key=sum)
    for start in points:
        accepted: Dict[Point, Dict[object, int]] = defaultdict(lambda: defaultdict(int))
        accepted[start][gate.initial] = 1
        for point in points:
            if point not in accepted or not _inside(start, point):
                continue
            for symbol, delta in steps.items():
                target = _shift(point, delta)
                if not _inside(target, dims):
                    continue
                for state, n in accepted[point].items():
                    nxt = gate.step(state, symbol)
                    if nxt is not None:
                        accepted[target][nxt] += n
        for end in points:
            if not _inside(start, end):
                continue
            count = sum(accepted[end].values()) if end in accepted else 0
            if count != 1:
                logger.debug(f"{getattr(gate, 'name', gate)}: {count} accepted paths {start} -> {end}")
                return False
    return True
