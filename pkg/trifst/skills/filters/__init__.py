"""
Epsilon filters for 2-way and 3-way composition
"""
from .automaton import FilterAutomaton, derive_filter
from .canonical import canonicalize_move_sequence
from .filters import PairFilter, filter_m, filter_m1, filter_m2, filter_w, get_filter
from .grid import grid_unique_path_check

__all__ = [
    'FilterAutomaton',
    'derive_filter',
    'canonicalize_move_sequence',
    'PairFilter',
    'filter_m',
    'filter_m1',
    'filter_m2',
    'filter_w',
    'get_filter',
    'grid_unique_path_check'
]
