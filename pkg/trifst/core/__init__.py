"""
Core package for trifst: weights, machines and graph algorithms
"""
from .exceptions import TrifstError
from .semiring import LOG, PROBABILITY, TROPICAL, Semiring, get_semiring
from .transducer import EPSILON, Transducer, Transition, evaluate

__all__ = [
    'TrifstError',
    'Semiring',
    'TROPICAL',
    'PROBABILITY',
    'LOG',
    'get_semiring',
    'EPSILON',
    'Transducer',
    'Transition',
    'evaluate'
]
