"""
2-way and 3-way composition
"""
from .compose2 import compose
from .compose3 import ComposeCounters, Strategy, compose3, compose3_eps_free, lazy_compose3
from .label_index import Side, build_label_index

__all__ = [
    'compose',
    'compose3',
    'compose3_eps_free',
    'lazy_compose3',
    'ComposeCounters',
    'Strategy',
    'Side',
    'build_label_index'
]
