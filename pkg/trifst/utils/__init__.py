"""
Utilities package for trifst
"""
from .logger import setup_logger
from .helpers import labels_to_string, median_time_ms, random_strings, string_to_labels

__all__ = [
    'setup_logger',
    'string_to_labels',
    'labels_to_string',
    'median_time_ms',
    'random_strings'
]
