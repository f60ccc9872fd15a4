"""
Edit distance and n-gram kernel applications
"""
from .edit_distance import EditCosts, edit_distance, edit_transducer
from .ngram_kernel import kernel_machine, ngram_count_transducer, ngram_kernel

__all__ = [
    'EditCosts',
    'edit_distance',
    'edit_transducer',
    'kernel_machine',
    'ngram_count_transducer',
    'ngram_kernel'
]
