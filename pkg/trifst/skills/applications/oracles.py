"""
Direct reference computations for the composition-based applications
"""
from collections import Counter
from typing import Optional, Sequence

import numpy as np

from .edit_distance import EditCosts


def edit_distance_oracle(x: Sequence, y: Sequence, costs: Optional[EditCosts] = None) -> float:
    """
    Edit distance by dynamic programming

    With a transposition cost, adjacent distinct symbols ab may become ba as a
    single operation; swapped symbols are not edited again.

    Args:
        x: Source sequence
        y: Target sequence
        costs: Edit costs (unit costs by default)

    Returns:
        Minimum total cost
    """
    costs = costs or EditCosts()
    n, m = len(x), len(y)
    d = np.zeros((n + 1, m + 1))
    d[:, 0] = np.arange(n + 1) * costs.deletion
    d[0, :] = np.arange(m + 1) * costs.insertion
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            substitute = 0.0 if x[i - 1] == y[j - 1] else costs.substitution
            best = min(d[i - 1, j] + costs.deletion,
                       d[i, j - 1] + costs.insertion,
                       d[i - 1, j - 1] + substitute)
            if (costs.transposition is not None and i > 1 and j > 1
                    and x[i - 1] != x[i - 2]
                    and x[i - 1] == y[j - 2] and x[i - 2] == y[j - 1]):
                best = min(best, d[i - 2, j - 2] + costs.transposition)
            d[i, j] = best
    return float(d[n, m])


def ngram_counts(x: Sequence, order: int, exact_order: bool = False) -> Counter:
    """Occurrences of every n-gram of x with length 1..order (or exactly order)"""
    counts: Counter = Counter()
    lengths = [order] if exact_order else range(1, order + 1)
    for length in lengths:
        for start in range(len(x) - length + 1):
            counts[tuple(x[start:start + length])] += 1
    return counts


def ngram_kernel_oracle(x: Sequence, y: Sequence, order: int, exact_order: bool = False) -> float:
    """Σ_z c_x(z) · c_y(z) by direct substring counting"""
    cx = ngram_counts(x, order, exact_order)
    cy = ngram_counts(y, order, exact_order)
    return float(sum(count * cy[gram] for gram, count in cx.items()))
