"""
Helper utilities for trifst
"""
import string
import time
from typing import Any, Callable, List, Sequence, Tuple

import numpy as np

LETTERS = string.ascii_lowercase


def string_to_labels(text: str) -> List[int]:
    """
    Map a lowercase string to labels, a -> 1 ... z -> 26

    Args:
        text: Letters a..z

    Returns:
        Label list
    """
    labels = []
    for char in text:
        index = LETTERS.find(char)
        if index < 0:
            raise ValueError(f"character {char!r} has no label (expected a..z)")
        labels.append(index + 1)
    return labels


def labels_to_string(labels: Sequence[int]) -> str:
    """Inverse of string_to_labels; ε labels are skipped"""
    chars = []
    for label in labels:
        if label == 0:
            continue
        if not 1 <= label <= len(LETTERS):
            raise ValueError(f"label {label} has no letter")
        chars.append(LETTERS[label - 1])
    return "".join(chars)


def median_time_ms(func: Callable[[], Any], repetitions: int = 5) -> Tuple[Any, float]:
    """
    Run func repeatedly on a monotonic clock

    Args:
        func: Zero-argument callable
        repetitions: Number of runs (>= 1)

    Returns:
        (result of the last run, median wall time in milliseconds)
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    timings = []
    result = None
    for _ in range(repetitions):
        start = time.perf_counter()
        result = func()
        timings.append((time.perf_counter() - start) * 1000.0)
    return result, float(np.median(timings))


def random_strings(rng: np.random.Generator, count: int, max_len: int, alphabet_size: int,
                   min_len: int = 0) -> List[List[int]]:
    """Seeded label strings with lengths uniform in [min_len, max_len]"""
    strings = []
    for _ in range(count):
        length = int(rng.integers(min_len, max_len + 1))
        strings.append([int(v) for v in rng.integers(1, alphabet_size + 1, size=length)])
    return strings
