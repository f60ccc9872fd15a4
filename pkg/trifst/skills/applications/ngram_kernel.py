"""
n-gram string kernels as a transducer cascade

k(x, y) = Σ_z c_x(z) · c_y(z) over n-grams z, computed as the total path
weight of A1 ∘ (T_count ∘ T_count⁻¹) ∘ A2.
"""
from typing import Optional

from loguru import logger

from ...core.algorithms import path_sum
from ...core.cache import MachineCache
from ...core.semiring import PROBABILITY
from ...core.transducer import EPSILON, Transducer, invert
from ..composition.compose2 import compose
from ..composition.compose3 import Strategy, compose3

MAX_ORDER = 10

_kernel_cache = MachineCache()


def _check_order(order: int):
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"n-gram order must lie in 1..{MAX_ORDER}, got {order}")


def ngram_count_transducer(alphabet_size: int, order: int, exact_order: bool = False) -> Transducer:
    """
    Map a string to each of its n-grams, once per occurrence

    An entry hub erases a prefix (a:ε loops), a chain copies the n-gram and an
    exit hub erases the suffix. The chain may leave for the exit hub after
    every length 1..order, or only after `order` symbols with exact_order.

    Args:
        alphabet_size: Labels 1..alphabet_size
        order: Largest n-gram length
        exact_order: Count only n-grams of length exactly `order`

    Returns:
        Probability-semiring transducer with weight one everywhere
    """
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    _check_order(order)
    T = Transducer(PROBABILITY)
    entry = T.add_state()
    chain = [entry] + [T.add_state() for _ in range(order - 1)]
    exit_hub = T.add_state()
    T.set_initial(entry)
    T.set_final(exit_hub)
    labels = range(1, alphabet_size + 1)
    for a in labels:
        T.add_arc(entry, a, EPSILON, PROBABILITY.one, entry)
        T.add_arc(exit_hub, a, EPSILON, PROBABILITY.one, exit_hub)
    for length in range(1, order + 1):
        src = chain[length - 1]
        for a in labels:
            if length < order:
                T.add_arc(src, a, a, PROBABILITY.one, chain[length])
            if length == order or not exact_order:
                T.add_arc(src, a, a, PROBABILITY.one, exit_hub)
    return T


def kernel_machine(alphabet_size: int, order: int, exact_order: bool = False,
                   cache: Optional[MachineCache] = None) -> Transducer:
    """T_count ∘ T_count⁻¹, built with 2-way composition and cached"""
    cache = _kernel_cache if cache is None else cache

    def build() -> Transducer:
        count = ngram_count_transducer(alphabet_size, order, exact_order)
        return compose(count, invert(count))

    return cache.get_or_build(("ngram", alphabet_size, order, exact_order), build)


def ngram_kernel(A1: Transducer, A2: Transducer, order: int, alphabet_size: Optional[int] = None,
                 exact_order: bool = False, strategy=Strategy.COMBINED, filter_mode: str = "single") -> float:
    """
    Weighted n-gram kernel between two acyclic acceptors

    Args:
        A1: Probability-semiring acceptor
        A2: Probability-semiring acceptor
        order: Sum over n-gram lengths 1..order (only `order` with exact_order)
        alphabet_size: Largest label (defaults to the largest label used)
        exact_order: Restrict to n-grams of length exactly `order`
        strategy: 3-way matching strategy
        filter_mode: ε-filter mode

    Returns:
        Σ over string pairs of A1(x) · A2(y) · Σ_z c_x(z) · c_y(z)
    """
    if alphabet_size is None:
        alphabet_size = max(A1.input_alphabet() + A2.input_alphabet(), default=1)
    middle = kernel_machine(alphabet_size, order, exact_order)
    R, counters = compose3(A1, middle, A2, strategy, filter_mode)
    value = path_sum(R)
    logger.debug(f"ngram_kernel(order={order}): {R.num_states} states, "
                 f"{counters.transitions_emitted} transitions -> {value}")
    return value
