"""
Weight algebra for trifst

Supported semirings:
- tropical    (R+ ∪ {inf}, min, +, inf, 0)
- probability (R, +, *, 0, 1)
- log         (R ∪ {inf}, -log(e^-a + e^-b), +, inf, 0)

Weights are plain Python floats. A semiring object carries the operations,
so values from different semirings never need wrapper classes.
"""
import math
from typing import Dict, Iterable

import numpy as np
from loguru import logger

from .exceptions import InvalidWeightError, UnknownSemiringError, ZeroWeightError

INF = math.inf
DEFAULT_TOLERANCE = 1e-9


class Semiring:
    """Commutative semiring over floats"""

    name: str = ""
    zero: float = 0.0
    one: float = 1.0
    is_idempotent: bool = False
    is_commutative: bool = True

    def plus(self, a: float, b: float) -> float:
        raise NotImplementedError

    def times(self, a: float, b: float) -> float:
        raise NotImplementedError

    def sum(self, values: Iterable[float]) -> float:
        """⊕-fold of values, zero when empty"""
        total = self.zero
        for value in values:
            total = self.plus(total, value)
        return total

    def product(self, values: Iterable[float]) -> float:
        """⊗-fold of values, one when empty"""
        total = self.one
        for value in values:
            total = self.times(total, value)
        return total

    def is_zero(self, value: float) -> bool:
        return value == self.zero

    def check(self, value: float) -> float:
        """
        Validate that a value belongs to the semiring's carrier set

        Args:
            value: Candidate weight

        Returns:
            The value as float
        """
        value = float(value)
        if math.isnan(value):
            raise InvalidWeightError(f"NaN is not a {self.name} weight")
        return value

    def approx_equal(self, a: float, b: float, tol: float = DEFAULT_TOLERANCE) -> bool:
        """
        Compare two weights with an absolute tolerance

        Infinities only compare equal to the same infinity.

        Args:
            a: First weight
            b: Second weight
            tol: Absolute tolerance (>= 0)

        Returns:
            True if |a - b| <= tol
        """
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        if math.isinf(a) or math.isinf(b):
            return a == b
        return abs(a - b) <= tol

    def parse(self, token: str) -> float:
        """Parse a textual weight (`inf` accepted)"""
        return self.check(float(token.strip()))

    def format(self, value: float) -> str:
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(float(value))

    def __repr__(self):
        return f"<Semiring {self.name}>"

    def __eq__(self, other):
        return isinstance(other, Semiring) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


class TropicalSemiring(Semiring):
    """(R+ ∪ {inf}, min, +, inf, 0)"""

    name = "tropical"
    zero = INF
    one = 0.0
    is_idempotent = True

    def plus(self, a: float, b: float) -> float:
        return a if a <= b else b

    def times(self, a: float, b: float) -> float:
        return a + b

    def check(self, value: float) -> float:
        value = super().check(value)
        if value < 0:
            raise InvalidWeightError(f"tropical weights must be non-negative, got {value}")
        return value


class ProbabilitySemiring(Semiring):
    """(R, +, *, 0, 1)"""

    name = "probability"
    zero = 0.0
    one = 1.0

    def plus(self, a: float, b: float) -> float:
        return a + b

    def times(self, a: float, b: float) -> float:
        return a * b


class LogSemiring(Semiring):
    """
    Negated-log probabilities: a ⊕ b = -log(e^-a + e^-b), a ⊗ b = a + b

    Path sums stay finite on long paths where plain probabilities underflow.
    """

    name = "log"
    zero = INF
    one = 0.0

    def plus(self, a: float, b: float) -> float:
        if a == INF:
            return b
        if b == INF:
            return a
        return float(-np.logaddexp(-a, -b))

    def times(self, a: float, b: float) -> float:
        return a + b


TROPICAL = TropicalSemiring()
PROBABILITY = ProbabilitySemiring()
LOG = LogSemiring()

_REGISTRY: Dict[str, Semiring] = {
    TROPICAL.name: TROPICAL,
    PROBABILITY.name: PROBABILITY,
    LOG.name: LOG,
}


def get_semiring(name: str) -> Semiring:
    """
    Look up a semiring by name

    Args:
        name: tropical, probability or log

    Returns:
        Shared semiring instance
    """
    try:
        return _REGISTRY[name.strip().lower()]
    except KeyError:
        logger.error(f"Unknown semiring '{name}'")
        raise UnknownSemiringError(f"unknown semiring '{name}' (known: {sorted(_REGISTRY)})")


def require_nonzero(semiring: Semiring, weight: float, what: str = "weight") -> float:
    """Validate a weight and reject the semiring zero"""
    weight = semiring.check(weight)
    if semiring.is_zero(weight):
        raise ZeroWeightError(f"{what} equals the {semiring.name} zero ({semiring.format(weight)})")
    return weight
