"""
Edit distance between two automata through 3-way composition
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

from loguru import logger

from ...core.algorithms import shortest_distance
from ...core.exceptions import InvalidCostError
from ...core.semiring import TROPICAL
from ...core.transducer import EPSILON, Transducer
from ..composition.compose3 import Strategy, compose3


@dataclass(frozen=True)
class EditCosts:
    """Costs of the edit operations; transposition None disables swaps"""
    substitution: float = 1.0
    insertion: float = 1.0
    deletion: float = 1.0
    transposition: Optional[float] = None

    def __post_init__(self):
        for name in ("substitution", "insertion", "deletion", "transposition"):
            value = getattr(self, name)
            if value is None and name == "transposition":
                continue
            if value is None or not math.isfinite(value) or value < 0:
                raise InvalidCostError(f"{name} cost must be finite and non-negative, got {value}")

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "EditCosts":
        return cls(
            substitution=float(config.get("substitution", 1.0)),
            insertion=float(config.get("insertion", 1.0)),
            deletion=float(config.get("deletion", 1.0)),
            transposition=None if config.get("transposition") is None else float(config["transposition"]),
        )


def edit_transducer(alphabet_size: int, costs: Optional[EditCosts] = None) -> Transducer:
    """
    Tropical edit machine over labels 1..alphabet_size

    One hub state (initial and final) carries a:a, a:b, a:ε and ε:b loops.
    With transpositions each ordered pair a != b gets an auxiliary state
    entered on a:b and left on b:a.

    Args:
        alphabet_size: Number of labels (>= 1)
        costs: Edit costs (unit costs by default)

    Returns:
        Edit transducer with 1 + |Σ|(|Σ|-1) states when transpositions are on
    """
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    costs = costs or EditCosts()
    T = Transducer(TROPICAL)
    hub = T.add_state()
    T.set_initial(hub)
    T.set_final(hub)
    labels = range(1, alphabet_size + 1)
    for a in labels:
        T.add_arc(hub, a, a, TROPICAL.one, hub)
        for b in labels:
            if a != b:
                T.add_arc(hub, a, b, costs.substitution, hub)
        T.add_arc(hub, a, EPSILON, costs.deletion, hub)
        T.add_arc(hub, EPSILON, a, costs.insertion, hub)
    if costs.transposition is not None:
        for a in labels:
            for b in labels:
                if a != b:
                    aux = T.add_state()
                    T.add_arc(hub, a, b, costs.transposition, aux)
                    T.add_arc(aux, b, a, TROPICAL.one, hub)
    return T.freeze()


def edit_distance(A1: Transducer, A2: Transducer, costs: Optional[EditCosts] = None,
                  alphabet_size: Optional[int] = None, strategy=Strategy.COMBINED,
                  filter_mode: str = "single") -> float:
    """
    Minimum edit cost between any string of A1 and any string of A2

    Args:
        A1: Tropical acceptor
        A2: Tropical acceptor over the same labels
        costs: Edit costs
        alphabet_size: Largest label (defaults to the largest label used)
        strategy: 3-way matching strategy
        filter_mode: ε-filter mode

    Returns:
        Distance, inf when either language is empty
    """
    if alphabet_size is None:
        used = A1.input_alphabet() + A2.input_alphabet()
        alphabet_size = max(used, default=1)
    middle = edit_transducer(alphabet_size, costs)
    R, counters = compose3(A1, middle, A2, strategy, filter_mode)
    distance = shortest_distance(R)
    logger.debug(f"edit_distance: {R.num_states} states, {counters.match_probes} probes -> {distance}")
    return distance
