"""
trifst engine - configured entry point to composition and applications

Loads the YAML configs once and fills in defaults for every operation,
so the CLI and library callers share one source of settings.
"""
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from loguru import logger

from .algorithms import equivalent_by_evaluation, trim
from .config import DEFAULT_CONFIG_DIR, load_config
from .semiring import DEFAULT_TOLERANCE
from .transducer import Transducer
from ..skills.applications.edit_distance import EditCosts, edit_distance
from ..skills.applications.ngram_kernel import ngram_kernel
from ..skills.benchmarking.bench import BenchReport, run_bench
from ..skills.composition.compose2 import compose
from ..skills.composition.compose3 import ComposeCounters, Strategy, compose3, lazy_compose3


class TrifstEngine:
    """Composition engine bound to a configuration directory"""

    def __init__(self, config_dir: Optional[Union[str, Path]] = None):
        """
        Initialize the engine

        Args:
            config_dir: Configuration directory (defaults to the packaged config/)
        """
        self.config_dir = Path(config_dir) if config_dir else DEFAULT_CONFIG_DIR
        self.compose_config = self._load_config("compose_config")
        self.apps_config = self._load_config("apps_config")
        self.bench_config = self._load_config("bench_config")

        settings = self.compose_config.get("compose3", {})
        self.strategy = Strategy.parse(settings.get("strategy", "combined"))
        self.filter_mode = settings.get("filter_mode", "single")
        self.lazy = bool(settings.get("lazy", False))
        self.tolerance = float(self.compose_config.get("tolerance", DEFAULT_TOLERANCE))
        if self.tolerance < 0:
            raise ValueError(f"tolerance must be non-negative, got {self.tolerance}")
        logger.debug(f"Engine ready: strategy={self.strategy.value}, filter={self.filter_mode}, lazy={self.lazy}")

    def _load_config(self, name: str) -> Dict[str, Any]:
        return load_config(name, self.config_dir)

    def compose(self, T1: Transducer, T2: Transducer) -> Transducer:
        """2-way composition, trimmed"""
        return trim(compose(T1, T2))

    def compose3(self, T1: Transducer, T2: Transducer, T3: Transducer, strategy=None,
                 filter_mode: Optional[str] = None, lazy: Optional[bool] = None) -> Tuple[Transducer, ComposeCounters]:
        """
        3-way composition with configured defaults

        Args:
            T1, T2, T3: Machines over one semiring
            strategy: Overrides compose3.strategy
            filter_mode: Overrides compose3.filter_mode
            lazy: Overrides compose3.lazy

        Returns:
            (trimmed result, counters)
        """
        strategy = self.strategy if strategy is None else Strategy.parse(strategy)
        filter_mode = filter_mode or self.filter_mode
        lazy = self.lazy if lazy is None else lazy
        if lazy:
            handle = lazy_compose3(T1, T2, T3, strategy, filter_mode)
            R, counters = handle.to_transducer(), handle.counters
        else:
            R, counters = compose3(T1, T2, T3, strategy, filter_mode)
        logger.info(f"compose3[{strategy.value}/{filter_mode}{'/lazy' if lazy else ''}]: "
                    f"{counters.states_expanded} states expanded, {counters.transitions_emitted} transitions")
        return trim(R), counters

    def equivalent(self, A: Transducer, B: Transducer, max_len: int = 3) -> bool:
        """Compare two machines on every string pair up to max_len, within the configured tolerance"""
        return equivalent_by_evaluation(A, B, max_len, self.tolerance)

    def edit_costs(self, **overrides) -> EditCosts:
        """Configured edit costs, with None-valued overrides ignored"""
        costs = dict(self.apps_config.get("edit_distance", {}).get("costs", {}))
        costs.update({k: v for k, v in overrides.items() if v is not None})
        return EditCosts.from_config(costs)

    def edit_distance(self, A1: Transducer, A2: Transducer, costs: Optional[EditCosts] = None) -> float:
        costs = costs or self.edit_costs()
        distance = edit_distance(A1, A2, costs, strategy=self.strategy, filter_mode=self.filter_mode)
        logger.info(f"Edit distance: {distance}")
        return distance

    def kernel(self, A1: Transducer, A2: Transducer, order: Optional[int] = None,
               exact_order: Optional[bool] = None) -> float:
        settings = self.apps_config.get("ngram_kernel", {})
        order = int(order if order is not None else settings.get("order", 2))
        exact_order = bool(settings.get("exact_order", False) if exact_order is None else exact_order)
        value = ngram_kernel(A1, A2, order, exact_order=exact_order,
                             strategy=self.strategy, filter_mode=self.filter_mode)
        logger.info(f"n-gram kernel (order {order}{', exact' if exact_order else ''}): {value}")
        return value

    def bench(self, scenario: str = "editdist", seed: int = 0, size: Optional[int] = None,
              repetitions: Optional[int] = None) -> BenchReport:
        return run_bench(scenario, seed, size, repetitions, self.bench_config, tolerance=self.tolerance)
