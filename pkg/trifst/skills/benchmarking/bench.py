"""
Benchmark harness: standard cascade versus 3-way composition

Each scenario builds seeded outer acceptors T1, T3 and a scenario-specific
middle machine T2, then runs

    cascade         (T1 ∘ T2) ∘ T3 with 2-way composition, then trim
    3way-lateral    compose3 with the lateral strategy, then trim
    3way-central    compose3 with the central strategy, then trim
    3way-combined   compose3 with the per-state combined strategy, then trim

Wall time is the median over repetitions; every other field is deterministic
for a given seed.
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from ...core.algorithms import path_sum, shortest_distance, trim
from ...core.config import load_config
from ...core.semiring import DEFAULT_TOLERANCE, PROBABILITY, TROPICAL
from ...core.transducer import EPSILON, Label, Transducer, evaluate, random_acyclic
from ...utils.helpers import median_time_ms
from ..applications.edit_distance import EditCosts, edit_transducer
from ..applications.ngram_kernel import kernel_machine
from ..composition.compose3 import Strategy, compose3, compose_cascade

SCENARIOS = ("editdist", "kernel")
METHODS = ("cascade", "3way-lateral", "3way-central", "3way-combined")


@dataclass
class BenchEntry:
    """One method's measurements"""
    method: str
    wall_ms: float
    intermediate_transitions: int
    states_expanded: int
    match_probes: int
    transitions_emitted: int
    result_states: int
    result_transitions: int
    value: float = 0.0


@dataclass
class BenchReport:
    """All measurements of one scenario run"""
    scenario: str
    seed: int
    size: int
    t1_transitions: int
    t2_transitions: int
    t3_transitions: int
    t1_states: int = 0
    t3_states: int = 0
    entries: List[BenchEntry] = field(default_factory=list)
    sampled_pairs: int = 0
    results_agree: bool = True

    def entry(self, method: str) -> BenchEntry:
        for entry in self.entries:
            if entry.method == method:
                return entry
        raise KeyError(method)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for entry in data["entries"]:
            if entry["value"] == float("inf"):
                entry["value"] = "inf"
        return data

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def deterministic_fields(self) -> Dict[str, Any]:
        """Report without wall times, for reproducibility checks"""
        data = self.to_dict()
        for entry in data["entries"]:
            entry.pop("wall_ms")
        return data


def _random_acceptor(size: int, alphabet_size: int, density: float, seed: int, semiring) -> Transducer:
    """
    Seeded acyclic acceptor whose states all survive trim

    A backbone chain 0 -> 1 -> ... -> size-1 ends in the always-final last
    state, so every state is both accessible and coaccessible. Random forward
    arcs drawn with the given density sit on top of it.
    """
    T = random_acyclic(size, alphabet_size, eps_prob=0.0, density=density, seed=seed,
                       semiring=semiring, acceptor=True)
    rng = np.random.default_rng([seed, size])
    for src in range(size - 1):
        label = int(rng.integers(1, alphabet_size + 1))
        weight = float(rng.integers(0, 5)) if semiring == TROPICAL else float(np.round(rng.uniform(0.1, 1.0), 3))
        T.add_arc(src, label, label, weight, src + 1)
    return trim(T).freeze()


def build_scenario(scenario: str, seed: int, size: int,
                   settings: Dict[str, Any]) -> Tuple[Transducer, Transducer, Transducer]:
    """
    Seeded (T1, T2, T3) for a scenario

    Args:
        scenario: 'editdist' or 'kernel'
        seed: Generator seed; T3 uses seed + 1
        size: Number of states of the random outer acceptors
        settings: The scenario's block of bench_config.yaml

    Returns:
        The three machines
    """
    alphabet_size = int(settings.get("alphabet_size", 10 if scenario == "editdist" else 4))
    if scenario == "editdist":
        density = float(settings.get("density", 0.08))
        transposition = settings.get("transposition", 1.0)
        costs = EditCosts(transposition=None if transposition is None else float(transposition))
        T2 = edit_transducer(alphabet_size, costs)
        semiring = TROPICAL
    elif scenario == "kernel":
        density = float(settings.get("density", 0.15))
        T2 = kernel_machine(alphabet_size, int(settings.get("order", 2)))
        semiring = PROBABILITY
    else:
        raise ValueError(f"unknown scenario '{scenario}' (expected one of {SCENARIOS})")
    T1 = _random_acceptor(size, alphabet_size, density, seed, semiring)
    T3 = _random_acceptor(size, alphabet_size, density, seed + 1, semiring)
    return T1, T2, T3


def sample_string(T: Transducer, rng: np.random.Generator, max_steps: int = 12) -> List[Label]:
    """Input labels of a random walk from an initial state, stopping at a final state"""
    states = sorted(T.initials)
    if not states:
        return []
    q = states[int(rng.integers(len(states)))]
    labels: List[Label] = []
    for _ in range(max_steps):
        arcs = T.states[q]
        if not arcs or (q in T.finals and rng.random() < 0.3):
            break
        arc = arcs[int(rng.integers(len(arcs)))]
        if arc.ilabel != EPSILON:
            labels.append(arc.ilabel)
        q = arc.nextstate
    return labels


def _summary_value(R: Transducer) -> float:
    return shortest_distance(R) if R.semiring == TROPICAL else path_sum(R)


def run_bench(scenario: str = "editdist", seed: int = 0, size: Optional[int] = None,
              repetitions: Optional[int] = None, config: Optional[Dict[str, Any]] = None,
              tolerance: float = DEFAULT_TOLERANCE) -> BenchReport:
    """
    Time the cascade against 3-way composition on one scenario

    Args:
        scenario: 'editdist' or 'kernel'
        seed: Generator seed
        size: States of the outer acceptors (scenario default from config)
        repetitions: Timed runs per method (median reported)
        config: Parsed bench_config.yaml (loaded when None)
        tolerance: Absolute tolerance of the sampled-pair agreement check

    Returns:
        BenchReport with one entry per method
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario '{scenario}' (expected one of {SCENARIOS})")
    config = load_config("bench_config") if config is None else config
    settings = config.get("scenarios", {}).get(scenario, {})
    size = int(size if size is not None else settings.get("states", 50))
    repetitions = int(repetitions if repetitions is not None else config.get("repetitions", 5))
    logger.info(f"Running bench '{scenario}' seed={seed} size={size} repetitions={repetitions}")

    T1, T2, T3 = build_scenario(scenario, seed, size, settings)
    report = BenchReport(scenario, seed, size, T1.num_transitions, T2.num_transitions, T3.num_transitions,
                         t1_states=T1.num_states, t3_states=T3.num_states)
    results: Dict[str, Transducer] = {}

    def cascade():
        run = compose_cascade(T1, T2, T3)
        return run, trim(run.result)

    (run, R), wall_ms = median_time_ms(cascade, repetitions)
    results["cascade"] = R
    report.entries.append(BenchEntry(
        method="cascade",
        wall_ms=wall_ms,
        intermediate_transitions=run.intermediate_transitions,
        states_expanded=run.intermediate_states + run.result.num_states,
        match_probes=0,
        transitions_emitted=run.result.num_transitions,
        result_states=R.num_states,
        result_transitions=R.num_transitions,
        value=_summary_value(R),
    ))

    for strategy in (Strategy.LATERAL, Strategy.CENTRAL, Strategy.COMBINED):
        def three_way(strategy=strategy):
            composed, counters = compose3(T1, T2, T3, strategy)
            return counters, trim(composed)

        (counters, R), wall_ms = median_time_ms(three_way, repetitions)
        method = f"3way-{strategy.value}"
        results[method] = R
        report.entries.append(BenchEntry(
            method=method,
            wall_ms=wall_ms,
            intermediate_transitions=0,
            states_expanded=counters.states_expanded,
            match_probes=counters.match_probes,
            transitions_emitted=counters.transitions_emitted,
            result_states=R.num_states,
            result_transitions=R.num_transitions,
            value=_summary_value(R),
        ))

    # same weights on sampled string pairs
    rng = np.random.default_rng(seed)
    sample_count = int(config.get("sample_strings", 20))
    reference = results["cascade"]
    K = reference.semiring
    for _ in range(sample_count):
        x, y = sample_string(T1, rng), sample_string(T3, rng)
        expected = evaluate(reference, x, y)
        for method, R in results.items():
            if not K.approx_equal(evaluate(R, x, y), expected, tolerance):
                logger.warning(f"{method} disagrees with cascade on {x}/{y}")
                report.results_agree = False
        report.sampled_pairs += 1
    values = [entry.value for entry in report.entries]
    if not all(K.approx_equal(v, values[0], 1e-6) for v in values):
        report.results_agree = False

    for entry in report.entries:
        logger.info(f"{entry.method:>14}: {entry.wall_ms:9.2f} ms, emitted={entry.transitions_emitted}, "
                    f"intermediate={entry.intermediate_transitions}, probes={entry.match_probes}")
    return report
