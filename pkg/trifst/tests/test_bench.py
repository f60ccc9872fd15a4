"""
Tests for the benchmark harness
"""
import json
import math

import numpy as np
import pytest

from trifst.core.config import load_config
from trifst.core.semiring import TROPICAL
from trifst.core.transducer import evaluate
from trifst.skills.benchmarking.bench import METHODS, build_scenario, run_bench, sample_string

THREE_WAY = [m for m in METHODS if m.startswith("3way")]


@pytest.fixture(scope="module")
def editdist_report():
    return run_bench("editdist", seed=1, size=50, repetitions=1)


class TestBench:
    """Test cascade versus 3-way measurements"""

    def test_report_schema(self, editdist_report):
        """Test the JSON report carries every field"""
        data = json.loads(editdist_report.to_json())
        assert set(data) == {"scenario", "seed", "size", "t1_transitions", "t2_transitions", "t3_transitions",
                             "t1_states", "t3_states", "entries", "sampled_pairs", "results_agree"}
        assert [entry["method"] for entry in data["entries"]] == list(METHODS)
        for entry in data["entries"]:
            assert set(entry) == {"method", "wall_ms", "intermediate_transitions", "states_expanded",
                                  "match_probes", "transitions_emitted", "result_states",
                                  "result_transitions", "value"}

    def test_outer_acceptors_keep_their_size(self, editdist_report):
        """Test trimmed outer acceptors keep the requested state count"""
        assert editdist_report.t1_states >= 50
        assert editdist_report.t3_states >= 50
        assert editdist_report.t1_transitions >= 49 and editdist_report.t3_transitions >= 49

    @pytest.mark.parametrize("seed", range(1, 6))
    def test_scenarios_are_never_empty(self, seed):
        """Test every seed yields full-size machines and a finite distance"""
        settings = load_config("bench_config")["scenarios"]["editdist"]
        T1, _, T3 = build_scenario("editdist", seed, 50, settings)
        assert T1.num_states >= 50 and T3.num_states >= 50
        assert T1.finals and T3.finals

    def test_results_are_not_empty(self, editdist_report):
        """Test every method emits transitions and a finite value"""
        for entry in editdist_report.entries:
            assert entry.transitions_emitted > 0
            assert entry.result_states > 0
            assert math.isfinite(entry.value)

    def test_results_agree(self, editdist_report):
        """Test all methods give the same weights on sampled pairs"""
        assert editdist_report.results_agree
        assert editdist_report.sampled_pairs == 20

    def test_three_way_methods_build_the_same_machine(self, editdist_report):
        """Test the three strategies emit identical machines"""
        entries = [editdist_report.entry(m) for m in THREE_WAY]
        assert len({(e.states_expanded, e.transitions_emitted, e.result_states, e.result_transitions)
                    for e in entries}) == 1
        assert all(e.intermediate_transitions == 0 for e in entries)

    def test_cascade_materializes_intermediate(self, editdist_report):
        """Test the cascade pays for the intermediate machine"""
        cascade = editdist_report.entry("cascade")
        combined = editdist_report.entry("3way-combined")
        # every T1 arc meets the identity, substitution and deletion arcs at the hub
        assert cascade.intermediate_transitions >= 5 * editdist_report.t1_transitions
        assert cascade.intermediate_transitions + cascade.transitions_emitted > combined.transitions_emitted
        assert cascade.match_probes == 0

    def test_deterministic_fields_reproduce(self):
        """Test the same seed reproduces every field but wall time"""
        first = run_bench("kernel", seed=3, size=10, repetitions=1)
        second = run_bench("kernel", seed=3, size=10, repetitions=1)
        assert first.deterministic_fields() == second.deterministic_fields()
        assert first.results_agree

    def test_kernel_values(self):
        """Test all methods compute the same kernel value"""
        report = run_bench("kernel", seed=0, size=10, repetitions=1)
        first = report.entries[0].value
        assert first > 0.0
        assert all(entry.value == pytest.approx(first) for entry in report.entries)

    def test_unknown_scenario(self):
        """Test an unknown scenario is rejected"""
        with pytest.raises(ValueError):
            run_bench("sorting")


class TestScenario:
    """Test scenario construction"""

    def test_seeded_machines(self):
        """Test scenarios are reproducible from the seed"""
        settings = load_config("bench_config")["scenarios"]["editdist"]
        T1, T2, T3 = build_scenario("editdist", 4, 20, settings)
        again = build_scenario("editdist", 4, 20, settings)
        assert [T.num_transitions for T in (T1, T2, T3)] == [T.num_transitions for T in again]
        assert T1.semiring == TROPICAL and T1.frozen
        assert (T1.num_states, T3.num_states) == (20, 20)
        # 10 labels with transpositions: 1 + 10 * 9 states
        assert T2.num_states == 91

    def test_sampled_strings_are_accepted(self):
        """Test random walks stop only at final states"""
        settings = load_config("bench_config")["scenarios"]["kernel"]
        T1, _, _ = build_scenario("kernel", 2, 12, settings)
        rng = np.random.default_rng(0)
        for _ in range(10):
            x = sample_string(T1, rng)
            # a walk that stops early ends in a final state
            if T1.semiring.is_zero(evaluate(T1, x, x)):
                assert len(x) == 12
