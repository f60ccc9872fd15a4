"""
Tests for trifst engine
"""
import numpy as np
import pytest
from loguru import logger

from trifst.core.algorithms import equivalent_by_evaluation
from trifst.core.cache import MachineCache
from trifst.core.config import load_config
from trifst.core.exceptions import FrozenMachineError, InvalidCostError, StrategyError
from trifst.core.semiring import TROPICAL
from trifst.core.transducer import identity, linear_acceptor
from trifst.core.engine import TrifstEngine
from trifst.skills.applications.edit_distance import EditCosts
from trifst.skills.composition.compose3 import Strategy
from trifst.utils.helpers import median_time_ms, random_strings, string_to_labels
from trifst.utils.logger import setup_logger


class TestEngine:
    """Test trifst engine"""

    def test_engine_initialization(self):
        """Test engine loads the packaged configs"""
        engine = TrifstEngine()
        assert engine.strategy is Strategy.COMBINED
        assert engine.filter_mode == "single"
        assert engine.lazy is False
        assert engine.bench_config["scenarios"]["editdist"]["alphabet_size"] == 10

    def test_config_dir_override(self, tmp_path):
        """Test a config directory overrides the packaged defaults"""
        (tmp_path / "compose_config.yaml").write_text(
            "compose3:\n  strategy: lateral\n  filter_mode: pair\n  lazy: true\n")
        (tmp_path / "apps_config.yaml").write_text(
            "edit_distance:\n  costs:\n    transposition: 1.0\nngram_kernel:\n  order: 1\n")
        engine = TrifstEngine(tmp_path)
        assert engine.strategy is Strategy.LATERAL
        assert engine.filter_mode == "pair" and engine.lazy
        assert engine.edit_costs() == EditCosts(transposition=1.0)
        # bench_config.yaml is absent from the override directory
        assert engine.bench_config == {}

    def test_bad_strategy_in_config(self, tmp_path):
        """Test an unknown strategy in the config is rejected"""
        (tmp_path / "compose_config.yaml").write_text("compose3:\n  strategy: diagonal\n")
        with pytest.raises(StrategyError):
            TrifstEngine(tmp_path)

    def test_tolerance_from_config(self, tmp_path):
        """Test weight comparisons use the configured tolerance"""
        A = linear_acceptor([1], weight=0.5)
        B = linear_acceptor([1], weight=0.505)
        assert TrifstEngine().tolerance == 1e-9
        assert not TrifstEngine().equivalent(A, B, max_len=1)
        (tmp_path / "compose_config.yaml").write_text("tolerance: 0.01\n")
        engine = TrifstEngine(tmp_path)
        assert engine.tolerance == 0.01
        assert engine.equivalent(A, B, max_len=1)

    def test_negative_tolerance_in_config(self, tmp_path):
        """Test a negative tolerance is rejected"""
        (tmp_path / "compose_config.yaml").write_text("tolerance: -1\n")
        with pytest.raises(ValueError):
            TrifstEngine(tmp_path)

    def test_compose3_trims(self):
        """Test compose3 results are trimmed in eager and lazy mode"""
        engine = TrifstEngine()
        A = linear_acceptor([1, 2])
        for lazy in (False, True):
            R, counters = engine.compose3(A, identity(2), A, lazy=lazy)
            assert (R.num_states, R.num_transitions) == (3, 2)
            assert counters.states_expanded >= R.num_states

    def test_compose(self):
        """Test 2-way composition through the engine"""
        engine = TrifstEngine()
        A = linear_acceptor([1, 2])
        assert equivalent_by_evaluation(engine.compose(A, identity(2)), A, max_len=2)

    def test_edit_costs_overrides(self):
        """Test edit cost overrides and their validation"""
        engine = TrifstEngine()
        costs = engine.edit_costs(substitution=2.0, insertion=None)
        assert costs == EditCosts(substitution=2.0)
        with pytest.raises(InvalidCostError):
            engine.edit_costs(deletion=-1.0)

    def test_edit_distance_and_kernel(self):
        """Test edit distance and kernel with configured defaults"""
        engine = TrifstEngine()
        ab, ba = string_to_labels("ab"), string_to_labels("ba")
        A1, A2 = linear_acceptor(ab, TROPICAL), linear_acceptor(ba, TROPICAL)
        assert engine.edit_distance(A1, A2) == 2.0
        assert engine.edit_distance(A1, A2, engine.edit_costs(transposition=1.0)) == 1.0
        abab = linear_acceptor(string_to_labels("abab"))
        assert engine.kernel(abab, linear_acceptor(ab)) == pytest.approx(6.0)
        assert engine.kernel(abab, linear_acceptor(ab), order=2, exact_order=True) == pytest.approx(2.0)


class TestMachineCache:
    """Test machine cache operations"""

    def test_cache_set_get(self):
        """Test set, get and delete"""
        cache = MachineCache()
        machine = linear_acceptor([1])
        assert cache.set("one", machine) is machine
        assert cache.get("one") is machine
        assert machine.frozen
        with pytest.raises(FrozenMachineError):
            machine.add_state()

        assert cache.delete("one")
        assert cache.get("one") is None
        assert not cache.delete("one")

    def test_get_or_build(self):
        """Test get_or_build builds once"""
        cache = MachineCache()
        calls = []

        def build():
            calls.append(1)
            return identity(2)

        first = cache.get_or_build("id2", build)
        assert cache.get_or_build("id2", build) is first
        assert len(calls) == 1
        assert "id2" in cache and len(cache) == 1

    def test_eviction(self):
        """Test the oldest entry is evicted first"""
        cache = MachineCache(max_entries=2)
        for label in (1, 2, 3):
            cache.set(label, linear_acceptor([label]))
        assert 1 not in cache
        assert len(cache) == 2

    def test_clear(self):
        """Test clear drops entries and statistics"""
        cache = MachineCache()
        cache.get_or_build("x", lambda: identity(1))
        cache.clear()
        assert cache.stats() == {"entries": 0, "hits": 0, "misses": 0}


class TestConfig:
    """Test YAML config loading"""

    def test_packaged_configs(self):
        """Test the packaged configs load"""
        assert load_config("compose_config")["compose3"]["strategy"] == "combined"
        assert load_config("apps_config.yaml")["ngram_kernel"]["order"] == 2
        assert load_config("logging")["level"] == "WARNING"

    def test_missing_and_malformed(self, tmp_path):
        """Test missing and non-mapping configs give an empty dict"""
        assert load_config("absent", tmp_path) == {}
        (tmp_path / "list.yaml").write_text("- 1\n- 2\n")
        assert load_config("list", tmp_path) == {}
        (tmp_path / "empty.yaml").write_text("")
        assert load_config("empty", tmp_path) == {}


class TestUtils:
    """Test logger and helper utilities"""

    def test_setup_logger_file(self, tmp_path):
        """Test the logger writes to a file sink"""
        log_file = tmp_path / "logs" / "trifst.log"
        setup_logger("DEBUG", str(log_file))
        logger.debug("composition started")
        logger.complete()
        assert "composition started" in log_file.read_text()

    def test_median_time(self):
        """Test the median timer returns the result"""
        result, wall_ms = median_time_ms(lambda: 42, repetitions=3)
        assert result == 42 and wall_ms >= 0.0
        with pytest.raises(ValueError):
            median_time_ms(lambda: None, repetitions=0)

    def test_random_strings(self):
        """Test random strings respect length and alphabet"""
        strings = random_strings(np.random.default_rng(0), 5, 4, 3, min_len=2)
        assert len(strings) == 5
        assert all(2 <= len(s) <= 4 and set(s) <= {1, 2, 3} for s in strings)
