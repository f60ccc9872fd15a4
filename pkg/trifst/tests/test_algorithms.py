"""
Tests for shortest distance, path sums, trimming and transduction
"""
import math

import pytest

from trifst.core.algorithms import (
    equivalent_by_evaluation,
    path_sum,
    shortest_distance,
    shortest_distances,
    transduce,
    trim,
)
from trifst.core.exceptions import CyclicMachineError, SemiringMismatchError
from trifst.core.semiring import PROBABILITY, TROPICAL
from trifst.core.transducer import Transducer, identity, random_acyclic

from .brute_force import enumerate_paths, enumeration_total


class TestShortestDistance:
    """Test tropical shortest distance"""

    def test_diamond(self, tropical_diamond):
        """Test the cheaper branch of the diamond wins"""
        assert shortest_distance(tropical_diamond) == 3.0
        assert shortest_distances(tropical_diamond) == [0.0, 1.0, 2.0, 2.0]

    def test_no_final_state_reachable(self):
        """Test a machine with no reachable final state gives zero"""
        T = Transducer(TROPICAL)
        T.add_states(2)
        T.set_initial(0)
        T.set_final(1)
        assert shortest_distance(T) == math.inf

    def test_requires_tropical(self, two_paths):
        """Test shortest distance refuses non-tropical machines"""
        with pytest.raises(SemiringMismatchError):
            shortest_distance(two_paths)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_enumeration(self, seed):
        """Test shortest distance against the cheapest enumerated path"""
        T = random_acyclic(7, 3, eps_prob=0.2, density=0.5, seed=seed, semiring=TROPICAL)
        expected = min((w for w, _, _ in enumerate_paths(T)), default=math.inf)
        assert shortest_distance(T) == expected

    def test_cyclic_machine(self):
        """Test Dijkstra handles cycles with non-negative weights"""
        T = Transducer(TROPICAL)
        T.add_states(2)
        T.set_initial(0)
        T.set_final(1)
        T.add_arc(0, 1, 1, 1.0, 0)
        T.add_arc(0, 2, 2, 4.0, 1)
        T.add_arc(1, 1, 1, 0.0, 0)
        assert shortest_distance(T) == 4.0


class TestPathSum:
    """Test the ⊕ over all accepting paths"""

    def test_parallel_paths(self, two_paths):
        """Test parallel path weights are summed"""
        assert path_sum(two_paths) == pytest.approx(0.5)

    def test_empty_machine(self):
        """Test a machine without paths sums to zero"""
        assert path_sum(Transducer(PROBABILITY)) == 0.0

    def test_cyclic_machine_refused(self):
        """Test path sums over cycles are refused"""
        with pytest.raises(CyclicMachineError):
            path_sum(identity(2))

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_enumeration(self, seed):
        """Test path_sum against the ⊕ of enumerated paths"""
        T = random_acyclic(7, 3, eps_prob=0.2, density=0.5, seed=seed)
        assert path_sum(T) == pytest.approx(enumeration_total(T), abs=1e-12)


class TestTrim:
    """Test removal of useless states"""

    def test_drops_dead_states(self):
        """Test trim removes states off every accepting path"""
        T = Transducer()
        T.add_states(4)
        T.set_initial(0)
        T.set_final(1)
        T.add_arc(0, 1, 1, 0.5, 1)
        T.add_arc(0, 2, 2, 0.5, 2)   # 2 is not coaccessible
        T.add_arc(3, 1, 1, 0.5, 1)   # 3 is not accessible
        R = trim(T)
        assert R.num_states == 2
        assert R.num_transitions == 1
        assert equivalent_by_evaluation(T, R, max_len=2)

    @pytest.mark.parametrize("seed", range(10))
    def test_idempotent(self, seed):
        """Test trimming twice changes nothing"""
        once = trim(random_acyclic(8, 2, seed=seed, density=0.3))
        twice = trim(once)
        assert once.states == twice.states
        assert once.initials == twice.initials and once.finals == twice.finals


class TestTransduce:
    """Test the output map of one input"""

    def test_outputs_with_weights(self):
        """Test transduce returns each output with its weight"""
        T = Transducer()
        T.add_states(3)
        T.set_initial(0)
        T.set_final(2)
        T.add_arc(0, 1, 2, 0.5, 1)
        T.add_arc(0, 1, 3, 0.25, 1)
        T.add_arc(1, 0, 3, 1.0, 2)
        assert transduce(T, [1]) == {(2, 3): 0.5, (3, 3): 0.25}
        assert transduce(T, [2]) == {}

    def test_identity(self):
        """Test the identity machine copies its input"""
        assert transduce(identity(3), [1, 3]) == {(1, 3): 1.0}

    def test_equivalence_detects_difference(self, two_paths):
        """Test evaluation equivalence spots a changed weight"""
        other = two_paths.copy()
        other.finals[1] = 0.5
        assert equivalent_by_evaluation(two_paths, two_paths.copy())
        assert not equivalent_by_evaluation(two_paths, other)
