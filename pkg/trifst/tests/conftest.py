"""
Shared fixtures for trifst tests
"""
import pytest
from loguru import logger

from trifst.core.semiring import PROBABILITY, TROPICAL
from trifst.core.transducer import Transducer


@pytest.fixture(autouse=True)
def quiet_logger():
    """Keep loguru quiet unless a test installs its own sink"""
    logger.remove()
    yield
    logger.remove()


@pytest.fixture
def two_paths():
    """Two parallel single-arc paths with weights 0.2 and 0.3"""
    T = Transducer(PROBABILITY)
    T.add_states(2)
    T.set_initial(0)
    T.set_final(1)
    T.add_arc(0, 1, 1, 0.2, 1)
    T.add_arc(0, 2, 2, 0.3, 1)
    return T


@pytest.fixture
def epsilon_chains():
    """
    T1 reads 1 1 writing ε ε, T2 reads ε ε writing 2 2; every weight 0.5

    Composed, the single pair ((1, 1), (2, 2)) has 13 interleavings of the
    four ε steps.
    """
    T1 = Transducer(PROBABILITY)
    T1.add_states(3)
    T1.set_initial(0)
    T1.set_final(2)
    T1.add_arc(0, 1, 0, 0.5, 1)
    T1.add_arc(1, 1, 0, 0.5, 2)
    T2 = Transducer(PROBABILITY)
    T2.add_states(3)
    T2.set_initial(0)
    T2.set_final(2)
    T2.add_arc(0, 0, 2, 0.5, 1)
    T2.add_arc(1, 0, 2, 0.5, 2)
    return T1, T2


@pytest.fixture
def tropical_diamond():
    """0 -> {1, 2} -> 3 with path costs 3 and 2, final weight 1"""
    T = Transducer(TROPICAL)
    T.add_states(4)
    T.set_initial(0)
    T.set_final(3, 1.0)
    T.add_arc(0, 1, 1, 1.0, 1)
    T.add_arc(1, 1, 1, 2.0, 3)
    T.add_arc(0, 2, 2, 2.0, 2)
    T.add_arc(2, 2, 2, 0.0, 3)
    return T
