"""
Exception hierarchy for trifst
"""


class TrifstError(Exception):
    """Base class for all library errors"""


class UnknownSemiringError(TrifstError, KeyError):
    """Semiring name not registered"""


class InvalidWeightError(TrifstError, ValueError):
    """Weight outside the semiring's carrier set"""


class ZeroWeightError(InvalidWeightError):
    """Semiring zero used where a non-zero weight is required"""


class UnknownStateError(TrifstError, IndexError):
    """State id not present in the machine"""


class FrozenMachineError(TrifstError):
    """Mutation attempted on a frozen machine"""


class SemiringMismatchError(TrifstError):
    """Machines combined over different semirings"""


class RegulationError(TrifstError):
    """Machine admits an ε-cycle, so T(x, y) may be undefined"""


class CyclicMachineError(TrifstError):
    """Operation requires an acyclic machine"""


class EpsilonError(TrifstError):
    """ε label met by the ε-free composition"""


class StrategyError(TrifstError, ValueError):
    """Unknown composition strategy or filter mode"""


class FilterError(TrifstError, ValueError):
    """Bad filter alphabet, factor, move symbol or grid size"""


class InvalidCostError(TrifstError, ValueError):
    """Negative or non-finite edit cost"""


class FormatError(TrifstError, ValueError):
    """Malformed serialized machine"""

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        if line_number:
            message = f"line {line_number}: {message}"
        super().__init__(message)
