"""Exception types shared across the library."""


class ShearedSpectraError(Exception):
    """Base class for all library-specific errors."""


class NonPositiveEnergyError(ShearedSpectraError, ValueError):
    """Classical turning points are only defined for E > 0."""


class ShearOutOfRangeError(ShearedSpectraError, ValueError):
    """Shear parameter outside the range a routine can handle."""


class OutOfRangeError(ShearedSpectraError, ValueError):
    """Argument outside the documented evaluation range."""


class IndexOutOfRangeError(ShearedSpectraError, IndexError):
    """Requested index outside the supported range."""


class BracketFailureError(ShearedSpectraError, RuntimeError):
    """An eigenvalue could not be bracketed; message carries the scanned range."""


class ConvergenceFailureError(ShearedSpectraError, RuntimeError):
    """Iteration failed to converge within the allowed number of steps."""


class IntegrationOverflowError(ShearedSpectraError, FloatingPointError):
    """Wavefunction integration produced non-finite values despite renormalization."""


class NodeCountMismatchError(ShearedSpectraError, RuntimeError):
    """Refined node count differs from the level's quantum number."""


class TrajectoryBreakError(ShearedSpectraError, RuntimeError):
    """Node association across adjacent shear values was ambiguous."""
