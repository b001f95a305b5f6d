"""Exception types shared across the package.

Everything raised on bad user input derives from WavetrendError so callers
(and the command line driver) can distinguish configuration problems from
genuine bugs.
"""


class WavetrendError(Exception):
    """Base class for all input and configuration errors."""


class UnsupportedFilter(WavetrendError):
    """Requested wavelet family/order pair is not in the coefficient tables."""


class SingularMatrix(WavetrendError):
    """Correction matrix is numerically singular at the requested depth."""


class InvalidDiffSpec(WavetrendError):
    """Differencing lag/order combination is not supported."""


class SeriesTooShort(WavetrendError):
    """Input series has too few observations for the requested operation."""


class ScaleTooDeep(WavetrendError):
    """Requested number of scales exceeds what the series length allows."""


class NonDyadicLength(WavetrendError):
    """Operation requires a power-of-two length."""


class ModeMismatch(WavetrendError):
    """Coefficient pyramid was produced by a different transform mode."""


class NegativeSpectrum(WavetrendError):
    """Spectral values must be nonnegative to synthesise a process."""


class DimensionMismatch(WavetrendError):
    """Array arguments have incompatible shapes."""


class NonDyadicFunctionalSpec(WavetrendError):
    """Functional trend/spectrum inputs require a power-of-two length."""


class InvalidBinwidth(WavetrendError):
    """Smoothing window must be odd, positive and shorter than the series."""


class MatrixMismatch(WavetrendError):
    """Correction matrix does not match the periodogram's differencing."""


class MissingSpectrum(WavetrendError):
    """Operation needs a spectrum estimate that was not supplied."""


class NegativeThreshold(WavetrendError):
    """Threshold values must be nonnegative."""


class MethodMismatch(WavetrendError):
    """Estimate was produced by an incompatible method for this operation."""


class TooFewReps(WavetrendError):
    """Not enough bootstrap replicates for the requested confidence level."""
