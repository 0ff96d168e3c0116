"""Exception types shared across the package.

Every error raised on a user-facing path derives from ScarChainError so the CLI
can map failures to stable exit codes.
"""


class ScarChainError(Exception):
    """Base class for package errors."""

    exit_code = 1


class InvalidSectorError(ScarChainError):
    """Symmetry sector request is inconsistent (bad k, parity at generic k, odd L...)."""

    exit_code = 3


class ChainTooLargeError(ScarChainError):
    """L exceeds the supported dense-enumeration cap."""

    exit_code = 3


class DimensionMismatchError(ScarChainError):
    """Vector or matrix does not match the basis it is used with."""

    exit_code = 3


class BadParamsError(ScarChainError):
    """Model parameters outside their domain (negative couplings, mu <= 0...)."""

    exit_code = 3


class NonNormalizedError(ScarChainError):
    """Input state is not normalized to the required tolerance."""

    exit_code = 3


class VanishingScarError(ScarChainError):
    """Requested ladder power annihilates the vacuum (n beyond the packing bound)."""

    exit_code = 3


class TooFewLevelsError(ScarChainError):
    """Spectrum too short for the requested statistic (e.g. gap ratios after trimming)."""

    exit_code = 3


class SolverError(ScarChainError):
    """Dense eigensolver failed to converge."""

    exit_code = 3


class StateLostError(ScarChainError):
    """Adaptive tracking lost the followed state (overlap below threshold too long).

    Carries the partial record so callers can inspect how far tracking got.
    """

    exit_code = 4

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class NoMatchError(ScarChainError):
    """Duality validation found no sector pairing that matches the spectra."""

    exit_code = 5


class UnknownNameError(ScarChainError):
    """Unknown preset name (path, tower...)."""

    exit_code = 3
