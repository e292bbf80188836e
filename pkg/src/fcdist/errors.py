"""Exception types shared across the package.

Every error raised by fcdist derives from :class:`FcdistError`, so callers
can catch one base class at pipeline boundaries.
"""


class FcdistError(Exception):
    """Base class for all fcdist errors."""


# --- source assembly / forward model ---

class InsufficientLibrary(FcdistError):
    """More active sources requested than the library provides."""


class InsufficientSamples(FcdistError):
    """More samples requested than the library rows contain."""


class EmptyRequest(FcdistError):
    """A generator was asked for zero items."""


class BandOutOfRange(FcdistError):
    """A frequency or band lies outside (0, Nyquist)."""


class UnknownMontage(FcdistError):
    """Montage label not among the built-in layouts."""


class ShapeMismatch(FcdistError):
    """Matrix dimensions do not line up."""


# --- spectral estimation ---

class TooFewSegments(FcdistError):
    """Fewer than two full segments fit the record."""


class ZeroPowerChannel(FcdistError):
    """A channel has zero spectral power at some retained frequency."""


class EmptyBand(FcdistError):
    """A band selects no bins on the frequency axis."""


class FewSegmentsWarning(UserWarning):
    """Diagnostic: fewer segments averaged than the recommended minimum."""


# --- connectivity metrics ---

class TooShort(FcdistError):
    """Record shorter than one analysis window."""


class DegenerateEnvelope(FcdistError):
    """An envelope pair had no usable window (constant in every window)."""


# --- weight statistics ---

class NotSymmetric(FcdistError):
    """Connectivity matrix asymmetric beyond tolerance."""


class DegenerateDistribution(FcdistError):
    """Zero-variance sample: standardized moments undefined."""


class RangeViolation(FcdistError):
    """Weights outside [0, 1]; usually a missing magnitude fold upstream."""


# --- inference ---

class ConstantSeries(FcdistError):
    """Correlation input has zero variance."""


class TooFewPoints(FcdistError):
    """Not enough points for the requested statistic."""


# --- pipeline / I/O ---

class CrossSpectrumFormatError(FcdistError):
    """Cross-spectrum file failed to parse or is internally inconsistent."""


class NoData(FcdistError):
    """No usable input remained after skipping bad files."""


class ExperimentFailed(FcdistError):
    """More than half of the experiment grid cells failed."""
