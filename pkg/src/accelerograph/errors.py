"""Exception hierarchy shared by the whole pipeline."""


class AccelerographError(Exception):
    """Base class for all library errors."""


class ConfigError(AccelerographError):
    """Invalid configuration or column mapping."""


class FormatError(AccelerographError):
    """Malformed input data (bad field, non-monotone time, ...)."""


class TooShort(AccelerographError):
    """Input has fewer samples/points than the operation requires."""


class TooFewPoints(AccelerographError):
    """Not enough distinct points to fit a smoothing spline."""


class VersionError(AccelerographError):
    """Serialized artifact carries an unsupported format version."""


class CorruptSet(AccelerographError):
    """Training-set file violates a structural invariant."""


class DegenerateInput(AccelerographError):
    """Values carry no contrast to cluster (all identical)."""


class DegenerateFit(AccelerographError):
    """Mixture fit collapsed and cannot be used for a cutoff."""


class DegenerateSegment(AccelerographError):
    """Segment carries no usable motion (zero range / zero covariance)."""


class NoJerksDetected(AccelerographError):
    """Fewer than two high-variance bursts found in the trace."""


class NoTemplatesForAxis(AccelerographError):
    """Training set has no templates in the curve's axis family."""


class ShapeError(AccelerographError):
    """Curve point counts do not match."""


class EmptyExperiment(AccelerographError):
    """Error experiment with zero attempts."""


class SegmentationMismatch(AccelerographError):
    """Recovered segment count differs from the ground-truth letter count."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"expected {expected} segments from ground truth, recovered {actual}"
        )
