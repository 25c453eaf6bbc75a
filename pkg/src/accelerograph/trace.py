"""Raw accelerometer recordings."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import FormatError, TooShort


@dataclass(frozen=True)
class AccelSample:
    """One timestamped 3-axis acceleration reading (ms, m/s^2)."""

    t: float
    ax: float
    ay: float
    az: float


@dataclass(frozen=True)
class Trace:
    """One recording: parallel arrays of timestamps and per-axis values.

    Timestamps are milliseconds, strictly increasing.  ``sample_period``
    is the nominal gap between samples in milliseconds.
    """

    t: np.ndarray
    ax: np.ndarray
    ay: np.ndarray
    az: np.ndarray
    sample_period: float

    def __post_init__(self):
        for name in ("t", "ax", "ay", "az"):
            arr = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, arr)
        n = len(self.t)
        if not all(len(getattr(self, name)) == n for name in ("ax", "ay", "az")):
            raise FormatError("axis arrays must have equal length")
        if n < 2:
            raise TooShort("a trace needs at least 2 samples")
        for name in ("ax", "ay", "az"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise FormatError(f"non-finite values in {name}")
        if not np.all(np.diff(self.t) > 0):
            raise FormatError("timestamps must be strictly increasing")
        if not self.sample_period > 0:
            raise FormatError("sample_period must be positive")

    def __len__(self) -> int:
        return len(self.t)

    def __iter__(self) -> Iterator[AccelSample]:
        for i in range(len(self.t)):
            yield AccelSample(
                float(self.t[i]), float(self.ax[i]), float(self.ay[i]), float(self.az[i])
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return (
            self.sample_period == other.sample_period
            and np.array_equal(self.t, other.t)
            and np.array_equal(self.ax, other.ax)
            and np.array_equal(self.ay, other.ay)
            and np.array_equal(self.az, other.az)
        )

    @classmethod
    def from_arrays(cls, t, ax, ay, az) -> "Trace":
        """Build a trace, deriving the nominal period from the gaps."""
        t = np.asarray(t, dtype=float)
        if len(t) < 2:
            raise TooShort("a trace needs at least 2 samples")
        gaps = np.diff(t)
        period = float(statistics.median_low([float(g) for g in gaps]))
        return cls(t, np.asarray(ax), np.asarray(ay), np.asarray(az), period)


@dataclass(frozen=True)
class LetterSegment:
    """Samples of one letter between two jerks.

    ``start``/``end`` are inclusive indices into the source trace; only
    the x/y channels are kept, the z channel is consumed by jerk
    detection and dropped.
    """

    start: int
    end: int
    t: np.ndarray = field(repr=False)
    ax: np.ndarray = field(repr=False)
    ay: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.end - self.start + 1
