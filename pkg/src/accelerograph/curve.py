"""Canonical comparison curves from raw letter segments.

A segment's x and y acceleration series are smoothed against time,
resampled at 100 evenly spaced instants, scaled isotropically into the
unit square, and routed to an axis family by the share of variance the
first principal component explains.  Single-axis curves additionally
carry their rotated principal series, rescaled to [0, 1], which is what
classification compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .alphabet import AxisClass
from .errors import DegenerateSegment
from .smoothing import DEFAULT_SPAR, SplineFit, smooth_series
from .trace import LetterSegment

N_EVAL = 100
DEFAULT_PVE_CUTOFF = 0.92


@dataclass(frozen=True)
class SmoothingConfig:
    """Knobs of the segment-to-curve stage.

    ``lam``, when set, bypasses the spar-derived roughness weight.
    """

    spar: float = DEFAULT_SPAR
    n_eval: int = N_EVAL
    pve_cutoff: float = DEFAULT_PVE_CUTOFF
    lam: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.spar <= 1.5:
            raise ValueError("spar must lie in [0, 1.5]")
        if not 0.0 < self.pve_cutoff < 1.0:
            raise ValueError("pve_cutoff must lie in (0, 1)")
        if self.n_eval != N_EVAL:
            raise ValueError(f"comparison curves are fixed at {N_EVAL} points")


@dataclass(frozen=True)
class GestureCurve:
    """A normalized gesture ready for distance comparison.

    ``points`` are the 100 (x, y) samples in the unit square;
    ``principal_series`` is present exactly for single-axis curves and
    holds the [0, 1]-rescaled projection onto the first principal
    component.
    """

    points: np.ndarray = field(repr=False)
    axis_class: AxisClass
    pve: float
    principal_series: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (N_EVAL, 2):
            raise ValueError(f"expected {N_EVAL} (x, y) points, got {pts.shape}")
        object.__setattr__(self, "points", pts)
        if (self.principal_series is None) != (self.axis_class is AxisClass.BOTH_AXES):
            raise ValueError("principal series present iff curve is single-axis")
        if self.principal_series is not None:
            ps = np.asarray(self.principal_series, dtype=float)
            if ps.shape != (N_EVAL,):
                raise ValueError("principal series must hold 100 values")
            object.__setattr__(self, "principal_series", ps)


def smooth_axis(times, values, spar: float = DEFAULT_SPAR, lam: float | None = None) -> SplineFit:
    """Smoothing spline of one acceleration axis against time.

    Duplicate timestamps are collapsed to their mean value before the
    fit, so irregular inputs cannot break the banded solve.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if len(np.unique(t)) != len(t):
        uniq, inverse = np.unique(t, return_inverse=True)
        sums = np.zeros(len(uniq))
        counts = np.zeros(len(uniq))
        np.add.at(sums, inverse, y)
        np.add.at(counts, inverse, 1.0)
        t, y = uniq, sums / counts
    return smooth_series(t, y, spar, lam)


def resample_100(spline_x, spline_y, t_range) -> np.ndarray:
    """Evaluate both axis splines at 100 evenly spaced times."""
    t0, t1 = t_range
    grid = np.linspace(t0, t1, N_EVAL)
    return np.column_stack([spline_x(grid), spline_y(grid)])


def scale_unit_square(points) -> np.ndarray:
    """Isotropic rescale of a point cloud into the unit square.

    Per-axis minima move to zero and both axes divide by the larger of
    the two ranges, so the dominant axis spans exactly [0, 1] and the
    aspect ratio survives.  Idempotent.
    """
    pts = np.asarray(points, dtype=float)
    mins = pts.min(axis=0)
    span = float((pts.max(axis=0) - mins).max())
    if span == 0.0:
        raise DegenerateSegment("motionless segment: zero range on both axes")
    return (pts - mins) / span


def principal_axes(points) -> tuple[float, np.ndarray]:
    """PVE and first eigenvector of the 2-D point-cloud covariance.

    Closed-form symmetric 2x2 eigensolve; the eigenvector is unit
    length with sign not yet fixed.  pve = lam1 / (lam1 + lam2) and is
    at least 0.5 by construction.
    """
    pts = np.asarray(points, dtype=float)
    centered = pts - pts.mean(axis=0)
    a = float(centered[:, 0] @ centered[:, 0])
    c = float(centered[:, 1] @ centered[:, 1])
    b = float(centered[:, 0] @ centered[:, 1])
    total = a + c
    if total == 0.0:
        raise DegenerateSegment("zero covariance: all points coincide")
    half_gap = (a - c) / 2.0
    disc = math.hypot(half_gap, b)
    lam1 = total / 2.0 + disc
    pve = lam1 / total
    if b == 0.0:
        e1 = np.array([1.0, 0.0]) if a >= c else np.array([0.0, 1.0])
    elif a >= c:
        e1 = np.array([half_gap + disc, b])
        e1 /= np.linalg.norm(e1)
    else:
        e1 = np.array([b, disc - half_gap])
        e1 /= np.linalg.norm(e1)
    return pve, e1


def principal_series(points, axis_class: AxisClass) -> np.ndarray:
    """Projection onto the first principal component, rescaled to [0,1].

    The eigenvector sign is fixed by requiring a positive loading on
    the axis named by ``axis_class``, which removes the inherent ±
    ambiguity of the rotation and makes the series reproducible.
    """
    if axis_class is AxisClass.BOTH_AXES:
        raise ValueError("principal series is defined for single-axis curves only")
    pve, e1 = principal_axes(points)
    component = 0 if axis_class is AxisClass.X_AXIS else 1
    if e1[component] < 0 or (e1[component] == 0 and e1[1 - component] < 0):
        e1 = -e1
    pts = np.asarray(points, dtype=float)
    proj = (pts - pts.mean(axis=0)) @ e1
    lo, hi = float(proj.min()), float(proj.max())
    if hi == lo:
        raise DegenerateSegment("degenerate projection: zero principal variance")
    return (proj - lo) / (hi - lo)


def detect_axis(points, pve_cutoff: float = DEFAULT_PVE_CUTOFF) -> GestureCurve:
    """Route a scaled point cloud to its axis family.

    pve at or below the cutoff keeps the curve in the both-axes family
    with its points untouched; above it, the dominant eigenvector
    component picks X or Y (ties to X) and the rotated principal
    series is attached.
    """
    pts = np.asarray(points, dtype=float)
    pve, e1 = principal_axes(pts)
    if pve <= pve_cutoff:
        return GestureCurve(pts, AxisClass.BOTH_AXES, pve)
    axis = AxisClass.X_AXIS if abs(e1[0]) >= abs(e1[1]) else AxisClass.Y_AXIS
    series = principal_series(pts, axis)
    return GestureCurve(pts, axis, pve, series)


def curve_from_segment(
    segment: LetterSegment,
    spar: float = DEFAULT_SPAR,
    pve_cutoff: float = DEFAULT_PVE_CUTOFF,
) -> GestureCurve:
    """Full segment-to-curve pipeline: smooth, resample, scale, route."""
    sx = smooth_axis(segment.t, segment.ax, spar)
    sy = smooth_axis(segment.t, segment.ay, spar)
    t_range = (float(segment.t[0]), float(segment.t[-1]))
    points = scale_unit_square(resample_100(sx, sy, t_range))
    return detect_axis(points, pve_cutoff)


class CurveExtractor(BaseEstimator, TransformerMixin):
    """Stateless transformer turning letter segments into gesture curves.

    Parameters
    ----------
    spar : float, default=0.5
        Smoothing parameter of the per-axis spline fits.
    pve_cutoff : float, default=0.92
        Axis-family routing threshold on the proportion of variance
        explained by the first principal component.
    """

    def __init__(
        self, spar: float = DEFAULT_SPAR, pve_cutoff: float = DEFAULT_PVE_CUTOFF
    ):
        self.spar = spar
        self.pve_cutoff = pve_cutoff

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> list[GestureCurve]:
        """Convert each letter segment in X into a GestureCurve."""
        return [curve_from_segment(seg, self.spar, self.pve_cutoff) for seg in X]
