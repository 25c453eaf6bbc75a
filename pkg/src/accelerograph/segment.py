"""Jerk detection and letter extraction from a continuous trace.

The trace is reduced to the moving variance of its squared resultant
acceleration.  Two 1-D clusterings (k-means and an EM-fitted two-part
Gaussian mixture) each propose a low/high cutoff; their average is the
working cutoff.  A two-neighbour hysteresis pass labels every variance
point, and the low runs between high runs become letter segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import DegenerateFit, DegenerateInput, NoJerksDetected, TooShort
from .trace import LetterSegment, Trace

DEFAULT_WINDOW = 10

_EM_TOL = 1e-6
_EM_MAX_ITER = 100
_VAR_FLOOR = 1e-12


@dataclass(frozen=True)
class VarSeries:
    """Moving variance of a base series.

    ``values[i]`` is the unbiased sample variance of the ``window``
    base points starting at index ``i``; length is
    ``base_len - window + 1``.
    """

    values: np.ndarray
    window: int
    base_len: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.values) != self.base_len - self.window + 1:
            raise ValueError("variance series length inconsistent with window")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CutoffReport:
    """Cutoffs and per-point labels produced for one trace.

    ``labels`` holds one boolean per variance point, True for the high
    (jerk) state after hysteresis.  ``gmm_fallback`` marks traces where
    the mixture fit degenerated and the k-means cutoff was used alone.
    """

    kmeans_cut: float
    gmm_cut: float
    bagged_cut: float
    em_iterations: int
    labels: np.ndarray = field(repr=False)
    gmm_fallback: bool = False

    def __post_init__(self):
        object.__setattr__(self, "labels", np.asarray(self.labels, dtype=bool))


def squared_resultant(trace: Trace) -> np.ndarray:
    """Per-sample sum of squared accelerations over all three axes."""
    return trace.ax**2 + trace.ay**2 + trace.az**2


def moving_variance(series, window: int = DEFAULT_WINDOW) -> VarSeries:
    """Sliding-window sample variance (unbiased, divisor window-1)."""
    series = np.asarray(series, dtype=float)
    n = len(series)
    if window < 2:
        raise ValueError("window must be >= 2")
    if n < window:
        raise TooShort(f"series of {n} points is shorter than window {window}")
    values = sliding_window_view(series, window).var(axis=1, ddof=1)
    return VarSeries(values, window, n)


def kmeans_cutoff(values) -> tuple[float, np.ndarray]:
    """Two-cluster Lloyd split of 1-D values.

    Centers start at the extremes, which is deterministic and converges
    to the global optimum for separated clusters.  The cutoff is the
    midpoint between the top of the low cluster and the bottom of the
    high cluster.  Returns (cutoff, boolean high-cluster assignment).
    """
    v = np.asarray(values, dtype=float)
    if v.size < 2 or v.min() == v.max():
        raise DegenerateInput("values carry no contrast to cluster")
    lo, hi = float(v.min()), float(v.max())
    high = v > (lo + hi) / 2.0
    for _ in range(100):
        new_lo = float(v[~high].mean())
        new_hi = float(v[high].mean())
        if new_lo == lo and new_hi == hi:
            break
        lo, hi = new_lo, new_hi
        high = v > (lo + hi) / 2.0
    cutoff = (float(v[~high].max()) + float(v[high].min())) / 2.0
    return cutoff, high


def _log_normal_pdf(x: np.ndarray, mean: float, var: float) -> np.ndarray:
    return -0.5 * (np.log(2.0 * np.pi * var) + (x - mean) ** 2 / var)


def gmm_cutoff(
    values,
    tol: float = _EM_TOL,
    max_iter: int = _EM_MAX_ITER,
) -> tuple[float, int]:
    """Cutoff from a two-component 1-D Gaussian mixture fit by EM.

    Initialized from the k-means split (means, within-cluster variances
    and mixing weights).  Points are hard-assigned to the component with
    the larger posterior, and the cutoff uses the same midpoint rule as
    the k-means path.  Returns (cutoff, EM iterations run).

    Raises DegenerateFit when a component collapses (vanishing weight,
    non-finite likelihood, or an empty side after assignment); callers
    fall back to the k-means cutoff alone.
    """
    v = np.asarray(values, dtype=float)
    if v.size < 4:
        raise DegenerateInput("need at least 4 values for a mixture fit")
    _, high = kmeans_cutoff(v)  # also rejects contrast-free input

    means = np.array([v[~high].mean(), v[high].mean()])
    variances = np.array(
        [max(v[~high].var(), _VAR_FLOOR), max(v[high].var(), _VAR_FLOOR)]
    )
    weights = np.array([(~high).sum(), high.sum()], dtype=float) / v.size

    log_resp = np.empty((v.size, 2))
    prev_ll = -np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        for k in range(2):
            log_resp[:, k] = np.log(weights[k]) + _log_normal_pdf(
                v, means[k], variances[k]
            )
        norm = np.logaddexp(log_resp[:, 0], log_resp[:, 1])
        ll = float(norm.sum())
        if not np.isfinite(ll):
            raise DegenerateFit("non-finite mixture likelihood")
        resp = np.exp(log_resp - norm[:, None])

        counts = resp.sum(axis=0)
        if counts.min() < 1e-10:
            raise DegenerateFit("mixture component lost all responsibility")
        means = (resp * v[:, None]).sum(axis=0) / counts
        variances = (resp * (v[:, None] - means) ** 2).sum(axis=0) / counts
        variances = np.maximum(variances, _VAR_FLOOR)
        weights = counts / v.size

        if ll - prev_ll < tol and iterations > 1:
            break
        prev_ll = ll

    upper = int(np.argmax(means))
    assigned_high = resp[:, upper] >= resp[:, 1 - upper]
    if assigned_high.all() or not assigned_high.any():
        raise DegenerateFit("mixture assignment left one side empty")
    cutoff = (float(v[~assigned_high].max()) + float(v[assigned_high].min())) / 2.0
    return cutoff, iterations


def bagged_cutoff(kmeans_cut: float, gmm_cut: float) -> float:
    """Arithmetic mean of the two cutoffs."""
    return (kmeans_cut + gmm_cut) / 2.0


def neighbours_together(values, cutoff: float) -> np.ndarray:
    """Hysteresis labelling of variance points against a cutoff.

    A left-to-right pass starting in the low state.  A point flips the
    state only when it crosses the cutoff and both of its next two
    neighbours sit on the same side; near the end of the series the
    confirmation window truncates to whatever neighbours exist.  Returns
    one boolean per point, True for the high state.
    """
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n < 3:
        raise TooShort("hysteresis needs at least 3 points")
    above = v > cutoff
    labels = np.empty(n, dtype=bool)
    state = False
    for i in range(n):
        confirm = above[i + 1 : i + 3]
        if not state:
            if above[i] and confirm.all():
                state = True
        else:
            if not above[i] and not confirm.any():
                state = False
        labels[i] = state
    return labels


def _label_runs(labels: np.ndarray) -> list[tuple[bool, int, int]]:
    """Maximal runs as (value, start, end) with inclusive ends."""
    runs = []
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] != labels[start]:
            runs.append((bool(labels[start]), start, i - 1))
            start = i
    return runs


def extract_segments(
    labels, window: int, trace: Trace
) -> list[LetterSegment]:
    """Letter segments from hysteresis labels.

    Letters are the maximal low runs strictly between two high runs;
    leading and trailing low content is discarded because a stream
    begins and ends with a jerk.  A variance-index span [s, e] maps to
    the sample span [s + window//2, e + window//2] (center attribution),
    and low runs shorter than one window are dropped as spurious.
    """
    labels = np.asarray(labels, dtype=bool)
    runs = _label_runs(labels)
    high_positions = [i for i, (val, _, _) in enumerate(runs) if val]
    if len(high_positions) < 2:
        raise NoJerksDetected(
            f"found {len(high_positions)} jerk run(s); need at least 2"
        )
    shift = window // 2
    segments = []
    for idx in range(high_positions[0] + 1, high_positions[-1]):
        val, s, e = runs[idx]
        if val:
            continue
        if e - s + 1 < window:
            continue
        start, end = s + shift, e + shift
        segments.append(
            LetterSegment(
                start,
                end,
                trace.t[start : end + 1],
                trace.ax[start : end + 1],
                trace.ay[start : end + 1],
            )
        )
    return segments


def segment_trace(
    trace: Trace, window: int = DEFAULT_WINDOW
) -> tuple[list[LetterSegment], CutoffReport, VarSeries]:
    """Full segmentation of one trace.

    Deterministic: both clusterings have fixed initialization, so the
    same trace always yields the same segments.  A degenerate mixture
    fit falls back to the k-means cutoff alone (recorded in the
    report); a contrast-free variance series means no jerks.
    """
    if len(trace) < 2 * window:
        raise TooShort(
            f"trace of {len(trace)} samples cannot hold two jerk windows of {window}"
        )
    var = moving_variance(squared_resultant(trace), window)
    try:
        k_cut, _ = kmeans_cutoff(var.values)
    except DegenerateInput as exc:
        raise NoJerksDetected("no variance contrast in trace") from exc
    fallback = False
    try:
        g_cut, em_iters = gmm_cutoff(var.values)
    except (DegenerateFit, DegenerateInput):
        g_cut, em_iters = k_cut, 0
        fallback = True
    cut = bagged_cutoff(k_cut, g_cut)
    labels = neighbours_together(var.values, cut)
    report = CutoffReport(k_cut, g_cut, cut, em_iters, labels, fallback)
    segments = extract_segments(labels, window, trace)
    return segments, report, var


class JerkSegmenter(BaseEstimator, TransformerMixin):
    """Stateless transformer splitting traces into letter segments.

    Parameters
    ----------
    window : int, default=10
        Moving-variance window length in samples.
    """

    def __init__(self, window: int = DEFAULT_WINDOW):
        self.window = window

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> list[list[LetterSegment]]:
        """Segment each trace in X; returns one segment list per trace."""
        if isinstance(X, Trace):
            raise TypeError("transform expects a sequence of traces")
        return [segment_trace(trace, self.window)[0] for trace in X]
