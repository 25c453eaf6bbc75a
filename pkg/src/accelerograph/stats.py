"""Gesture-count expectations and misclassification-rate estimation.

The error rate of a typing experiment is a binomial proportion: k
letters drawn at random, n attempts each, gamma misclassifications in
total.  The point estimate is gamma/(nk) and the confidence interval
is the large-sample normal (Wald) interval, clamped to [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .alphabet import mean_gesture_length
from .classify import GestureClassifier
from .curve import curve_from_segment
from .errors import EmptyExperiment, NoTemplatesForAxis, SegmentationMismatch
from .segment import segment_trace
from .trace import Trace

DEFAULT_ALPHA = 0.05

# Rational minimax approximation to the standard normal quantile
# (Acklam's coefficients), good to ~1e-9 on its own; one Halley step
# against erfc pushes it to full double precision.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {p}")
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q
              + _C[5])
             / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        r = q * q
        x = ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r
              + _A[5]) * q
             / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r
                + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q
               + _C[5])
              / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    # Halley refinement against the exact CDF.
    err = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = err * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)


def expected_gestures(text_length: float) -> float:
    """Expected gesture count for a text of the given letter length.

    Each letter costs its mean gesture length plus the jerk ending it,
    and one extra jerk opens the stream: (g_bar + 1) * L + 1.
    """
    if text_length < 0:
        raise ValueError("text length cannot be negative")
    return (mean_gesture_length() + 1.0) * text_length + 1.0


@dataclass(frozen=True)
class ErrorExperiment:
    """Counts of a typing experiment: k letters, n tries each."""

    k: int
    n: int
    gamma: int
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise ValueError("k and n cannot be negative")
        if not 0 <= self.gamma <= self.n * self.k:
            raise ValueError(
                f"gamma={self.gamma} outside [0, nk={self.n * self.k}]"
            )
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")


@dataclass(frozen=True)
class ErrorEstimate:
    p_hat: float
    ci_low: float
    ci_high: float

    def __post_init__(self):
        if not self.ci_low <= self.p_hat <= self.ci_high:
            raise ValueError("estimate must lie inside its interval")

    @property
    def degenerate(self) -> bool:
        """True when the interval has zero width (p_hat of 0 or 1)."""
        return self.ci_low == self.ci_high


def error_estimate(experiment: ErrorExperiment) -> ErrorEstimate:
    """Point estimate and Wald confidence interval for the error rate.

    p_hat = gamma / (nk); half-width z_{alpha/2} * sqrt(p_hat (1 -
    p_hat) / nk); bounds clamped to [0, 1].  At gamma = 0 the interval
    collapses to a point, which callers should flag rather than read
    as certainty.
    """
    nk = experiment.n * experiment.k
    if nk == 0:
        raise EmptyExperiment("experiment holds no attempts")
    p_hat = experiment.gamma / nk
    z = normal_quantile(1.0 - experiment.alpha / 2.0)
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / nk)
    return ErrorEstimate(p_hat, max(0.0, p_hat - half), min(1.0, p_hat + half))


def run_evaluation(
    test_stream: Trace,
    ground_truth: str,
    training_set,
    alpha: float = DEFAULT_ALPHA,
) -> tuple[ErrorExperiment, dict[str, dict[str, int]]]:
    """Classify a stream against known truth and count mismatches.

    The stream must segment into exactly one gesture per truth letter;
    a count mismatch aborts with SegmentationMismatch rather than
    guessing an alignment, so user/segmentation error never leaks into
    the classification-error statistic.  Returns the experiment counts
    (n=1, k=len(truth)) and a truth-by-predicted confusion table;
    segments with no usable template pool predict '?'.
    """
    truth = [letter.upper() for letter in ground_truth]
    meta = training_set.meta
    segments, _, _ = segment_trace(test_stream, meta.window_length)
    if len(segments) != len(truth):
        raise SegmentationMismatch(len(truth), len(segments))
    clf = GestureClassifier.from_training_set(training_set)
    confusion: dict[str, dict[str, int]] = {}
    gamma = 0
    for seg, expected in zip(segments, truth):
        curve = curve_from_segment(seg, meta.spar, meta.pve_cutoff)
        try:
            predicted = clf.classify_curve(curve).letter
        except NoTemplatesForAxis:
            predicted = "?"
        if predicted != expected:
            gamma += 1
        row = confusion.setdefault(expected, {})
        row[predicted] = row.get(predicted, 0) + 1
    return ErrorExperiment(len(truth), 1, gamma, alpha), confusion
