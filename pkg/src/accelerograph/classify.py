"""Nearest-neighbour letter classification over gesture curves.

Distances accumulate the pointwise gap between two curves sampled at
the same 100 instants: the planar Euclidean gap for both-axes curves,
the absolute gap of the rotated principal series for single-axis
curves.  A test curve is compared only against training templates of
its own axis family, which caps how far a misclassification can stray.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .alphabet import AxisClass
from .curve import DEFAULT_PVE_CUTOFF, GestureCurve, detect_axis, scale_unit_square
from .errors import NoTemplatesForAxis, ShapeError
from .ingest import SetMeta, TrainingSet, TrainingTemplate
from .segment import DEFAULT_WINDOW
from .smoothing import DEFAULT_SPAR

# Majority tie-break order for a letter whose templates split evenly
# across families.
_CLASS_PRIORITY = {AxisClass.X_AXIS: 0, AxisClass.Y_AXIS: 1, AxisClass.BOTH_AXES: 2}


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of classifying one curve.

    ``runner_up`` is the nearest template carrying a different letter
    than the winner, or None when the candidate pool holds only one
    letter.
    """

    letter: str
    distance: float
    axis_class: AxisClass
    runner_up: tuple[str, float] | None = None


def soap_distance(a: GestureCurve, b: GestureCurve, mode: AxisClass) -> float:
    """Accumulated pointwise distance between two curves.

    Both-axes mode sums the Euclidean gaps of the (x, y) points;
    single-axis mode sums absolute gaps of the principal series.
    Zero iff the compared series agree at every sample.
    """
    if mode is AxisClass.BOTH_AXES:
        if a.points.shape != b.points.shape:
            raise ShapeError("curves must hold the same number of points")
        d = a.points - b.points
        return float(np.hypot(d[:, 0], d[:, 1]).sum())
    if a.principal_series is None or b.principal_series is None:
        raise ShapeError("single-axis comparison requires principal series on both curves")
    if a.principal_series.shape != b.principal_series.shape:
        raise ShapeError("principal series must hold the same number of points")
    return float(np.abs(a.principal_series - b.principal_series).sum())


@dataclass(frozen=True)
class _Pool:
    """Stacked templates of one axis family."""

    letters: list[str]
    source_ids: list[str]
    points: np.ndarray = field(repr=False)  # (m, 100, 2)
    series: np.ndarray | None = field(repr=False)  # (m, 100) single-axis only

    def __len__(self) -> int:
        return len(self.letters)


def _pool_distances(pool: _Pool, curve: GestureCurve, mode: AxisClass) -> np.ndarray:
    if mode is AxisClass.BOTH_AXES:
        d = pool.points - curve.points[None, :, :]
        return np.hypot(d[:, :, 0], d[:, :, 1]).sum(axis=1)
    return np.abs(pool.series - curve.principal_series[None, :]).sum(axis=1)


class GestureClassifier(BaseEstimator, ClassifierMixin):
    """1-nearest-neighbour classifier over axis-partitioned templates.

    Training curves are grouped by letter; each letter's axis family is
    the majority vote over its curves' detected families, and curves
    disagreeing with their letter's majority are dropped from the pools
    and recorded in ``conflicts_``.  Prediction routes a test curve to
    the pool of its own axis family and returns the letter of the
    nearest template, breaking distance ties alphabetically.

    Parameters
    ----------
    pve_cutoff : float, default=0.92
        Routing threshold applied when raw (100, 2) point arrays are
        passed instead of ready-made GestureCurve objects.
    """

    def __init__(self, pve_cutoff: float = DEFAULT_PVE_CUTOFF):
        self.pve_cutoff = pve_cutoff

    def _as_curve(self, x) -> GestureCurve:
        if isinstance(x, GestureCurve):
            return x
        return detect_axis(scale_unit_square(np.asarray(x, dtype=float)), self.pve_cutoff)

    def fit(self, X, y, source_ids=None):
        """Build template pools from curves X and letter labels y."""
        curves = [self._as_curve(x) for x in X]
        letters = [str(label).upper() for label in y]
        if len(curves) != len(letters):
            raise ValueError("X and y lengths differ")
        if not curves:
            raise ValueError("cannot fit on an empty training set")
        if source_ids is None:
            counts: Counter = Counter()
            source_ids = []
            for letter in letters:
                counts[letter] += 1
                source_ids.append(f"{letter}_{counts[letter]}")

        by_letter: dict[str, list[int]] = {}
        for i, letter in enumerate(letters):
            by_letter.setdefault(letter, []).append(i)

        self.letter_class_ = {}
        self.conflicts_ = []
        kept: dict[AxisClass, list[int]] = {cls: [] for cls in AxisClass}
        for letter in sorted(by_letter):
            votes = Counter(curves[i].axis_class for i in by_letter[letter])
            majority = min(
                votes, key=lambda cls: (-votes[cls], _CLASS_PRIORITY[cls])
            )
            self.letter_class_[letter] = majority
            for i in by_letter[letter]:
                if curves[i].axis_class is majority:
                    kept[majority].append(i)
                else:
                    self.conflicts_.append(
                        (letter, source_ids[i], curves[i].axis_class)
                    )

        self.pools_ = {}
        for cls, indices in kept.items():
            if not indices:
                continue
            indices.sort(key=lambda i: (letters[i], source_ids[i]))
            pool_series = None
            if cls is not AxisClass.BOTH_AXES:
                pool_series = np.stack(
                    [curves[i].principal_series for i in indices]
                )
            self.pools_[cls] = _Pool(
                [letters[i] for i in indices],
                [source_ids[i] for i in indices],
                np.stack([curves[i].points for i in indices]),
                pool_series,
            )
        self.classes_ = np.array(sorted(by_letter))
        self.n_templates_ = sum(len(p) for p in self.pools_.values())
        return self

    def classify_curve(self, x) -> ClassificationResult:
        """Full nearest-neighbour verdict for a single curve."""
        curve = self._as_curve(x)
        pool = self.pools_.get(curve.axis_class)
        if pool is None:
            raise NoTemplatesForAxis(
                f"no templates in the {curve.axis_class.value!r} family"
            )
        dist = _pool_distances(pool, curve, curve.axis_class)
        order = np.lexsort((np.array(pool.letters), dist))
        best = order[0]
        winner = pool.letters[best]
        runner_up = None
        for idx in order[1:]:
            if pool.letters[idx] != winner:
                runner_up = (pool.letters[idx], float(dist[idx]))
                break
        return ClassificationResult(
            winner, float(dist[best]), curve.axis_class, runner_up
        )

    def predict(self, X) -> np.ndarray:
        """Nearest-neighbour letter for each curve in X."""
        return np.array([self.classify_curve(x).letter for x in X])

    def to_training_set(
        self, window_length: int = DEFAULT_WINDOW, spar: float = DEFAULT_SPAR
    ) -> TrainingSet:
        """Persistable snapshot of the fitted template pools."""
        templates = []
        for axis_cls, pool in self.pools_.items():
            for i in range(len(pool)):
                templates.append(
                    TrainingTemplate(
                        pool.letters[i], axis_cls, pool.points[i], pool.source_ids[i]
                    )
                )
        templates.sort(key=lambda t: (t.letter, t.source_id))
        return TrainingSet(
            tuple(templates), SetMeta(window_length, spar, self.pve_cutoff)
        )

    @classmethod
    def from_training_set(cls, training_set) -> "GestureClassifier":
        """Classifier fitted from a persisted training set."""
        clf = cls(pve_cutoff=training_set.meta.pve_cutoff)
        clf.fit(
            [t.points for t in training_set.templates],
            [t.letter for t in training_set.templates],
            source_ids=[t.source_id for t in training_set.templates],
        )
        return clf


def classify(curve: GestureCurve, training_set) -> ClassificationResult:
    """One-shot classification against a persisted training set."""
    return GestureClassifier.from_training_set(training_set).classify_curve(curve)


def distance_matrix(classifier: GestureClassifier, axis_class: AxisClass):
    """Pairwise template distances within one axis family.

    Returns (labels, matrix) with labels ordered by (letter,
    source_id); the matrix is symmetric with a zero diagonal.
    """
    pool = classifier.pools_.get(axis_class)
    if pool is None:
        raise NoTemplatesForAxis(
            f"no templates in the {axis_class.value!r} family"
        )
    if axis_class is AxisClass.BOTH_AXES:
        d = pool.points[:, None, :, :] - pool.points[None, :, :, :]
        matrix = np.hypot(d[..., 0], d[..., 1]).sum(axis=2)
    else:
        matrix = np.abs(pool.series[:, None, :] - pool.series[None, :, :]).sum(axis=2)
    labels = list(zip(pool.letters, pool.source_ids))
    np.fill_diagonal(matrix, 0.0)
    return labels, matrix
