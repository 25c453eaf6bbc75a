"""The three pipeline stages behave as scikit-learn estimators."""

import numpy as np
from sklearn.base import clone

from accelerograph import (
    CurveExtractor,
    GestureClassifier,
    JerkSegmenter,
    SynthConfig,
    gen_stream,
)
from tests.conftest import curves_for


def test_stage_chaining_by_hand():
    # segments -> curves -> letters, stage by stage
    traces = [gen_stream(word, SynthConfig(seed=900 + i))[0]
              for i, word in enumerate(["IT", "ME"])]
    segments = JerkSegmenter().fit_transform(traces)
    assert [len(s) for s in segments] == [2, 2]

    extractor = CurveExtractor()
    curves = [extractor.transform(batch) for batch in segments]

    X, y = [], []
    for i, letter in enumerate("ITME"):
        X.append(curves_for(letter, seed=910 + i)[0])
        y.append(letter)
    clf = GestureClassifier().fit(X, y)
    assert list(clf.predict(curves[0])) == ["I", "T"]
    assert list(clf.predict(curves[1])) == ["M", "E"]


def test_clone_preserves_params():
    for est in (
        JerkSegmenter(window=14),
        CurveExtractor(spar=0.6, pve_cutoff=0.9),
        GestureClassifier(pve_cutoff=0.85),
    ):
        twin = clone(est)
        assert twin.get_params() == est.get_params()
        assert twin is not est


def test_fit_returns_self():
    seg = JerkSegmenter()
    assert seg.fit() is seg
    ext = CurveExtractor()
    assert ext.fit() is ext


def test_classifier_exposes_fitted_attributes():
    X = [curves_for(letter, seed=930 + i)[0] for i, letter in enumerate("AB")]
    clf = GestureClassifier().fit(X, list("AB"))
    assert list(clf.classes_) == ["A", "B"]
    assert clf.n_templates_ == 2
    assert clf.conflicts_ == []
    assert set(clf.letter_class_) == {"A", "B"}


def test_set_params_returns_self():
    est = CurveExtractor()
    assert est.set_params(spar=0.2) is est
    assert est.spar == 0.2


def test_transform_outputs_are_plain_sequences():
    trace, _ = gen_stream("GO", SynthConfig(seed=940))
    segments = JerkSegmenter().transform([trace])
    curves = CurveExtractor().transform(segments[0])
    assert isinstance(curves, list)
    assert curves[0].points.shape == (100, 2)
    assert isinstance(np.asarray(curves[0].points), np.ndarray)
