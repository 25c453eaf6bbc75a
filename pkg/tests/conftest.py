"""Shared fixtures: small synthetic corpora reused across test modules."""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from accelerograph import (
    GestureClassifier,
    LETTERS,
    SynthConfig,
    curve_from_segment,
    gen_stream,
    segment_trace,
)


_acceptance_key = pytest.StashKey[list]()


class _CriterionTimer:
    """Lets a criterion substitute a tighter measurement for the wall time."""

    elapsed: float | None = None


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion.

    The lines are echoed in a terminal section after the run so they
    survive output capture, and each block enforces its runtime budget.
    """
    log = request.config.stash.setdefault(_acceptance_key, [])

    @contextmanager
    def _criterion(num: int, description: str, budget_s: float):
        def emit(line):
            log.append(line)
            print(line)  # also lands in the captured log on failure

        timer = _CriterionTimer()
        start = time.perf_counter()
        try:
            yield timer
        except BaseException:
            emit(f"FAIL criterion {num}: {description}")
            raise
        elapsed = (
            timer.elapsed if timer.elapsed is not None else time.perf_counter() - start
        )
        shown = f"{elapsed * 1000:.3f} ms" if budget_s < 1 else f"{elapsed:.2f} s"
        if elapsed >= budget_s:
            emit(
                f"FAIL criterion {num}: {description} "
                f"(runtime {shown} over the {budget_s} s budget)"
            )
            raise AssertionError(f"criterion {num} exceeded runtime budget: {shown}")
        emit(f"PASS criterion {num}: {description} ({shown})")

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def curves_for(letters, seed, noise_sd=0.15):
    """Segment one synthetic stream and normalize every letter in it."""
    cfg = SynthConfig(seed=seed, noise_sd=noise_sd)
    trace, spans = gen_stream(letters, cfg)
    segments, _, _ = segment_trace(trace)
    assert len(segments) == len(spans), "fixture stream failed to segment"
    return [curve_from_segment(seg) for seg in segments]


@pytest.fixture(scope="session")
def alphabet_curves():
    """One clean curve per letter, keyed by letter."""
    out = {}
    for i, letter in enumerate(LETTERS):
        out[letter] = curves_for(letter, seed=40_000 + i, noise_sd=0.0)[0]
    return out


@pytest.fixture(scope="session")
def small_classifier():
    """Classifier fitted on three noisy realisations of each letter."""
    X, y = [], []
    for i, letter in enumerate(LETTERS):
        for r in range(3):
            X.append(curves_for(letter, seed=50_000 + 10 * i + r)[0])
            y.append(letter)
    clf = GestureClassifier().fit(X, y)
    return clf


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
