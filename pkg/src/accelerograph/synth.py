"""Synthetic accelerometer streams with known ground truth.

Letters render as half-sine acceleration lobes on the axis each
primitive moves along; jerks are short bursts of sample-rate shaking
loud enough for the moving variance to separate them cleanly from
letter motion.  Everything is driven by one seeded generator, so a
given (seed, config) pair always produces the identical trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import LETTERS, GesturePrimitive, entry_for, letter_frequencies
from .trace import Trace

GRAVITY = 9.81
GAP_SAMPLES = 5

# primitive -> (axis index, sign): tilting right/left sweeps x,
# down/up sweeps y; up and left are the negative directions.
_DIRECTIONS = {
    GesturePrimitive.RIGHT: (0, 1.0),
    GesturePrimitive.LEFT: (0, -1.0),
    GesturePrimitive.DOWN: (1, 1.0),
    GesturePrimitive.UP: (1, -1.0),
}


@dataclass(frozen=True)
class SynthConfig:
    sample_period_ms: int = 10
    pulse_duration: int = 40
    pulse_amplitude: float = 3.0
    noise_sd: float = 0.15
    jerk_duration: int = 20
    jerk_amplitude_sd: float = 6.0
    amplitude_jitter: float = 0.15
    duration_jitter: float = 0.15
    seed: int = 0

    def __post_init__(self):
        if self.sample_period_ms < 1:
            raise ValueError("sample period must be at least 1 ms")
        if self.pulse_duration < 4 or self.jerk_duration < 2:
            raise ValueError("pulse/jerk durations too short to render")
        if min(self.noise_sd, self.jerk_amplitude_sd, self.pulse_amplitude) < 0:
            raise ValueError("amplitudes cannot be negative")
        if not (0 <= self.amplitude_jitter < 1 and 0 <= self.duration_jitter < 1):
            raise ValueError("jitter fractions must lie in [0, 1)")


@dataclass(frozen=True)
class LetterSpan:
    """Inclusive sample indices of one letter's content between jerks."""

    letter: str
    start: int
    end: int


def _rng_for(config: SynthConfig, rng):
    return np.random.default_rng(config.seed) if rng is None else rng


def _noise_block(n: int, config: SynthConfig, rng) -> tuple[np.ndarray, ...]:
    x = rng.normal(0.0, config.noise_sd, n)
    y = rng.normal(0.0, config.noise_sd, n)
    z = GRAVITY + rng.normal(0.0, config.noise_sd, n)
    return x, y, z


def gen_primitive(
    p: GesturePrimitive, config: SynthConfig, rng=None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One rendered tilt: (x, y, z) acceleration samples.

    A half-sine lobe of jittered duration and amplitude on the moving
    axis, sensor noise on both planar axes, gravity plus noise on z.
    """
    rng = _rng_for(config, rng)
    j = config.duration_jitter
    duration = max(4, round(config.pulse_duration * (1.0 + rng.uniform(-j, j))))
    j = config.amplitude_jitter
    amplitude = config.pulse_amplitude * (1.0 + rng.uniform(-j, j))
    lobe = amplitude * np.sin(np.pi * np.arange(duration) / duration)
    axis, sign = _DIRECTIONS[p]
    motion = np.zeros((duration, 2))
    motion[:, axis] = sign * lobe
    x, y, z = _noise_block(duration, config, rng)
    return motion[:, 0] + x, motion[:, 1] + y, z


def gen_letter(
    letter: str, config: SynthConfig, rng=None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Letter rendered as its primitives with 5-sample rests between."""
    rng = _rng_for(config, rng)
    parts = []
    for i, primitive in enumerate(entry_for(letter).gesture):
        if i:
            parts.append(_noise_block(GAP_SAMPLES, config, rng))
        parts.append(gen_primitive(primitive, config, rng))
    return tuple(np.concatenate([part[k] for part in parts]) for k in range(3))


def _gen_jerk(config: SynthConfig, rng) -> tuple[np.ndarray, ...]:
    """A jerk burst: sample-rate shaking at the jerk amplitude.

    Every sample swings to ±jerk_amplitude_sd (amplitude-jittered,
    random initial direction per axis), so the burst is loud from its
    first sample and its moving variance is tightly concentrated.  A
    burst with quiet stretches would neither read as sudden nor
    cluster cleanly against letter motion.
    """
    n = config.jerk_duration
    amp = config.jerk_amplitude_sd
    j = config.amplitude_jitter
    flip = (-1.0) ** np.arange(n)
    series = []
    for _ in range(3):
        sign = rng.choice((-1.0, 1.0))
        series.append(amp * sign * flip * (1.0 + rng.uniform(-j, j, n)))
    x, y, z = series
    nx, ny, nz = _noise_block(n, config, rng)
    return x + nx, y + ny, z + nz


def gen_stream(
    letters, config: SynthConfig, rng=None
) -> tuple[Trace, list[LetterSpan]]:
    """Full stream: jerk, letter, jerk, ..., letter, closing jerk.

    Each letter sits between two jerks with a short rest at either
    edge; m letters produce m + 1 jerks.  The returned spans mark each
    letter's inter-jerk content in sample indices.
    """
    letters = [str(c).upper() for c in letters]
    if not letters:
        raise ValueError("need at least one letter to generate")
    rng = _rng_for(config, rng)
    parts = [_gen_jerk(config, rng)]
    cursor = config.jerk_duration
    spans = []
    for letter in letters:
        content = [
            _noise_block(GAP_SAMPLES, config, rng),
            gen_letter(letter, config, rng),
            _noise_block(GAP_SAMPLES, config, rng),
        ]
        length = sum(len(part[0]) for part in content)
        spans.append(LetterSpan(letter, cursor, cursor + length - 1))
        parts.extend(content)
        parts.append(_gen_jerk(config, rng))
        cursor += length + config.jerk_duration
    x, y, z = (np.concatenate([part[k] for part in parts]) for k in range(3))
    period = float(config.sample_period_ms)
    t = np.arange(len(x)) * period
    return Trace(t, x, y, z, period), spans


def random_letters(k: int, rng=None, seed: int = 0) -> str:
    """k letters drawn i.i.d. from the alphabet's relative frequencies."""
    if k < 1:
        raise ValueError("need k >= 1 letters")
    if rng is None:
        rng = np.random.default_rng(seed)
    freqs = letter_frequencies()
    p = np.array([freqs[letter] for letter in LETTERS])
    return "".join(rng.choice(list(LETTERS), size=k, p=p / p.sum()))
