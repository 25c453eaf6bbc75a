"""CSV parsing, trace normalization and training-set persistence.

The on-disk training set is a single JSON document; floats serialize
through Python's shortest round-trip repr, so load(save(s)) reproduces
every numeric field bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .alphabet import AxisClass
from .curve import DEFAULT_PVE_CUTOFF, N_EVAL, detect_axis
from .errors import ConfigError, CorruptSet, FormatError, TooShort, VersionError
from .segment import DEFAULT_WINDOW
from .smoothing import DEFAULT_SPAR
from .trace import Trace

FORMAT_VERSION = 1
MIN_SAMPLES = 20

_DEFAULT_COLUMNS = {"time": "time", "x": "x", "y": "y", "z": "z"}


def parse_csv(data, column_map=None, min_samples: int = MIN_SAMPLES) -> Trace:
    """Parse an accelerometer CSV export into a Trace.

    ``column_map`` maps the logical fields time/x/y/z to header names
    or 0-based column indices; by default the header row is expected
    to name them directly.  A row with an unparseable field fails the
    whole parse rather than being dropped silently.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("input is not UTF-8 text") from exc
    columns = dict(_DEFAULT_COLUMNS)
    if column_map:
        columns.update(column_map)

    reader = csv.reader(io.StringIO(data))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty CSV input") from None
    header = [h.strip() for h in header]

    indices = {}
    for fieldname, selector in columns.items():
        if isinstance(selector, int):
            if not 0 <= selector < len(header):
                raise ConfigError(
                    f"column index {selector} out of range for {len(header)} columns"
                )
            indices[fieldname] = selector
        else:
            try:
                indices[fieldname] = header.index(selector)
            except ValueError:
                raise ConfigError(
                    f"column {selector!r} not found in header {header}"
                ) from None

    rows = {"time": [], "x": [], "y": [], "z": []}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        for fieldname, idx in indices.items():
            if idx >= len(row):
                raise FormatError(f"line {lineno}: missing field {fieldname!r}")
            try:
                rows[fieldname].append(float(row[idx]))
            except ValueError:
                raise FormatError(
                    f"line {lineno}: unparseable {fieldname!r} value {row[idx]!r}"
                ) from None

    n = len(rows["time"])
    if n < min_samples:
        raise TooShort(f"{n} samples parsed; need at least {min_samples}")
    t = np.array(rows["time"])
    if not np.all(np.diff(t) > 0):
        raise FormatError("timestamps are not strictly increasing")
    return Trace.from_arrays(t, rows["x"], rows["y"], rows["z"])


def trace_to_csv(trace: Trace) -> str:
    """Inverse of parse_csv; floats keep their exact repr."""

    def num(v: float) -> str:
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    lines = ["time,x,y,z"]
    for s in trace:
        lines.append(f"{num(s.t)},{num(s.ax)},{num(s.ay)},{num(s.az)}")
    return "\n".join(lines) + "\n"


def normalize_trace(trace: Trace, tolerance: float = 0.2) -> Trace:
    """Resample a trace onto a uniform grid if its gaps are irregular.

    Gaps all within ``tolerance`` of the median gap leave the trace
    untouched; otherwise each axis is linearly interpolated onto the
    median-gap grid anchored at the first timestamp.
    """
    if len(trace) < 2:
        raise TooShort("normalization needs at least 2 samples")
    gaps = np.diff(trace.t)
    step = trace.sample_period
    if np.all(np.abs(gaps - step) <= tolerance * step):
        return trace
    n_out = int(np.floor((trace.t[-1] - trace.t[0]) / step)) + 1
    grid = trace.t[0] + step * np.arange(n_out)
    return Trace(
        grid,
        np.interp(grid, trace.t, trace.ax),
        np.interp(grid, trace.t, trace.ay),
        np.interp(grid, trace.t, trace.az),
        step,
    )


@dataclass(frozen=True)
class TrainingTemplate:
    """One stored gesture realisation.

    ``axis_class`` is reproducible from ``points``: re-running axis
    detection on the stored points yields the same family.
    """

    letter: str
    axis_class: AxisClass
    points: np.ndarray = field(repr=False)
    source_id: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (N_EVAL, 2):
            raise ValueError(f"template needs {N_EVAL} points, got {pts.shape}")
        if pts.min() < 0.0 or pts.max() > 1.0:
            raise ValueError("template points must lie in the unit square")
        if not (len(self.letter) == 1 and "A" <= self.letter <= "Z"):
            raise ValueError(f"letter must be A-Z, got {self.letter!r}")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class SetMeta:
    """Pipeline configuration a training set was built with."""

    window_length: int = DEFAULT_WINDOW
    spar: float = DEFAULT_SPAR
    pve_cutoff: float = DEFAULT_PVE_CUTOFF
    format_version: int = FORMAT_VERSION


@dataclass(frozen=True)
class TrainingSet:
    templates: tuple[TrainingTemplate, ...]
    meta: SetMeta = SetMeta()

    def __post_init__(self):
        object.__setattr__(self, "templates", tuple(self.templates))

    def __len__(self) -> int:
        return len(self.templates)

    def letters(self) -> list[str]:
        return sorted({t.letter for t in self.templates})


def save_training_set(training_set: TrainingSet, path) -> None:
    """Serialize a training set to JSON at path."""
    meta = training_set.meta
    doc = {
        "meta": {
            "window_length": meta.window_length,
            "spar": meta.spar,
            "pve_cutoff": meta.pve_cutoff,
            "format_version": meta.format_version,
        },
        "templates": [
            {
                "letter": t.letter,
                "axis_class": t.axis_class.value,
                "source_id": t.source_id,
                "points": [[float(x), float(y)] for x, y in t.points],
            }
            for t in training_set.templates
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_training_set(path) -> TrainingSet:
    """Load and validate a training set saved by save_training_set.

    Structural damage (wrong point counts, out-of-range coordinates,
    or an axis_class that detection does not reproduce) raises
    CorruptSet; an unknown format_version raises VersionError.
    """
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CorruptSet(f"not valid JSON: {exc}") from exc
    try:
        meta_doc = doc["meta"]
        version = meta_doc["format_version"]
    except (KeyError, TypeError):
        raise CorruptSet("missing meta.format_version") from None
    if version != FORMAT_VERSION:
        raise VersionError(
            f"unsupported training-set format_version {version!r}; "
            f"this build reads version {FORMAT_VERSION}"
        )
    try:
        meta = SetMeta(
            int(meta_doc["window_length"]),
            float(meta_doc["spar"]),
            float(meta_doc["pve_cutoff"]),
            int(version),
        )
        raw_templates = doc["templates"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptSet(f"malformed meta or templates: {exc}") from exc

    templates = []
    for i, raw in enumerate(raw_templates):
        try:
            template = TrainingTemplate(
                raw["letter"],
                AxisClass(raw["axis_class"]),
                np.asarray(raw["points"], dtype=float),
                raw.get("source_id", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptSet(f"template {i}: {exc}") from exc
        detected = detect_axis(template.points, meta.pve_cutoff).axis_class
        if detected is not template.axis_class:
            raise CorruptSet(
                f"template {i} ({template.letter}/{template.source_id}): stored "
                f"axis_class {template.axis_class.value!r} but detection says "
                f"{detected.value!r}"
            )
        templates.append(template)
    return TrainingSet(tuple(templates), meta)
