"""Gesture typing from 3-axis accelerometer traces.

The pipeline: detect jerk bursts by clustering the moving variance of
the squared resultant acceleration, cut the quiet spans between them
into letter segments, normalize each segment into a smoothed 100-point
unit-square curve, route it to an axis family by principal-component
variance share, and classify by nearest neighbour under an accumulated
pointwise distance.
"""

from .alphabet import (
    LETTERS,
    AlphabetEntry,
    AxisClass,
    GesturePrimitive,
    alphabet_table,
    entry_for,
    expected_axis_class,
    gesture_length,
    letter_frequencies,
    mean_gesture_length,
)
from .classify import (
    ClassificationResult,
    GestureClassifier,
    classify,
    distance_matrix,
    soap_distance,
)
from .config import PipelineConfig, apply_overrides, load_config
from .curve import (
    CurveExtractor,
    GestureCurve,
    SmoothingConfig,
    curve_from_segment,
    detect_axis,
    principal_series,
    resample_100,
    scale_unit_square,
    smooth_axis,
)
from .errors import (
    AccelerographError,
    ConfigError,
    CorruptSet,
    DegenerateFit,
    DegenerateInput,
    DegenerateSegment,
    EmptyExperiment,
    FormatError,
    NoJerksDetected,
    NoTemplatesForAxis,
    SegmentationMismatch,
    ShapeError,
    TooFewPoints,
    TooShort,
    VersionError,
)
from .ingest import (
    SetMeta,
    TrainingSet,
    TrainingTemplate,
    load_training_set,
    normalize_trace,
    parse_csv,
    save_training_set,
    trace_to_csv,
)
from .segment import (
    CutoffReport,
    JerkSegmenter,
    VarSeries,
    bagged_cutoff,
    extract_segments,
    gmm_cutoff,
    kmeans_cutoff,
    moving_variance,
    neighbours_together,
    segment_trace,
    squared_resultant,
)
from .smoothing import SplineFit, smooth_series, spar_to_lambda
from .stats import (
    ErrorEstimate,
    ErrorExperiment,
    error_estimate,
    expected_gestures,
    normal_quantile,
    run_evaluation,
)
from .synth import LetterSpan, SynthConfig, gen_letter, gen_primitive, gen_stream, random_letters
from .trace import AccelSample, LetterSegment, Trace

__version__ = "0.1.0"

__all__ = [
    "AccelSample",
    "AccelerographError",
    "AlphabetEntry",
    "AxisClass",
    "ClassificationResult",
    "ConfigError",
    "CorruptSet",
    "CurveExtractor",
    "CutoffReport",
    "DegenerateFit",
    "DegenerateInput",
    "DegenerateSegment",
    "EmptyExperiment",
    "ErrorEstimate",
    "ErrorExperiment",
    "FormatError",
    "GestureClassifier",
    "GestureCurve",
    "GesturePrimitive",
    "JerkSegmenter",
    "LETTERS",
    "LetterSegment",
    "LetterSpan",
    "NoJerksDetected",
    "NoTemplatesForAxis",
    "PipelineConfig",
    "SegmentationMismatch",
    "SetMeta",
    "ShapeError",
    "SmoothingConfig",
    "SplineFit",
    "SynthConfig",
    "TooFewPoints",
    "TooShort",
    "Trace",
    "TrainingSet",
    "TrainingTemplate",
    "VarSeries",
    "VersionError",
    "alphabet_table",
    "apply_overrides",
    "bagged_cutoff",
    "classify",
    "curve_from_segment",
    "detect_axis",
    "distance_matrix",
    "entry_for",
    "error_estimate",
    "expected_axis_class",
    "expected_gestures",
    "extract_segments",
    "gen_letter",
    "gen_primitive",
    "gen_stream",
    "gesture_length",
    "gmm_cutoff",
    "kmeans_cutoff",
    "letter_frequencies",
    "load_config",
    "load_training_set",
    "mean_gesture_length",
    "moving_variance",
    "neighbours_together",
    "normal_quantile",
    "normalize_trace",
    "parse_csv",
    "principal_series",
    "random_letters",
    "resample_100",
    "run_evaluation",
    "save_training_set",
    "scale_unit_square",
    "segment_trace",
    "smooth_axis",
    "smooth_series",
    "soap_distance",
    "spar_to_lambda",
    "squared_resultant",
    "trace_to_csv",
]
