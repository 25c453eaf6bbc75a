"""Command-line interface: segment, train, classify, evaluate, synth, plot.

Exit codes are a stable scripting contract: 0 success, 2 usage or bad
input, 3 segmentation failure, 4 training-data failure, 5 unclassifiable
segments in the output.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import svgplot
from .alphabet import LETTERS, AxisClass
from .classify import GestureClassifier
from .config import PipelineConfig, apply_overrides, load_config
from .curve import curve_from_segment
from .errors import (
    AccelerographError,
    ConfigError,
    CorruptSet,
    DegenerateSegment,
    FormatError,
    NoJerksDetected,
    NoTemplatesForAxis,
    SegmentationMismatch,
    TooFewPoints,
    TooShort,
    VersionError,
)
from .ingest import load_training_set, normalize_trace, parse_csv, save_training_set, trace_to_csv
from .segment import segment_trace
from .stats import ErrorExperiment, error_estimate, run_evaluation
from .synth import gen_stream, random_letters

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SEGMENTATION = 3
EXIT_TRAINING = 4
EXIT_CLASSIFICATION = 5

FORMAT_VERSION = 1

_EXIT_BY_ERROR = (
    ((VersionError, CorruptSet), EXIT_TRAINING),
    ((NoTemplatesForAxis,), EXIT_CLASSIFICATION),
    ((NoJerksDetected, SegmentationMismatch, DegenerateSegment, TooFewPoints),
     EXIT_SEGMENTATION),
    ((ConfigError, FormatError, TooShort), EXIT_USAGE),
)


def _fail(exc: AccelerographError) -> int:
    print(f"error: {exc}", file=sys.stderr)
    for types, code in _EXIT_BY_ERROR:
        if isinstance(exc, types):
            return code
    return EXIT_USAGE


def _config_from(args) -> PipelineConfig:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    return apply_overrides(
        cfg,
        window=getattr(args, "window", None),
        spar=getattr(args, "spar", None),
        pve_cutoff=getattr(args, "pve_cutoff", None),
        seed=getattr(args, "seed", None),
        alpha=getattr(args, "alpha", None),
    )


def _read_trace(path, cfg: PipelineConfig):
    data = Path(path).read_bytes()
    return normalize_trace(parse_csv(data, cfg.io or None))


def _dump_json(doc, out_path) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)


def cmd_segment(args, cfg: PipelineConfig) -> int:
    trace = _read_trace(args.input, cfg)
    segments, report, var = segment_trace(trace, cfg.window)
    doc = {
        "format_version": FORMAT_VERSION,
        "source": Path(args.input).name,
        "window": cfg.window,
        "cutoffs": {
            "kmeans": report.kmeans_cut,
            "gmm": report.gmm_cut,
            "bagged": report.bagged_cut,
            "em_iterations": report.em_iterations,
            "gmm_fallback": report.gmm_fallback,
        },
        "variance": [float(v) for v in var.values],
        "labels": [int(b) for b in report.labels],
        "segments": [
            {"start": s.start, "end": s.end, "n_samples": len(s)} for s in segments
        ],
    }
    out = args.out or str(Path(args.input).with_suffix(".segments.json"))
    _dump_json(doc, out)
    print(f"{len(segments)} segment(s) -> {out}")
    if args.plot:
        svg_path = str(Path(out).with_suffix(".svg"))
        svg = svgplot.variance_plot(
            var.values, report.kmeans_cut, report.gmm_cut, report.bagged_cut,
            title=f"moving variance: {Path(args.input).name}",
        )
        Path(svg_path).write_text(svg)
        print(f"variance plot -> {svg_path}")
    return EXIT_OK


_TRAIN_NAME = re.compile(r"^([A-Za-z])_.+$")


def cmd_train(args, cfg: PipelineConfig) -> int:
    directory = Path(args.input)
    files = sorted(directory.glob("*.csv"))
    curves, letters, ids, failures = [], [], [], []
    for path in files:
        match = _TRAIN_NAME.match(path.stem)
        if not match:
            failures.append((path.name, "filename must look like <LETTER>_<id>.csv"))
            continue
        try:
            trace = _read_trace(path, cfg)
            segments, _, _ = segment_trace(trace, cfg.window)
            if len(segments) != 1:
                raise SegmentationMismatch(1, len(segments))
            curves.append(curve_from_segment(segments[0], cfg.spar, cfg.pve_cutoff))
            letters.append(match.group(1).upper())
            ids.append(path.stem)
        except AccelerographError as exc:
            failures.append((path.name, str(exc)))
    for name, reason in failures:
        print(f"skipped {name}: {reason}", file=sys.stderr)
    if not curves:
        print(f"error: no usable training files in {directory}", file=sys.stderr)
        return EXIT_TRAINING
    clf = GestureClassifier(cfg.pve_cutoff).fit(curves, letters, source_ids=ids)
    for letter, source_id, detected in clf.conflicts_:
        print(
            f"dropped {source_id}: detected {detected.value!r} against the "
            f"{letter} majority {clf.letter_class_[letter].value!r}",
            file=sys.stderr,
        )
    training_set = clf.to_training_set(cfg.window, cfg.spar)
    out = args.out or "trainingset.json"
    save_training_set(training_set, out)
    print(f"{len(training_set)} template(s) from {len(files)} file(s) -> {out}")
    return EXIT_OK


def cmd_classify(args, cfg: PipelineConfig) -> int:
    training_set = load_training_set(args.set)
    if len(training_set) == 0:
        print("error: training set holds no templates", file=sys.stderr)
        return EXIT_TRAINING
    meta = training_set.meta
    clf = GestureClassifier.from_training_set(training_set)
    trace = _read_trace(args.input, cfg)
    segments, _, _ = segment_trace(trace, meta.window_length)
    out_letters = []
    for i, seg in enumerate(segments):
        curve = curve_from_segment(seg, meta.spar, meta.pve_cutoff)
        try:
            result = clf.classify_curve(curve)
            out_letters.append(result.letter)
            if args.verbose:
                runner = (
                    f" runner_up={result.runner_up[0]}:{result.runner_up[1]:.4g}"
                    if result.runner_up
                    else ""
                )
                print(
                    f"segment {i}: letter={result.letter} "
                    f"axis={curve.axis_class.value} pve={curve.pve:.4f} "
                    f"distance={result.distance:.4g}{runner}",
                    file=sys.stderr,
                )
        except NoTemplatesForAxis as exc:
            out_letters.append("?")
            print(f"segment {i}: {exc}", file=sys.stderr)
    print("".join(out_letters))
    return EXIT_CLASSIFICATION if "?" in out_letters else EXIT_OK


def cmd_evaluate(args, cfg: PipelineConfig) -> int:
    training_set = load_training_set(args.set)
    try:
        truth_map = json.loads(Path(args.truth).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read truth file: {exc}") from exc
    if not isinstance(truth_map, dict) or not truth_map:
        raise ConfigError("truth file must map CSV names to letter sequences")

    directory = Path(args.input)
    gamma = 0
    letters_done = 0
    truths = []
    confusion: dict[str, dict[str, int]] = {}
    mismatches = []
    for name in sorted(truth_map):
        truth = str(truth_map[name]).upper()
        path = directory / name
        try:
            trace = _read_trace(path, cfg)
            experiment, file_confusion = run_evaluation(
                trace, truth, training_set, cfg.alpha
            )
        except SegmentationMismatch as exc:
            mismatches.append(
                {"file": name, "expected": exc.expected, "found": exc.actual}
            )
            continue
        except AccelerographError as exc:
            mismatches.append({"file": name, "error": str(exc)})
            continue
        gamma += experiment.gamma
        letters_done += experiment.k
        truths.append(truth)
        for expected, row in file_confusion.items():
            target = confusion.setdefault(expected, {})
            for predicted, count in row.items():
                target[predicted] = target.get(predicted, 0) + count

    if letters_done == 0:
        print("error: no stream survived segmentation", file=sys.stderr)
        return EXIT_SEGMENTATION
    if len(set(truths)) == 1 and len(truths) > 1:
        n, k = len(truths), len(truths[0])
    else:
        n, k = 1, letters_done
    experiment = ErrorExperiment(k, n, gamma, cfg.alpha)
    estimate = error_estimate(experiment)
    report = {
        "format_version": FORMAT_VERSION,
        "gamma": gamma,
        "n": n,
        "k": k,
        "alpha": cfg.alpha,
        "p_hat": estimate.p_hat,
        "ci": [estimate.ci_low, estimate.ci_high],
        "degenerate_ci": estimate.degenerate,
        "confusion": confusion,
        "segmentation_failures": mismatches,
    }
    _dump_json(report, args.out)
    return EXIT_OK


def cmd_synth(args, cfg: PipelineConfig) -> int:
    rng = np.random.default_rng(cfg.synth.seed)
    if args.random is not None:
        letters = random_letters(args.random, rng)
    else:
        letters = args.letters.upper()
        bad = sorted(set(letters) - set(LETTERS))
        if bad:
            raise ConfigError(f"not letters of the gesture alphabet: {bad}")
    trace, spans = gen_stream(letters, cfg.synth, rng)
    out = Path(args.out or "stream.csv")
    out.write_text(trace_to_csv(trace))
    truth_path = out.with_suffix(".truth.txt")
    truth_path.write_text(letters + "\n")
    print(f"{len(letters)} letter(s), {len(trace)} samples -> {out} + {truth_path}")
    return EXIT_OK


def _plot_variance(doc, prefix: str) -> list[str]:
    cuts = doc["cutoffs"]
    svg = svgplot.variance_plot(
        np.array(doc["variance"], dtype=float),
        cuts["kmeans"], cuts["gmm"], cuts["bagged"],
        title=f"moving variance: {doc.get('source', '')}",
    )
    path = f"{prefix}_variance.svg"
    Path(path).write_text(svg)
    return [path]


def cmd_plot(args, cfg: PipelineConfig) -> int:
    source = Path(args.input)
    prefix = str(Path(args.out) if args.out else source.with_suffix(""))
    written = []
    if args.kind == "variance":
        try:
            doc = json.loads(source.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {source}: {exc}") from exc
        if "variance" not in doc or "cutoffs" not in doc:
            raise ConfigError("variance plots need a segment JSON artifact")
        written += _plot_variance(doc, prefix)
    else:
        training_set = load_training_set(source)
        by_letter: dict[str, list] = {}
        for t in training_set.templates:
            by_letter.setdefault(t.letter, []).append(t)
        if args.kind == "xy":
            for letter, templates in sorted(by_letter.items()):
                curves = [(t.points, t.source_id) for t in templates[:6]]
                path = f"{prefix}_xy_{letter}.svg"
                Path(path).write_text(svgplot.xy_plot(curves, title=f"letter {letter}"))
                written.append(path)
        elif args.kind == "axes":
            for letter, templates in sorted(by_letter.items()):
                path = f"{prefix}_axes_{letter}.svg"
                Path(path).write_text(
                    svgplot.axes_time_plot(
                        templates[0].points, title=f"letter {letter} vs time"
                    )
                )
                written.append(path)
        else:  # heatmap
            from .classify import distance_matrix

            clf = GestureClassifier.from_training_set(training_set)
            for axis_class in AxisClass:
                if axis_class not in clf.pools_:
                    continue
                labels, matrix = distance_matrix(clf, axis_class)
                path = f"{prefix}_heatmap_{axis_class.value}.svg"
                Path(path).write_text(
                    svgplot.heatmap(
                        labels, matrix, title=f"{axis_class.value} family distances"
                    )
                )
                written.append(path)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, help="random seed override")
    parser.add_argument("--window", type=int, help="moving-variance window")
    parser.add_argument("--spar", type=float, help="spline smoothing parameter")
    parser.add_argument("--pve-cutoff", dest="pve_cutoff", type=float,
                        help="axis-routing PVE threshold")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--out", help="output path (or prefix for plots)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accelerograph",
        description="Gesture typing from accelerometer traces: segment jerks, "
        "normalize letter curves, classify by nearest neighbour.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="split a CSV trace into letter segments")
    p.add_argument("input", help="accelerometer CSV file")
    p.add_argument("--plot", action="store_true", help="emit a variance SVG")
    _add_common(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("train", help="build a training set from labelled CSVs")
    p.add_argument("input", help="directory of <LETTER>_<id>.csv recordings")
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="classify a CSV trace into letters")
    p.add_argument("input", help="accelerometer CSV file")
    p.add_argument("--set", required=True, help="training-set JSON")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", help="score test streams against known truth")
    p.add_argument("input", help="directory of test CSV files")
    p.add_argument("--truth", required=True,
                   help="JSON file mapping CSV names to letter sequences")
    p.add_argument("--set", required=True, help="training-set JSON")
    p.add_argument("--alpha", type=float, help="significance level")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic stream with truth")
    p.add_argument("letters", nargs="?", help="letter sequence to render")
    p.add_argument("--random", type=int, metavar="K",
                   help="draw K letters from the alphabet frequencies")
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("plot", help="render SVG charts from JSON artifacts")
    p.add_argument("input", help="segments JSON or training-set JSON")
    p.add_argument("--kind", required=True,
                   choices=["variance", "xy", "axes", "heatmap"])
    _add_common(p)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "synth" and (args.letters is None) == (args.random is None):
        parser.error("synth needs a letter sequence or --random K (not both)")
    try:
        cfg = _config_from(args)
        return args.func(args, cfg)
    except AccelerographError as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
