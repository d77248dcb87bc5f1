"""Command-line interface: detect, batch, generate, eval, dump-diagnostics.

Exit codes: 0 success, 1 usage error, 2 processing failure (``batch`` only
under ``--strict``).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .batch import RESULTS_NAME, run_batch
from .config import CONFIG_KEYS, config_from_mapping, load_config
from .errors import FingertraceError
from .evaluate import default_match_radius, evaluate
from .pipeline import DetectionResult, annotate, detect, diagnostics
from .raster import load_ppm, save_ppm
from .synth import GroundTruth, corpus_specs, generate_hand, spec_from_dict

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file (default: $FINGERTRACE_CONFIG)")
    group = p.add_argument_group("config overrides")
    for key in CONFIG_KEYS:
        group.add_argument(f"--{key.replace('_', '-')}", dest=f"cfg_{key}", metavar="VALUE")


def _config(args):
    try:
        base = load_config(args.config)
        overrides = {k: getattr(args, f"cfg_{k}") for k in CONFIG_KEYS if getattr(args, f"cfg_{k}") is not None}
        return config_from_mapping(overrides, base)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"bad configuration: {exc}") from exc


def _read_jsonl(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def cmd_detect(args) -> int:
    config = _config(args)
    try:
        frame = load_ppm(args.frame)
        result = detect(frame, config)
    except (OSError, FingertraceError) as exc:
        print(f"{args.frame}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(json.dumps(result.to_record(Path(args.frame).name)))
    if args.annotate:
        save_ppm(args.annotate, annotate(frame, result, config))
    return EXIT_OK


def cmd_batch(args) -> int:
    config = _config(args)
    summary = run_batch(args.inputs, config, args.out, jobs=args.jobs, annotated=args.annotate)
    print(json.dumps(summary, indent=2))
    if args.strict and summary["failed"]:
        return EXIT_FAILURE
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        doc = json.loads(Path(args.spec).read_text())
        if "hands" in doc:
            specs = [spec_from_dict(h) for h in doc["hands"]]
        else:
            size = (int(doc.get("width", 640)), int(doc.get("height", 480)))
            specs = corpus_specs(int(doc.get("count", 10)), int(doc.get("seed", 0)), size, float(doc.get("noise", 0.0)))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad corpus spec {args.spec}: {exc}") from exc
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "truths.jsonl", "w") as fh:
        for i, spec in enumerate(specs):
            try:
                image, truth = generate_hand(spec)
            except FingertraceError as exc:
                print(f"hand {i}: {exc}", file=sys.stderr)
                return EXIT_FAILURE
            name = f"frame_{i:04d}.ppm"
            save_ppm(out / name, image)
            fh.write(json.dumps(truth.to_record(name)) + "\n")
    print(f"wrote {len(specs)} frames to {out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    det_path = Path(args.detections)
    if det_path.is_dir():
        det_path = det_path / RESULTS_NAME
    try:
        dets = {r["frame"]: DetectionResult.from_record(r) for r in _read_jsonl(det_path)}
        truth_recs = _read_jsonl(args.truths)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    truths = [GroundTruth.from_record(r) for r in truth_recs]
    radius = args.radius
    if radius is None:
        radius = default_match_radius(truths[0].width, truths[0].height) if truths else 5.0
    # a frame that failed detection scores as zero tips found
    aligned = [dets.get(r["frame"]) for r in truth_recs]
    kept = [(d, t) for d, t in zip(aligned, truths) if d is not None]
    report = evaluate([d for d, _ in kept], [t for _, t in kept], radius)
    missing = [t for d, t in zip(aligned, truths) if d is None]
    report.false_negatives += sum(len(t.tips) for t in missing)
    summary = report.summary()
    summary.update(match_radius=radius, missing_frames=len(missing))
    text = json.dumps(summary, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return EXIT_OK


def cmd_dump(args) -> int:
    config = _config(args)
    try:
        diag = diagnostics(load_ppm(args.frame), config)
    except (OSError, FingertraceError) as exc:
        print(f"{args.frame}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    text = json.dumps(diag)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fingertrace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="detect fingertips in one PPM frame")
    p.add_argument("frame")
    p.add_argument("--annotate", metavar="OUT.ppm", help="write the annotated frame here")
    _add_config_flags(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("batch", help="run detection over frames or directories")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--annotate", action="store_true", help="also write annotated frames")
    p.add_argument("--strict", action="store_true", help="exit 2 if any frame fails")
    _add_config_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("generate", help="render a synthetic corpus from a JSON spec file")
    p.add_argument("spec")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="score detections against ground truth")
    p.add_argument("detections", help="results.jsonl or a batch output directory")
    p.add_argument("truths", help="truths.jsonl from 'generate'")
    p.add_argument("--radius", type=float, help="match radius in px (default 5 at 640x480, scaled)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dump-diagnostics", help="scan counts and histograms for one frame as JSON")
    p.add_argument("frame")
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fingertrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
