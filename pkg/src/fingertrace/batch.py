"""Batch driver: frames in, JSON Lines results and per-stage timing statistics out."""
from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import RunConfig
from .pipeline import STAGES, StageTrace, annotate, detect
from .raster import load_ppm, save_ppm

log = logging.getLogger(__name__)

FRAME_SUFFIXES = (".ppm", ".pnm")
RESULTS_NAME = "results.jsonl"
SUMMARY_NAME = "summary.json"


def collect_inputs(paths) -> list[Path]:
    """Expand directories into their sorted frame files; plain files pass through."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    frames = []
    for p in map(Path, paths):
        if p.is_dir():
            frames.extend(sorted(f for f in p.iterdir() if f.suffix.lower() in FRAME_SUFFIXES))
        else:
            frames.append(p)
    return frames


def process_frame(path: Path, config: RunConfig, annotate_dir: Path | None = None) -> dict:
    trace = StageTrace()
    try:
        frame = load_ppm(path)
        result = detect(frame, config, trace)
    except Exception as exc:  # recorded per frame, batch continues
        return {"frame": path.name, "error": f"{type(exc).__name__}: {exc}"}
    if annotate_dir is not None:
        save_ppm(annotate_dir / f"{path.stem}_annotated.ppm", annotate(frame, result, config))
    return {
        "frame": path.name,
        "record": result.to_record(path.name),
        "timings_ms": dict(trace.timings_ms, total=trace.total_ms),
    }


def timing_stats(samples: list[dict]) -> dict:
    stats = {}
    for stage in STAGES + ("total",):
        values = np.array([s[stage] for s in samples if stage in s], dtype=float)
        if values.size == 0:
            continue
        stats[stage] = {
            "mean": float(values.mean()),
            "median": float(np.median(values)),
            "p95": float(np.percentile(values, 95)),
        }
    return stats


def run_batch(inputs, config: RunConfig, output_dir, jobs: int = 1, annotated: bool = False) -> dict:
    """Run detection over every frame and write ``results.jsonl`` + ``summary.json``.

    Result lines follow input order whatever the worker completion order.
    """
    frames = collect_inputs(inputs)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    annotate_dir = None
    if annotated:
        annotate_dir = out / "annotated"
        annotate_dir.mkdir(exist_ok=True)

    if jobs > 1 and len(frames) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(process_frame, frames, [config] * len(frames), [annotate_dir] * len(frames)))
    else:
        outcomes = [process_frame(f, config, annotate_dir) for f in frames]

    errors, timings = [], []
    with open(out / RESULTS_NAME, "w") as fh:
        for outcome in outcomes:
            if "error" in outcome:
                log.warning("%s: %s", outcome["frame"], outcome["error"])
                errors.append({"frame": outcome["frame"], "error": outcome["error"]})
                continue
            fh.write(json.dumps(outcome["record"]) + "\n")
            timings.append(outcome["timings_ms"])

    summary = {
        "frames": len(frames),
        "ok": len(frames) - len(errors),
        "failed": len(errors),
        "errors": errors,
        "timing_ms": timing_stats(timings),
    }
    (out / SUMMARY_NAME).write_text(json.dumps(summary, indent=2) + "\n")
    return summary
