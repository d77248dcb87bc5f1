"""Detect fingertips on a synthetic corpus and report accuracy and per-stage timing."""
import argparse
import json
import statistics

from fingertrace.config import RunConfig
from fingertrace.evaluate import default_match_radius, evaluate
from fingertrace.pipeline import STAGES, StageTrace, detect
from fingertrace.raster import rotate_point
from fingertrace.synth import GroundTruth, corpus_specs, generate_hand


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2012)
    ap.add_argument("--width", type=int, default=640)
    ap.add_argument("--height", type=int, default=480)
    ap.add_argument("--noise", type=float, default=0.0)
    ap.add_argument("--rotate", type=int, default=0, help="extra counterclockwise quarter turns per frame")
    args = ap.parse_args()

    config = RunConfig()
    detections, truths, timings = [], [], {s: [] for s in STAGES}
    for spec in corpus_specs(args.count, args.seed, (args.width, args.height), args.noise):
        image, truth = generate_hand(spec)
        if args.rotate % 4:
            k = args.rotate % 4
            tips = sorted(rotate_point(x, y, image.width, image.height, k) for x, y in truth.tips)
            image = image.rotate(k)
            truth = GroundTruth(tips, truth.wrist_side.rotated(k), image.width, image.height)
        trace = StageTrace()
        detections.append(detect(image, config, trace))
        truths.append(truth)
        for s in STAGES:
            timings[s].append(trace.timings_ms[s])

    report = evaluate(detections, truths, default_match_radius(args.width, args.height))
    summary = report.summary()
    summary["wrist_side_accuracy"] = sum(
        d.direction.wrist_side is t.wrist_side for d, t in zip(detections, truths)
    ) / len(truths)
    summary["median_ms"] = {s: round(statistics.median(v), 3) for s, v in timings.items()}
    summary["median_ms"]["total"] = round(statistics.median(map(sum, zip(*timings.values()))), 3)
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
