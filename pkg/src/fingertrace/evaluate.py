"""Precision/recall of detected fingertips against generator ground truth."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import REFERENCE_DIAGONAL
from .errors import LengthMismatch
from .pipeline import DetectionResult
from .synth import GroundTruth


def default_match_radius(width: int, height: int, radius: float = 5.0) -> float:
    """``radius`` px at 640x480, scaled with the frame diagonal."""
    return radius * math.hypot(width, height) / REFERENCE_DIAGONAL


@dataclass
class FrameRecord:
    true_positives: int
    false_positives: int
    false_negatives: int
    errors: list[float]
    detected: int
    expected: int

    @property
    def count_ok(self) -> bool:
        return self.detected == self.expected


@dataclass
class EvalReport:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0
    mean_tip_error: float = 0.0
    frames: list[FrameRecord] = field(default_factory=list)

    @property
    def precision(self) -> float:
        denom = self.true_positives + self.false_positives
        return 1.0 if denom == 0 else self.true_positives / denom

    @property
    def recall(self) -> float:
        denom = self.true_positives + self.false_negatives
        return 1.0 if denom == 0 else self.true_positives / denom

    @property
    def count_accuracy(self) -> float:
        """Fraction of frames whose detected tip count equals the true count."""
        if not self.frames:
            return 1.0
        return sum(f.count_ok for f in self.frames) / len(self.frames)

    @property
    def max_tip_error(self) -> float:
        return max((e for f in self.frames for e in f.errors), default=0.0)

    def summary(self) -> dict:
        return {
            "frames": len(self.frames),
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
            "precision": self.precision,
            "recall": self.recall,
            "mean_tip_error": self.mean_tip_error,
            "max_tip_error": self.max_tip_error,
            "count_accuracy": self.count_accuracy,
        }


def match_tips(detected, truth, radius: float) -> list[tuple[int, int, float]]:
    """Greedy nearest-first pairing; returns (detected index, truth index, distance)."""
    pairs = []
    for i, (dx, dy) in enumerate(detected):
        for j, (tx, ty) in enumerate(truth):
            d = math.hypot(dx - tx, dy - ty)
            if d <= radius:
                pairs.append((d, i, j))
    pairs.sort()
    used_d, used_t, matches = set(), set(), []
    for d, i, j in pairs:
        if i in used_d or j in used_t:
            continue
        used_d.add(i)
        used_t.add(j)
        matches.append((i, j, d))
    return matches


def evaluate(detections: list[DetectionResult], truths: list[GroundTruth], match_radius: float = 5.0) -> EvalReport:
    if len(detections) != len(truths):
        raise LengthMismatch(f"{len(detections)} detections vs {len(truths)} ground truths")
    report = EvalReport()
    all_errors = []
    for det, truth in zip(detections, truths):
        points = [(t.x, t.y) for t in det.tips]
        matches = match_tips(points, truth.tips, match_radius)
        errors = [d for _, _, d in matches]
        rec = FrameRecord(
            true_positives=len(matches),
            false_positives=len(points) - len(matches),
            false_negatives=len(truth.tips) - len(matches),
            errors=errors,
            detected=len(points),
            expected=len(truth.tips),
        )
        report.frames.append(rec)
        report.true_positives += rec.true_positives
        report.false_positives += rec.false_positives
        report.false_negatives += rec.false_negatives
        all_errors.extend(errors)
    report.mean_tip_error = sum(all_errors) / len(all_errors) if all_errors else 0.0
    return report
