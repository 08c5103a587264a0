"""Two-aspect evaluation of fuzzy emotion predictions.

Aspect 1 scores name correctness: an instance is right when the set of
detected emotion names (predicted level >= threshold) equals the set of
truly present ones (reported class >= 1). Aspect 2 scores level
correctness as a micro-averaged one-vs-rest false positive rate over the
five level classes: every wrong class prediction is one false positive
among the four negative classes of that (instance, emotion).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classifier import EmotionState
from .emotions import NEUTRAL, SelfReport
from .errors import EvalInputError

DEFAULT_THRESHOLD = 0.5

ASPECT2_DEFINITION = (
    "micro-averaged one-vs-rest false positive rate over level classes: "
    "FP = predicting class c when the true class is not c; "
    "FPR = total FP / total negative (instance, emotion, class) decisions"
)

# Reference results reported for the original 130-participant dataset.
# That dataset is unavailable, so these are documentation values only and
# are never reproduced by this package.
REFERENCE_CONFUSION_DIAGONAL = {
    "neutral": 0.68,
    "afraid": 0.87,
    "sadness": 0.86,
    "nervous": 0.65,
}
REFERENCE_ACCURACY_GAIN = (0.03, 0.05)
REFERENCE_LEVEL_FPR_RANGE = (0.0, 0.167)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows = true dominant emotion, columns = detected dominant emotion.

    Cells are average detection rates in [0, 1]. Rows that never occur in
    the truth have support 0 and carry no cells (absent, not zero).
    """

    labels: tuple[str, ...]
    cells: dict[str, dict[str, float]]
    support: dict[str, int]

    def rate(self, true_label: str, detected_label: str) -> float | None:
        if self.support.get(true_label, 0) == 0:
            return None
        return self.cells[true_label].get(detected_label, 0.0)

    def to_csv(self) -> str:
        lines = ["selected_emotion," + ",".join(self.labels) + ",support"]
        for row in self.labels:
            if self.support.get(row, 0) == 0:
                cells = ["-"] * len(self.labels)
            else:
                cells = [repr(round(self.cells[row].get(col, 0.0), 6)) for col in self.labels]
            lines.append(row + "," + ",".join(cells) + f",{self.support.get(row, 0)}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "cells": {r: dict(cols) for r, cols in self.cells.items()},
            "support": dict(self.support),
        }


@dataclass(frozen=True)
class EvalReport:
    aspect1_accuracy: float
    aspect2_fpr: float
    threshold: float
    emotions: tuple[str, ...]
    instances: int
    instances_correct: int
    per_emotion: dict[str, dict[str, float]]
    confusion: ConfusionMatrix
    aspect2_definition: str = ASPECT2_DEFINITION

    def to_json_dict(self) -> dict:
        return {
            "aspect1_accuracy": self.aspect1_accuracy,
            "aspect2_fpr": self.aspect2_fpr,
            "threshold": self.threshold,
            "emotions": list(self.emotions),
            "instances": self.instances,
            "instances_correct": self.instances_correct,
            "per_emotion": {e: dict(v) for e, v in self.per_emotion.items()},
            "confusion": self.confusion.to_json_dict(),
            "aspect2_definition": self.aspect2_definition,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def render_table(self) -> str:
        lines = [
            f"instances            {self.instances}",
            f"aspect-1 accuracy    {self.aspect1_accuracy:.4f}  ({self.instances_correct}/{self.instances} name sets correct)",
            f"aspect-2 level FPR   {self.aspect2_fpr:.4f}",
            f"detection threshold  {self.threshold}",
            f"aspect-2 definition  {self.aspect2_definition}",
            "",
            "per emotion          name_acc   level_fpr",
        ]
        for e in self.emotions:
            row = self.per_emotion[e]
            lines.append(f"  {e:<18} {row['name_accuracy']:.4f}     {row['level_fpr']:.4f}")
        lines.append("")
        lines.append("confusion matrix (rows = selected, columns = detected):")
        lines.append(self.confusion.to_csv())
        return "\n".join(lines)


def _check_inputs(predicted, truth):
    if len(predicted) != len(truth):
        raise EvalInputError(f"{len(predicted)} predictions vs {len(truth)} truth reports")
    if not predicted:
        raise EvalInputError("empty evaluation input")


def _shared_emotions(predicted: list[EmotionState]) -> tuple[str, ...]:
    emotions = tuple(predicted[0].entries.keys())
    for state in predicted:
        if tuple(state.entries.keys()) != emotions:
            raise EvalInputError("predictions do not share a single emotion subset")
    return emotions


def aspect1_accuracy(predicted: list[EmotionState], truth: list[SelfReport],
                     threshold: float = DEFAULT_THRESHOLD) -> float:
    """Fraction of instances whose detected name set matches the true one."""
    _check_inputs(predicted, truth)
    emotions = _shared_emotions(predicted)
    correct = 0
    for state, report in zip(predicted, truth):
        detected = {e for e in emotions if state.entries[e].level >= threshold}
        present = {e for e in emotions if report.levels[e] >= 1}
        if detected == present:
            correct += 1
    return correct / len(predicted)


def aspect2_level_fpr(predicted: list[EmotionState], truth: list[SelfReport]) -> float:
    """Micro-averaged one-vs-rest false positive rate over level classes."""
    _check_inputs(predicted, truth)
    emotions = _shared_emotions(predicted)
    false_positives = 0
    negatives = 0
    for state, report in zip(predicted, truth):
        for e in emotions:
            pred_class = state.entries[e].level_class
            true_class = report.levels[e]
            for c in range(5):
                if true_class != c:
                    negatives += 1
                    if pred_class == c:
                        false_positives += 1
    return false_positives / negatives


def dominant_true(report: SelfReport, emotions: tuple[str, ...]) -> str:
    """The strongest truly present emotion, or neutral when none reaches class 1."""
    best = None
    best_level = 0
    for e in emotions:
        lvl = report.levels[e]
        if lvl >= 1 and lvl > best_level:
            best, best_level = e, lvl
    return best if best is not None else NEUTRAL


def dominant_predicted(state: EmotionState, emotions: tuple[str, ...],
                       threshold: float = DEFAULT_THRESHOLD) -> str:
    best = None
    best_level = -1.0
    for e in emotions:
        lvl = state.entries[e].level
        if lvl >= threshold and lvl > best_level:
            best, best_level = e, lvl
    return best if best is not None else NEUTRAL


def confusion_matrix(predicted: list[EmotionState], truth: list[SelfReport],
                     emotions: tuple[str, ...] | None = None,
                     threshold: float = DEFAULT_THRESHOLD) -> ConfusionMatrix:
    """Dominant-emotion confusion: cell (r, c) is the rate at which true
    dominant r was detected as dominant c. ``neutral`` (nothing above
    threshold) is appended to the labels when not already requested."""
    _check_inputs(predicted, truth)
    emotions = tuple(emotions) if emotions is not None else _shared_emotions(predicted)
    scoring = tuple(e for e in emotions if e != NEUTRAL)
    labels = emotions if NEUTRAL in emotions else emotions + (NEUTRAL,)
    counts: dict[str, dict[str, int]] = {r: {} for r in labels}
    support: dict[str, int] = {r: 0 for r in labels}
    for state, report in zip(predicted, truth):
        r = dominant_true(report, scoring)
        c = dominant_predicted(state, scoring, threshold)
        support[r] += 1
        counts[r][c] = counts[r].get(c, 0) + 1
    cells = {
        r: {c: n / support[r] for c, n in row.items()}
        for r, row in counts.items() if support[r] > 0
    }
    return ConfusionMatrix(labels=labels, cells=cells, support=support)


def evaluate(predicted: list[EmotionState], truth: list[SelfReport],
             threshold: float = DEFAULT_THRESHOLD) -> EvalReport:
    """Full report: both aspects, per-emotion breakdown, confusion matrix."""
    _check_inputs(predicted, truth)
    emotions = _shared_emotions(predicted)

    instances_correct = 0
    per_emotion = {e: {"name_hits": 0, "fp": 0, "negatives": 0} for e in emotions}
    for state, report in zip(predicted, truth):
        detected = {e for e in emotions if state.entries[e].level >= threshold}
        present = {e for e in emotions if report.levels[e] >= 1}
        if detected == present:
            instances_correct += 1
        for e in emotions:
            if (e in detected) == (e in present):
                per_emotion[e]["name_hits"] += 1
            pred_class = state.entries[e].level_class
            true_class = report.levels[e]
            for c in range(5):
                if true_class != c:
                    per_emotion[e]["negatives"] += 1
                    if pred_class == c:
                        per_emotion[e]["fp"] += 1

    n = len(predicted)
    total_fp = sum(v["fp"] for v in per_emotion.values())
    total_neg = sum(v["negatives"] for v in per_emotion.values())
    breakdown = {
        e: {
            "name_accuracy": v["name_hits"] / n,
            "level_fpr": v["fp"] / v["negatives"],
            "fp": float(v["fp"]),
            "negatives": float(v["negatives"]),
        }
        for e, v in per_emotion.items()
    }
    return EvalReport(
        aspect1_accuracy=instances_correct / n,
        aspect2_fpr=total_fp / total_neg,
        threshold=threshold,
        emotions=emotions,
        instances=n,
        instances_correct=instances_correct,
        per_emotion=breakdown,
        confusion=confusion_matrix(predicted, truth, emotions=emotions, threshold=threshold),
    )
