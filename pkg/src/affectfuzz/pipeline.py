"""End-to-end wiring shared by the CLI, the tests and the experiment scripts:
generate, extract, split, train, predict, evaluate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import (
    EmotionReading,
    EmotionState,
    LabeledSample,
    Model,
    TrainConfig,
    build_labeled_samples,
    predict_batch,
    train,
)
from .errors import ConfigError, EvalInputError
from .evaluation import EvalReport, aspect1_accuracy, evaluate
from .features import extract_rows
from .fuzzy import Membership
from .synth import GeneratorConfig, generate

SPLIT_PURPOSE = 999


def split_indices(n: int, train_fraction: float, seed: int) -> tuple[list[int], list[int]]:
    """Deterministic shuffled train/test partition of range(n)."""
    if not 0.0 < train_fraction < 1.0:
        raise ConfigError(f"train_fraction must be in (0, 1), got {train_fraction!r}")
    rng = np.random.default_rng([seed, SPLIT_PURPOSE])
    order = rng.permutation(n)
    k = int(round(n * train_fraction))
    return [int(i) for i in order[:k]], [int(i) for i in order[k:]]


@dataclass(frozen=True)
class PipelineResult:
    report: EvalReport
    model: Model
    n_train: int
    n_test: int
    dataset_hash: str


def run_pipeline(gen_config: GeneratorConfig, train_config: TrainConfig | None = None,
                 train_fraction: float = 0.7, threshold: float = 0.5) -> PipelineResult:
    """Synthesize a dataset, train on a split, evaluate on the rest."""
    if train_config is None:
        train_config = TrainConfig(seed=gen_config.seed)
    ds = generate(gen_config)
    rows = extract_rows(ds.sessions)
    samples = build_labeled_samples(rows, ds.reports)
    if len(samples) != len(rows):
        raise EvalInputError(
            f"only {len(samples)} of {len(rows)} sessions joined a report in-window")
    train_idx, test_idx = split_indices(len(samples), train_fraction, gen_config.seed)
    model = train([samples[i] for i in train_idx], train_config)
    states = predict_batch(model, [rows[i].vector for i in test_idx])
    report = evaluate(states, [ds.reports[i] for i in test_idx], threshold=threshold)
    return PipelineResult(
        report=report, model=model, n_train=len(train_idx), n_test=len(test_idx),
        dataset_hash=ds.manifest["dataset_hash"])


@dataclass(frozen=True)
class ComparisonResult:
    fuzzy_accuracy: float
    binary_accuracy: float
    fuzzy_report: EvalReport
    n_test: int


def _presence_state(presences: dict[str, bool]) -> EmotionState:
    # synthetic state for the binary baseline: point-mass memberships at 0 or 4
    entries = {}
    for e, present in presences.items():
        cls = 4 if present else 0
        weights = [0.0] * 5
        weights[cls] = 1.0
        entries[e] = EmotionReading(
            membership=Membership(tuple(weights)), level=float(cls), level_class=cls)
    return EmotionState(schema_version=1, entries=entries)


def compare_fuzzy_binary(gen_config: GeneratorConfig,
                         train_config: TrainConfig | None = None,
                         train_fraction: float = 0.7,
                         threshold: float = 0.5) -> ComparisonResult:
    """Aspect-1 accuracy of the 5-level pipeline against a present/absent
    baseline trained on the same data.

    The baseline collapses every label to {absent, present}; an emotion with
    a single collapsed class in the training split gets a constant predictor
    (there is nothing to fit).
    """
    if train_config is None:
        train_config = TrainConfig(seed=gen_config.seed)
    ds = generate(gen_config)
    rows = extract_rows(ds.sessions)
    samples = build_labeled_samples(rows, ds.reports)
    if len(samples) != len(rows):
        raise EvalInputError(
            f"only {len(samples)} of {len(rows)} sessions joined a report in-window")
    train_idx, test_idx = split_indices(len(samples), train_fraction, gen_config.seed)
    train_samples = [samples[i] for i in train_idx]
    test_vectors = [rows[i].vector for i in test_idx]
    truth = [ds.reports[i] for i in test_idx]
    emotions = tuple(train_samples[0].labels.keys())

    # fuzzy 5-level pipeline
    model = train(train_samples, train_config)
    fuzzy_states = predict_batch(model, test_vectors)
    fuzzy_report = evaluate(fuzzy_states, truth, threshold=threshold)

    # binary baseline, emotion by emotion
    presence_by_emotion: dict[str, list[bool]] = {}
    for e in emotions:
        collapsed = [0 if s.labels[e] == 0 else 4 for s in train_samples]
        distinct = set(collapsed)
        if len(distinct) < 2:
            constant = distinct.pop() >= 1
            presence_by_emotion[e] = [constant] * len(test_vectors)
            continue
        sub_samples = [
            LabeledSample(features=s.features, labels={e: c})
            for s, c in zip(train_samples, collapsed)
        ]
        sub_model = train(sub_samples, TrainConfig(
            c=train_config.c, epochs=train_config.epochs,
            learning_rate=train_config.learning_rate, seed=train_config.seed,
            temperature=train_config.temperature, emotions=(e,)))
        sub_states = predict_batch(sub_model, test_vectors)
        presence_by_emotion[e] = [st.entries[e].level >= threshold for st in sub_states]

    binary_states = [
        _presence_state({e: presence_by_emotion[e][i] for e in emotions})
        for i in range(len(test_vectors))
    ]
    binary_accuracy = aspect1_accuracy(binary_states, truth, threshold=threshold)

    return ComparisonResult(
        fuzzy_accuracy=fuzzy_report.aspect1_accuracy,
        binary_accuracy=binary_accuracy,
        fuzzy_report=fuzzy_report,
        n_test=len(test_vectors))
