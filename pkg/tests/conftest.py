import numpy as np
import pytest

from affectfuzz.classifier import EmotionReading, EmotionState, LabeledSample
from affectfuzz.emotions import BASIC_EMOTIONS, EMOTIONS, SelfReport
from affectfuzz.features import FEATURE_COUNT, FeatureVector
from affectfuzz.fuzzy import fuzzify


def make_report(levels=None, pid="p000", ts=0, region=None) -> SelfReport:
    """Full 27-emotion report; unspecified emotions default to 0."""
    full = {e: 0 for e in EMOTIONS}
    if levels:
        full.update(levels)
    return SelfReport(ts=ts, pid=pid, region=region, levels=full)


def make_state(levels: dict[str, float]) -> EmotionState:
    """EmotionState whose per-emotion level is given directly (triangular
    memberships, so defuzzified level equals the input)."""
    entries = {}
    for name, level in levels.items():
        m = fuzzify(level)
        entries[name] = EmotionReading(membership=m, level=float(level),
                                       level_class=m.argmax_class())
    return EmotionState(schema_version=1, entries=entries)


def make_vector(**overrides) -> FeatureVector:
    """All-zero feature vector with named overrides."""
    from affectfuzz.features import FEATURE_NAMES
    values = np.zeros(FEATURE_COUNT)
    for name, value in overrides.items():
        values[FEATURE_NAMES.index(name)] = value
    return FeatureVector(schema_version=1, values=values)


@pytest.fixture(scope="session")
def toy_samples() -> list[LabeledSample]:
    """Linearly separable by construction: one feature decides class 0 vs 4."""
    samples = []
    for i in range(40):
        x = (i % 2 * 2 - 1) * (1.0 + i / 40.0)  # alternating sign, varied magnitude
        vec = make_vector(dwell_mean_ms=x, typing_rate_keys_per_s=0.5 * x)
        labels = {e: (4 if x > 0 else 0) for e in BASIC_EMOTIONS[:2]}
        samples.append(LabeledSample(features=vec, labels=labels))
    return samples
