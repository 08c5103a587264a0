"""Per-emotion 5-level recognition with linear soft-margin SVMs.

Each emotion gets five one-vs-rest binary machines, one per level class,
trained by seeded hinge-loss subgradient descent on z-scored features.
Decision scores turn into a fuzzy membership through a shifted softmax,
whose centroid is the reported continuous level. Everything is
deterministic: same seed and data give a bit-identical model.
"""

from __future__ import annotations

import bisect
import json
import zlib
from dataclasses import dataclass, replace

import numpy as np

from .emotions import BASIC_EMOTIONS, SelfReport
from .errors import DegenerateLabelsError, ModelFormatError, SchemaMismatchError
from .features import FeatureRow, FeatureVector
from .fuzzy import Membership, defuzzify

MAGIC = b"AFZM"
FORMAT_VERSION = 1
N_CLASSES = 5

DEFAULT_JOIN_WINDOW_HOURS = 4.0


@dataclass(frozen=True)
class TrainConfig:
    c: float = 1.0
    epochs: int = 200
    learning_rate: float = 0.5
    seed: int = 0
    temperature: float = 1.0
    emotions: tuple[str, ...] | None = None

    def to_json_dict(self) -> dict:
        return {
            "c": self.c,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "temperature": self.temperature,
        }


@dataclass(frozen=True)
class LabeledSample:
    features: FeatureVector
    labels: dict[str, int]


@dataclass(frozen=True)
class EmotionReading:
    membership: Membership
    level: float
    level_class: int


@dataclass(frozen=True)
class EmotionState:
    """Per-emotion fuzzy detection result for one feature vector."""

    schema_version: int
    entries: dict[str, EmotionReading]

    def names_detected(self, threshold: float = 0.5) -> set[str]:
        return {name for name, r in self.entries.items() if r.level >= threshold}

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "emotions": {
                name: {
                    "membership": list(r.membership.weights),
                    "level": r.level,
                    "class": r.level_class,
                }
                for name, r in self.entries.items()
            },
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "EmotionState":
        entries = {}
        for name, payload in obj["emotions"].items():
            m = Membership(tuple(payload["membership"]))
            entries[name] = EmotionReading(
                membership=m, level=float(payload["level"]), level_class=int(payload["class"]))
        return cls(schema_version=int(obj["schema_version"]), entries=entries)


@dataclass(frozen=True)
class Model:
    schema_version: int
    emotions: tuple[str, ...]
    weights: dict[str, np.ndarray]   # (5, n_features) per emotion
    biases: dict[str, np.ndarray]    # (5,) per emotion
    means: np.ndarray
    stds: np.ndarray                 # zero-variance entries stored as 1.0
    zero_variance: tuple[int, ...]
    config: TrainConfig

    @property
    def feature_count(self) -> int:
        return int(self.means.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (self.schema_version == other.schema_version
                and self.emotions == other.emotions
                and self.zero_variance == other.zero_variance
                and self.config == other.config
                and np.array_equal(self.means, other.means)
                and np.array_equal(self.stds, other.stds)
                and all(np.array_equal(self.weights[e], other.weights[e]) for e in self.emotions)
                and all(np.array_equal(self.biases[e], other.biases[e]) for e in self.emotions))


def _standardize_fit(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
    means = x.mean(axis=0)
    stds = x.std(axis=0)
    zero_var = tuple(int(i) for i in np.flatnonzero(stds < 1e-12))
    safe = stds.copy()
    safe[list(zero_var)] = 1.0
    return means, safe, zero_var


def _standardize_apply(x: np.ndarray, means: np.ndarray, stds: np.ndarray,
                       zero_variance: tuple[int, ...]) -> np.ndarray:
    z = (x - means) / stds
    if zero_variance:
        z[..., list(zero_variance)] = 0.0
    return z


def train(samples: list[LabeledSample], config: TrainConfig = TrainConfig()) -> Model:
    """Fit one-vs-rest hinge machines for every emotion in the label set."""
    if not samples:
        raise DegenerateLabelsError("no training samples")
    schema = samples[0].features.schema_version
    for s in samples:
        if s.features.schema_version != schema:
            raise SchemaMismatchError(
                f"mixed feature schema versions: {schema} vs {s.features.schema_version}")
    emotions = config.emotions or tuple(samples[0].labels.keys())
    for s in samples:
        missing = [e for e in emotions if e not in s.labels]
        if missing:
            raise DegenerateLabelsError("sample missing labels for: " + ", ".join(missing))

    x = np.stack([s.features.values for s in samples])
    n = x.shape[0]
    means, stds, zero_var = _standardize_fit(x)
    xs = _standardize_apply(x, means, stds, zero_var)

    lam = 1.0 / (config.c * n)
    eta0 = config.learning_rate

    weights: dict[str, np.ndarray] = {}
    biases: dict[str, np.ndarray] = {}
    for emotion in emotions:
        labels = np.array([s.labels[emotion] for s in samples], dtype=np.int64)
        if len(set(labels.tolist())) < 2:
            raise DegenerateLabelsError(
                f"emotion {emotion!r} has a single label class ({labels[0]})")
        # +1 for "is class c", -1 otherwise; all 5 machines updated together
        y = np.where(labels[None, :] == np.arange(N_CLASSES)[:, None], 1.0, -1.0)
        w = np.zeros((N_CLASSES, xs.shape[1]))
        b = np.zeros(N_CLASSES)
        # stream keyed by emotion name, not position: each emotion's machines
        # come out identical no matter which subset or order was trained
        rng = np.random.default_rng([config.seed, zlib.crc32(emotion.encode("utf-8"))])
        t = 0
        for _epoch in range(config.epochs):
            for i in rng.permutation(n):
                eta = eta0 / (1.0 + eta0 * lam * t)
                t += 1
                xi = xs[i]
                margins = y[:, i] * (w @ xi + b)
                w *= 1.0 - eta * lam
                hinge = margins < 1.0
                if hinge.any():
                    w[hinge] += eta * y[hinge, i][:, None] * xi
                    b[hinge] += eta * y[hinge, i]
        weights[emotion] = w
        biases[emotion] = b

    return Model(
        schema_version=schema,
        emotions=tuple(emotions),
        weights=weights,
        biases=biases,
        means=means,
        stds=stds,
        zero_variance=zero_var,
        config=replace(config, emotions=tuple(emotions)),
    )


def predict(model: Model, features: FeatureVector) -> EmotionState:
    """Score one feature vector against every emotion's five machines."""
    if features.schema_version != model.schema_version:
        raise SchemaMismatchError(
            f"model schema {model.schema_version} cannot read features schema "
            f"{features.schema_version}")
    if features.values.shape[0] != model.feature_count:
        raise SchemaMismatchError(
            f"model expects {model.feature_count} features, got {features.values.shape[0]}")
    xs = _standardize_apply(features.values.astype(np.float64), model.means,
                            model.stds, model.zero_variance)
    entries = {}
    for emotion in model.emotions:
        scores = model.weights[emotion] @ xs + model.biases[emotion]
        if not np.all(np.isfinite(scores)):
            raise ModelFormatError(f"non-finite decision score for {emotion!r}: corrupt model")
        shifted = (scores - scores.max()) / model.config.temperature
        expd = np.exp(shifted)
        m = Membership(tuple(expd / expd.sum()))
        entries[emotion] = EmotionReading(
            membership=m, level=defuzzify(m), level_class=m.argmax_class())
    return EmotionState(schema_version=model.schema_version, entries=entries)


def predict_batch(model: Model, vectors) -> list[EmotionState]:
    return [predict(model, v) for v in vectors]


# --- label joining -----------------------------------------------------------

def build_labeled_samples(rows: list[FeatureRow], reports: list[SelfReport],
                          emotions: tuple[str, ...] = BASIC_EMOTIONS,
                          window_hours: float = DEFAULT_JOIN_WINDOW_HOURS,
                          ) -> list[LabeledSample]:
    """Label feature rows by the nearest preceding self-report of the same
    participant within the prompting window; rows with no report in range
    are dropped."""
    window_ms = window_hours * 3600.0 * 1000.0
    by_pid: dict[str, list[tuple[int, SelfReport]]] = {}
    for report in reports:
        by_pid.setdefault(report.pid, []).append((report.ts, report))
    for entries in by_pid.values():
        entries.sort(key=lambda pair: pair[0])

    samples = []
    for row in rows:
        entries = by_pid.get(row.pid)
        if not entries:
            continue
        ts_list = [ts for ts, _ in entries]
        idx = bisect.bisect_right(ts_list, row.ts) - 1
        if idx < 0:
            continue
        ts, report = entries[idx]
        if row.ts - ts > window_ms:
            continue
        samples.append(LabeledSample(
            features=row.vector,
            labels={e: report.levels[e] for e in emotions}))
    return samples


# --- model file format -------------------------------------------------------
#
# magic "AFZM" | u8 format version | u32 header length | header JSON |
# little-endian float64 arrays (means, stds, then per emotion 5xF weights and
# 5 biases) | u32 CRC32 of all preceding bytes.

def model_to_bytes(model: Model) -> bytes:
    header = {
        "schema_version": model.schema_version,
        "feature_count": model.feature_count,
        "emotions": list(model.emotions),
        "zero_variance": list(model.zero_variance),
        "config": model.config.to_json_dict(),
    }
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    chunks = [MAGIC, bytes([FORMAT_VERSION]),
              len(header_bytes).to_bytes(4, "little"), header_bytes]
    arrays = [model.means, model.stds]
    for emotion in model.emotions:
        arrays.append(model.weights[emotion].reshape(-1))
        arrays.append(model.biases[emotion])
    for arr in arrays:
        chunks.append(np.ascontiguousarray(arr, dtype="<f8").tobytes())
    payload = b"".join(chunks)
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    return payload + crc.to_bytes(4, "little")


def model_from_bytes(data: bytes) -> Model:
    if len(data) < 13:
        raise ModelFormatError("model file truncated")
    if data[:4] != MAGIC:
        raise ModelFormatError(f"bad magic bytes {data[:4]!r}")
    version = data[4]
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {version} (reader supports {FORMAT_VERSION})")
    stored_crc = int.from_bytes(data[-4:], "little")
    if zlib.crc32(data[:-4]) & 0xFFFFFFFF != stored_crc:
        raise ModelFormatError("CRC mismatch: model file corrupt")
    header_len = int.from_bytes(data[5:9], "little")
    header_end = 9 + header_len
    if header_end > len(data) - 4:
        raise ModelFormatError("model file truncated inside header")
    try:
        header = json.loads(data[9:header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"unreadable model header: {exc}") from None
    try:
        schema_version = int(header["schema_version"])
        feature_count = int(header["feature_count"])
        emotions = tuple(header["emotions"])
        zero_variance = tuple(int(i) for i in header["zero_variance"])
        cfg = header["config"]
        config = TrainConfig(
            c=float(cfg["c"]), epochs=int(cfg["epochs"]),
            learning_rate=float(cfg["learning_rate"]), seed=int(cfg["seed"]),
            temperature=float(cfg["temperature"]), emotions=emotions)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"invalid model header: {exc}") from None

    body = data[header_end:-4]
    expected_floats = 2 * feature_count + len(emotions) * (N_CLASSES * feature_count + N_CLASSES)
    if len(body) != expected_floats * 8:
        raise ModelFormatError(
            f"model body has {len(body)} bytes, expected {expected_floats * 8}")
    flat = np.frombuffer(body, dtype="<f8")
    pos = 0

    def take(count: int) -> np.ndarray:
        nonlocal pos
        out = np.array(flat[pos:pos + count], dtype=np.float64)
        pos += count
        return out

    means = take(feature_count)
    stds = take(feature_count)
    weights = {}
    biases = {}
    for emotion in emotions:
        weights[emotion] = take(N_CLASSES * feature_count).reshape(N_CLASSES, feature_count)
        biases[emotion] = take(N_CLASSES)
    return Model(
        schema_version=schema_version, emotions=emotions, weights=weights,
        biases=biases, means=means, stds=stds, zero_variance=zero_variance,
        config=config)


def save_model(model: Model, path) -> None:
    with open(path, "wb") as fh:
        fh.write(model_to_bytes(model))


def load_model(path) -> Model:
    with open(path, "rb") as fh:
        return model_from_bytes(fh.read())
