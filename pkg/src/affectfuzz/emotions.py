"""Emotion taxonomy, the 0-4 intensity scale, and self-report records.

The reportable vocabulary is closed: the 20 PANAS affect items plus the
missing basic emotions, 27 names total. ``neutral`` is a 28th token that
is only meaningful to the evaluation module (a "no dominant emotion"
bucket) and is never valid inside a self-report.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .errors import (
    EmotionParseError,
    LevelRangeError,
    RegionParseError,
    ReportValidationError,
)

log = logging.getLogger(__name__)

EMOTIONS: tuple[str, ...] = (
    "joy", "surprise", "excited", "enthusiastic",
    "inspired", "active", "anticipation", "fear",
    "upset", "proud", "nervous", "afraid",
    "anger", "acceptance", "strong", "irritable",
    "determined", "disgust", "interested", "guilty",
    "alert", "attentive", "sadness", "distressed",
    "hostile", "ashamed", "jittery",
)

BASIC_EMOTIONS: tuple[str, ...] = (
    "joy", "anticipation", "anger", "disgust",
    "sadness", "surprise", "fear", "acceptance",
)

NEUTRAL = "neutral"

REGIONS: tuple[str, ...] = (
    "europe", "middle_east", "south_east_asia", "east_asia", "other",
)

LEVEL_MIN = 0.0
LEVEL_MAX = 4.0
LEVEL_CLASSES: tuple[int, ...] = (0, 1, 2, 3, 4)

# Reference metadata of the original 130-participant collection study.
# The raw dataset is not shipped; these values exist for documentation
# tests only. "unfriendly" is the reported weakest emotion even though it
# is not part of the 27-name reportable vocabulary.
STUDY_PARTICIPANTS = 130
STRONGEST_REPORTED_EMOTION = ("active", 3.24)
WEAKEST_REPORTED_EMOTION = ("unfriendly", 1.62)
ORIGIN_SPLIT_PCT = {
    "europe": 18.37, "middle_east": 44.18, "south_east_asia": 13.17, "east_asia": 7.75,
}
RESIDENCE_SPLIT_PCT = {
    "europe": 27.90, "south_east_asia": 34.88, "east_asia": 16.37, "middle_east": 11.62,
}

_EMOTION_SET = frozenset(EMOTIONS)
_BASIC_SET = frozenset(BASIC_EMOTIONS)
_REGION_SET = frozenset(REGIONS)

REPORT_FIELDS = ("ts", "pid", "region", "levels")


def parse_emotion(token: str) -> str:
    """Canonicalize an emotion token (case-insensitive, closed set of 28)."""
    name = str(token).strip().lower()
    if name in _EMOTION_SET or name == NEUTRAL:
        return name
    raise EmotionParseError(f"unknown emotion name: {token!r}")


def is_basic(name: str) -> bool:
    return name in _BASIC_SET


def parse_region(token: str) -> str:
    """Canonicalize a region token; spaces and underscores both accepted."""
    name = str(token).strip().lower().replace(" ", "_")
    if name in _REGION_SET:
        return name
    raise RegionParseError(f"unknown region name: {token!r}")


def check_level(value: float) -> float:
    v = float(value)
    if not (LEVEL_MIN <= v <= LEVEL_MAX):
        raise LevelRangeError(f"level {value!r} outside [0, 4]")
    return v


def check_level_class(value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value not in LEVEL_CLASSES:
        raise LevelRangeError(f"level class {value!r} not in {{0,1,2,3,4}}")
    return value


def percent(level: float) -> float:
    """Map a 0-4 level to its percentage, e.g. level 2 is 50%."""
    return check_level(level) / 4.0 * 100.0


def level_from_percent(p: float) -> float:
    """Inverse of :func:`percent`; 0-100 maps back onto 0-4."""
    v = float(p)
    if not (0.0 <= v <= 100.0):
        raise LevelRangeError(f"percentage {p!r} outside [0, 100]")
    return v / 100.0 * 4.0


@dataclass(frozen=True)
class SelfReport:
    """One prompted self-assessment: every reportable emotion rated 0-4.

    ``ts`` is milliseconds since epoch. ``region`` may be None when the
    participant did not disclose one.
    """

    ts: int
    pid: str
    levels: dict[str, int]
    region: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.ts, int) or self.ts < 0:
            raise ReportValidationError(f"timestamp must be a non-negative integer, got {self.ts!r}")
        if not self.pid:
            raise ReportValidationError("participant id must be non-empty")
        if self.region is not None:
            object.__setattr__(self, "region", parse_region(self.region))
        keys = set(self.levels)
        missing = _EMOTION_SET - keys
        extra = keys - _EMOTION_SET
        if missing:
            raise ReportValidationError(
                "report missing emotions: " + ", ".join(sorted(missing)))
        if extra:
            raise ReportValidationError(
                "report has unknown emotions: " + ", ".join(sorted(extra)))
        for name, cls in self.levels.items():
            check_level_class(cls)

    def basic_levels(self) -> dict[str, int]:
        return {e: self.levels[e] for e in BASIC_EMOTIONS}

    def to_json_dict(self) -> dict:
        return {
            "ts": self.ts,
            "pid": self.pid,
            "region": self.region,
            "levels": {e: self.levels[e] for e in EMOTIONS},
        }

    @classmethod
    def from_json_dict(cls, obj: dict, strict: bool = True) -> "SelfReport":
        if not isinstance(obj, dict):
            raise ReportValidationError(f"report line must be a JSON object, got {type(obj).__name__}")
        unknown = set(obj) - set(REPORT_FIELDS)
        if unknown:
            if strict:
                raise ReportValidationError(
                    "unknown report fields: " + ", ".join(sorted(unknown)))
            log.warning("ignoring unknown report fields: %s", ", ".join(sorted(unknown)))
        try:
            levels_raw = obj["levels"]
            ts = obj["ts"]
            pid = obj["pid"]
        except KeyError as exc:
            raise ReportValidationError(f"report missing field {exc.args[0]!r}") from None
        if not isinstance(levels_raw, dict):
            raise ReportValidationError("'levels' must be an object")
        levels = {}
        for name, value in levels_raw.items():
            canonical = parse_emotion(name)
            if canonical == NEUTRAL:
                raise ReportValidationError("'neutral' is not reportable")
            levels[canonical] = value
        return cls(ts=ts, pid=str(pid), levels=levels, region=obj.get("region"))


def write_reports(path, reports) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for report in reports:
            fh.write(json.dumps(report.to_json_dict(), sort_keys=True) + "\n")


def load_reports(path, strict: bool = True) -> list[SelfReport]:
    reports = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ReportValidationError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            try:
                reports.append(SelfReport.from_json_dict(obj, strict=strict))
            except (ReportValidationError, EmotionParseError, LevelRangeError, RegionParseError) as exc:
                raise ReportValidationError(f"{path}:{lineno}: {exc}") from None
    return reports
