"""Behavioral feature extraction from keyboard / mouse / touch event logs.

The feature schema is fixed and versioned: 14 statistics plus one presence
flag per modality. A modality absent from a session keeps its statistics
at zero and its presence flag at 0, so vectors stay NaN-free and the same
length no matter what a session contains.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from .emotions import parse_region
from .errors import SessionValidationError

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

BACKSPACE_KEY = 8
IDLE_GAP_MS = 250.0

KEY_KINDS = ("key_down", "key_up")
MOUSE_KINDS = ("mouse_move", "mouse_down", "mouse_up")
TOUCH_KINDS = ("touch_down", "touch_move", "touch_up")
EVENT_KINDS = KEY_KINDS + MOUSE_KINDS + TOUCH_KINDS

FEATURE_NAMES: tuple[str, ...] = (
    "dwell_mean_ms",
    "dwell_std_ms",
    "flight_mean_ms",
    "flight_std_ms",
    "digraph_latency_mean_ms",
    "typing_rate_keys_per_s",
    "backspace_ratio",
    "mouse_speed_mean_px_per_s",
    "mouse_speed_std",
    "mouse_idle_ratio",
    "click_hold_mean_ms",
    "touch_tap_duration_mean_ms",
    "touch_swipe_speed_mean_px_per_s",
    "touch_event_rate_per_s",
    "kb_present",
    "mouse_present",
    "touch_present",
)

FEATURE_COUNT = len(FEATURE_NAMES)


@dataclass(frozen=True)
class InteractionEvent:
    """One raw input event. Payload fields depend on ``kind``."""

    ts: int
    kind: str
    key: int | None = None
    x: float | None = None
    y: float | None = None
    button: int | None = None
    pointer: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise SessionValidationError(f"unknown event kind {self.kind!r}")
        if not isinstance(self.ts, int) or self.ts < 0:
            raise SessionValidationError(f"event timestamp must be a non-negative integer, got {self.ts!r}")
        if self.kind in KEY_KINDS and self.key is None:
            raise SessionValidationError(f"{self.kind} event needs a 'key' payload")
        if self.kind in ("mouse_move", "touch_move", "touch_down", "touch_up") and (self.x is None or self.y is None):
            raise SessionValidationError(f"{self.kind} event needs 'x'/'y' payload")

    def to_json_dict(self) -> dict:
        obj = {"ts": self.ts, "kind": self.kind}
        for name in ("key", "x", "y", "button", "pointer"):
            value = getattr(self, name)
            if value is not None:
                obj[name] = value
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "InteractionEvent":
        return cls(
            ts=obj.get("ts"),
            kind=obj.get("kind"),
            key=obj.get("key"),
            x=obj.get("x"),
            y=obj.get("y"),
            button=obj.get("button"),
            pointer=obj.get("pointer"),
        )


@dataclass(frozen=True)
class Session:
    """An ordered interaction log for one participant."""

    pid: str
    events: tuple[InteractionEvent, ...]
    region: str | None = None

    def __post_init__(self) -> None:
        if not self.pid:
            raise SessionValidationError("participant id must be non-empty")
        object.__setattr__(self, "events", tuple(self.events))
        if self.region is not None:
            object.__setattr__(self, "region", parse_region(self.region))

    @property
    def start_ts(self) -> int:
        return self.events[0].ts if self.events else 0

    def validate(self) -> None:
        """Strict validation: sorted timestamps and fully paired key events."""
        last = -1
        pending: dict[int, int] = {}
        for ev in self.events:
            if ev.ts < last:
                raise SessionValidationError(
                    f"events out of order at ts={ev.ts} (previous {last})")
            last = ev.ts
            if ev.kind == "key_down":
                pending[ev.key] = pending.get(ev.key, 0) + 1
            elif ev.kind == "key_up":
                if pending.get(ev.key, 0) <= 0:
                    raise SessionValidationError(f"orphan key_up for key {ev.key} at ts={ev.ts}")
                pending[ev.key] -= 1
        unpaired = {k: n for k, n in pending.items() if n > 0}
        if unpaired:
            raise SessionValidationError(
                "key_down without matching key_up for key(s): "
                + ", ".join(str(k) for k in sorted(unpaired)))


@dataclass(frozen=True)
class FeatureVector:
    schema_version: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.schema_version, int):
            raise SessionValidationError(
                f"feature schema_version must be an integer, got {self.schema_version!r}")
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.shape != (FEATURE_COUNT,):
            raise SessionValidationError(
                f"feature vector must have {FEATURE_COUNT} entries, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise SessionValidationError("feature vector contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __getitem__(self, name: str) -> float:
        return float(self.values[FEATURE_NAMES.index(name)])

    def as_dict(self) -> dict[str, float]:
        return {name: float(v) for name, v in zip(FEATURE_NAMES, self.values)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, FeatureVector)
                and self.schema_version == other.schema_version
                and bool(np.array_equal(self.values, other.values)))


def _mean(values) -> float:
    return float(np.mean(values)) if values else 0.0


def _std(values) -> float:
    # population std; a single observation has spread 0
    return float(np.std(values)) if values else 0.0


def _pair_downs(events, down_kind: str, up_kind: str, id_of, strict: bool, skipped: list) -> list[tuple]:
    """FIFO-match down events to up events sharing an id; returns (down, up|None)."""
    pending: dict = {}
    pairs: list[tuple] = []
    order: dict = {}
    for ev in events:
        if ev.kind == down_kind:
            pending.setdefault(id_of(ev), []).append(ev)
            order[id(ev)] = len(pairs)
            pairs.append((ev, None))
        elif ev.kind == up_kind:
            queue = pending.get(id_of(ev))
            if not queue:
                if strict:
                    raise SessionValidationError(f"orphan {up_kind} at ts={ev.ts}")
                skipped.append(ev)
                continue
            down = queue.pop(0)
            pairs[order[id(down)]] = (down, ev)
    if strict:
        unmatched = [down for down, up in pairs if up is None]
        if unmatched:
            raise SessionValidationError(
                f"{down_kind} without matching {up_kind} at ts="
                + ", ".join(str(d.ts) for d in unmatched))
    return pairs


def _segment_speeds(points: list[tuple[int, float, float]]) -> list[float]:
    speeds = []
    for (t0, x0, y0), (t1, x1, y1) in zip(points, points[1:]):
        dt = t1 - t0
        if dt <= 0:
            continue
        speeds.append(math.hypot(x1 - x0, y1 - y0) / (dt / 1000.0))
    return speeds


def _span_seconds(events) -> float:
    if len(events) < 2:
        return 0.0
    return (events[-1].ts - events[0].ts) / 1000.0


def extract(session: Session, strict: bool = False) -> FeatureVector:
    """Compute the fixed 17-entry feature vector for one session.

    Strict mode raises on unsorted events and unpaired key events; lenient
    mode skips anomalies and logs how many were dropped.
    """
    events = session.events
    if strict:
        session.validate()
    else:
        if any(b.ts < a.ts for a, b in zip(events, events[1:])):
            events = tuple(sorted(events, key=lambda e: e.ts))

    skipped: list = []
    kb = [e for e in events if e.kind in KEY_KINDS]
    mouse = [e for e in events if e.kind in MOUSE_KINDS]
    touch = [e for e in events if e.kind in TOUCH_KINDS]

    out = {name: 0.0 for name in FEATURE_NAMES}

    if kb:
        out["kb_present"] = 1.0
        pairs = _pair_downs(kb, "key_down", "key_up", lambda e: e.key, strict, skipped)
        dwells = [up.ts - down.ts for down, up in pairs if up is not None]
        flights = []
        digraphs = []
        for (d0, u0), (d1, _u1) in zip(pairs, pairs[1:]):
            digraphs.append(d1.ts - d0.ts)
            if u0 is not None:
                # overlapping presses (rollover) clamp to zero
                flights.append(max(0, d1.ts - u0.ts))
        downs = [down for down, _ in pairs]
        out["dwell_mean_ms"] = _mean(dwells)
        out["dwell_std_ms"] = _std(dwells)
        out["flight_mean_ms"] = _mean(flights)
        out["flight_std_ms"] = _std(flights)
        out["digraph_latency_mean_ms"] = _mean(digraphs)
        span = _span_seconds(kb)
        out["typing_rate_keys_per_s"] = len(downs) / span if span > 0 else 0.0
        out["backspace_ratio"] = (
            sum(1 for d in downs if d.key == BACKSPACE_KEY) / len(downs) if downs else 0.0)

    if mouse:
        out["mouse_present"] = 1.0
        moves = [(e.ts, float(e.x), float(e.y)) for e in mouse if e.kind == "mouse_move"]
        speeds = _segment_speeds(moves)
        out["mouse_speed_mean_px_per_s"] = _mean(speeds)
        out["mouse_speed_std"] = _std(speeds)
        span_ms = mouse[-1].ts - mouse[0].ts
        if span_ms > 0:
            idle = sum(b.ts - a.ts for a, b in zip(mouse, mouse[1:])
                       if b.ts - a.ts > IDLE_GAP_MS)
            out["mouse_idle_ratio"] = idle / span_ms
        holds = _pair_downs(mouse, "mouse_down", "mouse_up",
                            lambda e: e.button if e.button is not None else 0,
                            strict, skipped)
        out["click_hold_mean_ms"] = _mean([up.ts - down.ts for down, up in holds if up is not None])

    if touch:
        out["touch_present"] = 1.0
        taps = _pair_downs(touch, "touch_down", "touch_up",
                           lambda e: e.pointer if e.pointer is not None else 0,
                           strict, skipped)
        out["touch_tap_duration_mean_ms"] = _mean(
            [up.ts - down.ts for down, up in taps if up is not None])
        by_pointer: dict = {}
        for e in touch:
            if e.kind == "touch_move":
                by_pointer.setdefault(e.pointer, []).append((e.ts, float(e.x), float(e.y)))
        swipe_speeds: list[float] = []
        for points in by_pointer.values():
            swipe_speeds.extend(_segment_speeds(points))
        out["touch_swipe_speed_mean_px_per_s"] = _mean(swipe_speeds)
        span = _span_seconds(touch)
        out["touch_event_rate_per_s"] = len(touch) / span if span > 0 else 0.0

    if skipped:
        log.warning("session %s: skipped %d unmatched events", session.pid, len(skipped))

    return FeatureVector(
        schema_version=SCHEMA_VERSION,
        values=np.array([out[name] for name in FEATURE_NAMES], dtype=np.float64),
    )


def extract_batch(sessions, strict: bool = False) -> list[FeatureVector]:
    """Element-wise :func:`extract`; order preserved."""
    return [extract(session, strict=strict) for session in sessions]


@dataclass(frozen=True)
class FeatureRow:
    """A feature vector plus the session identity needed to join labels."""

    pid: str
    ts: int
    vector: FeatureVector
    region: str | None = None


def extract_rows(sessions, strict: bool = False) -> list[FeatureRow]:
    return [FeatureRow(pid=s.pid, ts=s.start_ts, region=s.region,
                       vector=extract(s, strict=strict))
            for s in sessions]


def write_features(path, rows: list[FeatureRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps({
                "pid": row.pid,
                "ts": row.ts,
                "region": row.region,
                "schema_version": row.vector.schema_version,
                "values": row.vector.as_dict(),
            }, sort_keys=True) + "\n")


def load_features(path) -> list[FeatureRow]:
    rows: list[FeatureRow] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SessionValidationError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            values = obj.get("values", {})
            unknown = set(values) - set(FEATURE_NAMES)
            if unknown:
                raise SessionValidationError(
                    f"{path}:{lineno}: unknown feature(s): " + ", ".join(sorted(unknown)))
            missing = set(FEATURE_NAMES) - set(values)
            if missing:
                raise SessionValidationError(
                    f"{path}:{lineno}: missing feature(s): " + ", ".join(sorted(missing)))
            vector = FeatureVector(
                schema_version=obj.get("schema_version"),
                values=np.array([values[name] for name in FEATURE_NAMES], dtype=np.float64))
            rows.append(FeatureRow(pid=obj.get("pid", ""), ts=int(obj.get("ts", 0)),
                                   region=obj.get("region"), vector=vector))
    return rows


# --- session log serialization (JSON Lines) ---------------------------------
#
# A session is one header line {"pid": ..., "region": ...} followed by event
# lines; files may concatenate several sessions. A header line is any object
# without a "kind" field.

def write_sessions(path, sessions) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for session in sessions:
            fh.write(json.dumps({"pid": session.pid, "region": session.region},
                                sort_keys=True) + "\n")
            for ev in session.events:
                fh.write(json.dumps(ev.to_json_dict(), sort_keys=True) + "\n")


def load_sessions(path) -> list[Session]:
    sessions: list[Session] = []
    pid = None
    region = None
    events: list[InteractionEvent] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SessionValidationError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            if "kind" not in obj:
                if pid is not None:
                    sessions.append(Session(pid=pid, region=region, events=tuple(events)))
                pid = obj.get("pid")
                region = obj.get("region")
                events = []
                if not pid:
                    raise SessionValidationError(f"{path}:{lineno}: session header without 'pid'")
            else:
                if pid is None:
                    raise SessionValidationError(f"{path}:{lineno}: event line before any session header")
                try:
                    events.append(InteractionEvent.from_json_dict(obj))
                except SessionValidationError as exc:
                    raise SessionValidationError(f"{path}:{lineno}: {exc}") from None
    if pid is not None:
        sessions.append(Session(pid=pid, region=region, events=tuple(events)))
    return sessions
