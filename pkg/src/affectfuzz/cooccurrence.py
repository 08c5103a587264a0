"""Embedded co-occurrence tables and profile estimation.

Each table answers: given an anchor emotion held at an integer level 0-4,
what level of every other basic emotion was reported on average at the
same moment? Tables exist for five anchors (joy, anticipation, anger,
fear, acceptance); the remaining three basic emotions were never published
as anchors and are rejected rather than approximated. A single regional
table conditions the joy-at-level-2 profile on three world regions.

Non-integer anchor levels are answered by linear interpolation between the
two bracketing rows. Integer levels return the stored row values verbatim
so no floating point drift is ever introduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .emotions import BASIC_EMOTIONS, check_level, is_basic, parse_emotion, parse_region
from .errors import (
    IncompleteDataError,
    InvalidCandidateError,
    LevelRangeError,
    NoRegionalDataError,
    UnsupportedAnchorError,
)

DEFAULT_TOLERANCE = 0.75

# Column order is the canonical basic-emotion order minus the anchor.
_RAW_TABLES: dict[str, tuple[tuple[float, ...], ...]] = {
    "joy": (
        # anticipation, anger, disgust, sadness, surprise, fear, acceptance
        (0.60, 1.73, 1.40, 2.13, 0.66, 1.20, 1.06),
        (1.75, 0.83, 0.62, 1.04, 0.85, 1.37, 1.70),
        (1.70, 0.95, 0.84, 1.34, 1.06, 1.04, 2.15),
        (2.14, 0.88, 0.64, 0.91, 1.08, 0.91, 2.11),
        (2.58, 1.25, 0.83, 0.83, 2.08, 0.66, 2.83),
    ),
    "anticipation": (
        # joy, anger, disgust, sadness, surprise, fear, acceptance
        (1.42, 0.60, 0.60, 1.21, 0.25, 0.92, 1.50),
        (1.92, 0.92, 0.92, 0.92, 1.36, 1.04, 1.96),
        (1.97, 1.20, 0.88, 1.26, 1.05, 1.23, 1.97),
        (2.41, 1.22, 0.74, 1.19, 1.54, 0.90, 2.38),
        (2.90, 1.27, 1.09, 1.81, 1.36, 1.27, 2.36),
    ),
    "anger": (
        # joy, anticipation, disgust, sadness, surprise, fear, acceptance
        (2.01, 1.42, 0.21, 0.65, 0.59, 0.63, 1.80),
        (2.31, 2.00, 0.86, 1.00, 1.62, 1.20, 2.13),
        (1.85, 2.42, 1.23, 2.09, 1.42, 1.66, 2.42),
        (2.30, 2.10, 1.70, 1.80, 1.40, 2.00, 2.00),
        (1.25, 1.62, 3.00, 3.25, 1.62, 0.85, 1.87),
    ),
    "fear": (
        # joy, anticipation, anger, disgust, sadness, surprise, acceptance
        (2.09, 1.72, 0.77, 0.61, 0.87, 0.77, 1.85),
        (2.15, 1.71, 0.79, 0.74, 1.23, 1.15, 2.12),
        (2.10, 2.05, 1.78, 1.05, 1.94, 1.52, 2.10),
        (1.55, 2.11, 1.11, 1.22, 1.33, 1.22, 2.00),
        (1.37, 1.50, 2.00, 1.50, 1.62, 1.62, 2.12),
    ),
    "acceptance": (
        # joy, anticipation, anger, disgust, sadness, surprise, fear
        (1.48, 1.04, 0.52, 0.32, 0.84, 0.32, 0.72),
        (1.72, 1.83, 1.61, 0.94, 1.66, 1.22, 1.27),
        (1.96, 2.06, 1.00, 1.03, 1.06, 1.29, 1.12),
        (2.42, 1.90, 1.11, 0.92, 1.40, 1.14, 1.14),
        (2.38, 2.07, 1.00, 0.69, 1.07, 1.69, 0.92),
    ),
}

SUPPORTED_ANCHORS: tuple[str, ...] = ("joy", "anticipation", "anger", "fear", "acceptance")

REGIONAL_ANCHOR = "joy"
REGIONAL_ANCHOR_LEVEL = 2
REGIONAL_REGIONS: tuple[str, ...] = ("europe", "middle_east", "south_east_asia")

# joy-at-level-2 profiles per region; rows in canonical column order.
_RAW_REGIONAL: dict[str, dict[str, float]] = {
    "europe": {
        "anticipation": 1.14, "anger": 0.42, "disgust": 0.71, "sadness": 1.00,
        "surprise": 0.57, "fear": 0.85, "acceptance": 2.00,
    },
    "middle_east": {
        "anticipation": 1.80, "anger": 1.09, "disgust": 0.71, "sadness": 1.66,
        "surprise": 1.33, "fear": 1.33, "acceptance": 2.09,
    },
    "south_east_asia": {
        "anticipation": 1.66, "anger": 1.50, "disgust": 1.16, "sadness": 0.50,
        "surprise": 1.33, "fear": 0.66, "acceptance": 2.33,
    },
}


def columns_for(anchor: str) -> tuple[str, ...]:
    """The seven non-anchor basic emotions, in canonical order."""
    return tuple(e for e in BASIC_EMOTIONS if e != anchor)


@dataclass(frozen=True)
class CooccurrenceTable:
    """Five rows (anchor level 0-4), each mapping the 7 other basics to a level."""

    anchor: str
    columns: tuple[str, ...]
    rows: tuple[dict[str, float], ...]

    def row(self, level_class: int) -> dict[str, float]:
        if level_class not in (0, 1, 2, 3, 4):
            raise LevelRangeError(f"anchor level class {level_class!r} not in 0..4")
        return dict(self.rows[level_class])

    def to_csv(self) -> str:
        lines = ["anchor_level," + ",".join(self.columns)]
        for lvl, row in enumerate(self.rows):
            lines.append(str(lvl) + "," + ",".join(repr(row[c]) for c in self.columns))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PlausibilityVerdict:
    plausible: bool
    expected: float
    hypothesized: float
    margin: float
    tolerance: float


def _build_tables() -> dict[str, CooccurrenceTable]:
    tables = {}
    for anchor, raw in _RAW_TABLES.items():
        cols = columns_for(anchor)
        rows = tuple(dict(zip(cols, values)) for values in raw)
        tables[anchor] = CooccurrenceTable(anchor=anchor, columns=cols, rows=rows)
    return tables


_TABLES = _build_tables()


def _check_anchor(anchor: str) -> str:
    name = parse_emotion(anchor)
    if name not in _TABLES:
        raise UnsupportedAnchorError(
            f"unsupported anchor {name!r}: tables exist only for "
            + ", ".join(SUPPORTED_ANCHORS))
    return name


def table_for(anchor: str) -> CooccurrenceTable:
    """The embedded change-pattern table for one of the five anchors."""
    return _TABLES[_check_anchor(anchor)]


def expected_profile(anchor: str, level: float) -> dict[str, float]:
    """Expected levels of the other basics when the anchor sits at ``level``.

    Integer levels return the table row exactly; fractional levels are the
    component-wise linear interpolation of the two bracketing rows.
    """
    table = table_for(anchor)
    lvl = check_level(level)
    lo = math.floor(lvl)
    if lo == lvl:
        return table.row(int(lvl))
    hi = lo + 1
    frac = lvl - lo
    row_lo, row_hi = table.rows[lo], table.rows[hi]
    return {e: row_lo[e] + frac * (row_hi[e] - row_lo[e]) for e in table.columns}


def plausibility(anchor: str, anchor_level: float, candidate: str,
                 candidate_level: float, tolerance: float = DEFAULT_TOLERANCE) -> PlausibilityVerdict:
    """Judge whether a hypothesized co-emotion level is consistent with the tables.

    The verdict is plausible when the hypothesized level sits within
    ``tolerance`` levels of the table expectation.
    """
    if tolerance <= 0:
        raise LevelRangeError(f"tolerance must be positive, got {tolerance!r}")
    cand = parse_emotion(candidate)
    name = _check_anchor(anchor)
    if cand == name:
        raise InvalidCandidateError(f"candidate {cand!r} equals the anchor")
    profile = expected_profile(name, anchor_level)
    if cand not in profile:
        raise InvalidCandidateError(f"candidate {cand!r} is not a basic emotion column")
    hyp = check_level(candidate_level)
    expected = profile[cand]
    margin = abs(hyp - expected)
    return PlausibilityVerdict(
        plausible=margin <= tolerance,
        expected=expected,
        hypothesized=hyp,
        margin=margin,
        tolerance=tolerance,
    )


def regional_profile(region: str, anchor: str, level: float) -> dict[str, float]:
    """Region-conditioned profile; published only for joy at level 2."""
    reg = parse_region(region)
    name = _check_anchor(anchor)
    lvl = check_level(level)
    if name != REGIONAL_ANCHOR or lvl != REGIONAL_ANCHOR_LEVEL or reg not in _RAW_REGIONAL:
        raise NoRegionalDataError(
            f"no regional data for region={reg!r}, anchor={name!r}, level={level!r}; "
            f"only ({'/'.join(REGIONAL_REGIONS)}, joy, 2) is available")
    return dict(_RAW_REGIONAL[reg])


def regional_table_csv() -> str:
    cols = columns_for(REGIONAL_ANCHOR)
    lines = ["emotion," + ",".join(REGIONAL_REGIONS)]
    for emotion in cols:
        lines.append(emotion + "," + ",".join(repr(_RAW_REGIONAL[r][emotion]) for r in REGIONAL_REGIONS))
    return "\n".join(lines) + "\n"


def recompute_table(reports, anchor: str) -> CooccurrenceTable:
    """Rebuild a change-pattern table from self-reports.

    Reports are bucketed by the anchor's reported class; every other basic
    emotion's cell is the arithmetic mean of its reported levels inside the
    bucket. All five buckets must be populated.
    """
    name = parse_emotion(anchor)
    if not is_basic(name):
        raise UnsupportedAnchorError(f"anchor {name!r} is not a basic emotion")
    cols = columns_for(name)
    sums = {lvl: {e: 0.0 for e in cols} for lvl in range(5)}
    counts = {lvl: 0 for lvl in range(5)}
    for report in reports:
        lvl = report.levels[name]
        counts[lvl] += 1
        for e in cols:
            sums[lvl][e] += report.levels[e]
    missing = [lvl for lvl in range(5) if counts[lvl] == 0]
    if missing:
        raise IncompleteDataError(
            "no reports for anchor level(s): " + ", ".join(str(v) for v in missing))
    rows = tuple({e: sums[lvl][e] / counts[lvl] for e in cols} for lvl in range(5))
    return CooccurrenceTable(anchor=name, columns=cols, rows=rows)
