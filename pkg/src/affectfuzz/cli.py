"""Command line entry point.

Subcommands: tables, fuzzify, collect, synth, extract, train, predict, eval.
Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
3 data or schema error. A key=value config file (via --config or the
AFFECT_FUZZY_CONFIG environment variable) supplies defaults; flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .classifier import (
    EmotionState,
    TrainConfig,
    build_labeled_samples,
    load_model,
    predict,
    save_model,
    train,
)
from .cooccurrence import (
    DEFAULT_TOLERANCE,
    expected_profile,
    plausibility,
    regional_profile,
    regional_table_csv,
    table_for,
)
from .emotions import (
    BASIC_EMOTIONS,
    EMOTIONS,
    SelfReport,
    load_reports,
    parse_emotion,
    write_reports,
)
from .errors import (
    AffectFuzzError,
    ConfigError,
    DegenerateLabelsError,
    EmotionParseError,
    EvalInputError,
    IncompleteDataError,
    InvalidCandidateError,
    InvalidMembershipError,
    LevelRangeError,
    ModelFormatError,
    NoRegionalDataError,
    RegionParseError,
    ReportValidationError,
    SchemaMismatchError,
    SessionValidationError,
    UnsupportedAnchorError,
)
from .evaluation import evaluate
from .features import extract_rows, load_features, load_sessions, write_features, write_sessions
from .fuzzy import fuzzify
from .synth import STATE_MIX_PRESETS, GeneratorConfig, generate

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_DATA = 3

CONFIG_ENV_VAR = "AFFECT_FUZZY_CONFIG"
CONFIG_KEYS = ("seed", "tolerance", "threshold", "svm_c", "svm_epochs", "region", "format")

_USAGE_ERRORS = (
    EmotionParseError, RegionParseError, LevelRangeError, UnsupportedAnchorError,
    NoRegionalDataError, InvalidCandidateError, ConfigError, InvalidMembershipError,
    EvalInputError,
)
_DATA_ERRORS = (
    ReportValidationError, SessionValidationError, SchemaMismatchError,
    DegenerateLabelsError, ModelFormatError, IncompleteDataError,
)


def load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value
    return values


class CliConfig:
    """Config-file defaults merged under the command line flags."""

    def __init__(self, args: argparse.Namespace):
        path = args.config or os.environ.get(CONFIG_ENV_VAR)
        self.file_values = load_config_file(path) if path else {}
        self.args = args

    def _file(self, key: str, cast):
        if key in self.file_values:
            try:
                return cast(self.file_values[key])
            except ValueError:
                raise ConfigError(f"config key {key!r} has invalid value "
                                  f"{self.file_values[key]!r}") from None
        return None

    def seed(self, flag_value=None) -> int:
        for v in (flag_value, self.args.seed, self._file("seed", int)):
            if v is not None:
                return int(v)
        return 0

    def tolerance(self, flag_value=None) -> float:
        for v in (flag_value, self._file("tolerance", float)):
            if v is not None:
                return float(v)
        return DEFAULT_TOLERANCE

    def threshold(self, flag_value=None) -> float:
        for v in (flag_value, self._file("threshold", float)):
            if v is not None:
                return float(v)
        return 0.5

    def svm_c(self, flag_value=None) -> float:
        for v in (flag_value, self._file("svm_c", float)):
            if v is not None:
                return float(v)
        return 1.0

    def svm_epochs(self, flag_value=None) -> int:
        for v in (flag_value, self._file("svm_epochs", int)):
            if v is not None:
                return int(v)
        return 200

    def region(self, flag_value=None):
        for v in (flag_value, self._file("region", str)):
            if v is not None:
                return v
        return None

    def out_format(self) -> str:
        v = self.args.format or self._file("format", str) or "table"
        if v not in ("json", "csv", "table"):
            raise ConfigError(f"unknown output format {v!r} (expected json, csv or table)")
        return v


def _print_profile(profile: dict[str, float], fmt: str, heading: str) -> None:
    if fmt == "json":
        print(json.dumps(profile, sort_keys=True))
    elif fmt == "csv":
        print("emotion,level")
        for name, level in profile.items():
            print(f"{name},{level!r}")
    else:
        print(heading)
        for name, level in profile.items():
            print(f"  {name:<14} {level}")


def cmd_tables(args, cfg: CliConfig) -> int:
    fmt = "csv" if (args.csv or args.plot_data) else cfg.out_format()
    region = cfg.region(args.region)

    if region == "all":
        if args.level is None:
            raise ConfigError("--region all requires --level")
        if parse_emotion(args.anchor) != "joy" or args.level != 2:
            raise NoRegionalDataError(
                "regional data exists only for anchor joy at level 2")
        print(regional_table_csv(), end="")
        return EXIT_OK

    if args.level is None:
        table = table_for(args.anchor)
        if fmt == "json":
            print(json.dumps({"anchor": table.anchor,
                              "columns": list(table.columns),
                              "rows": [dict(r) for r in table.rows]}, sort_keys=True))
        elif fmt == "csv":
            print(table.to_csv(), end="")
        else:
            print(f"change pattern for anchor '{table.anchor}'")
            print(table.to_csv(), end="")
        return EXIT_OK

    if region is not None:
        profile = regional_profile(region, args.anchor, args.level)
        heading = f"{args.anchor} at level {args.level} in {region}"
    else:
        profile = expected_profile(args.anchor, args.level)
        heading = f"{args.anchor} at level {args.level}"
    _print_profile(profile, fmt, heading)

    if args.check:
        name, _, level_text = args.check.partition(":")
        try:
            level = float(level_text)
        except ValueError:
            raise ConfigError(f"--check expects EMOTION:LEVEL, got {args.check!r}") from None
        verdict = plausibility(args.anchor, args.level, parse_emotion(name), level,
                               tolerance=cfg.tolerance(args.tolerance))
        word = "plausible" if verdict.plausible else "implausible"
        print(f"check {name}={level}: {word} (expected {verdict.expected}, "
              f"margin {verdict.margin:.4f}, tolerance {verdict.tolerance})")
    return EXIT_OK


def cmd_fuzzify(args, cfg: CliConfig) -> int:
    m = fuzzify(args.level)
    if cfg.out_format() == "json":
        print(json.dumps({"level": args.level, "weights": list(m.weights)}))
    else:
        print("class,weight" if cfg.out_format() == "csv" else f"level {args.level}")
        for c, w in enumerate(m.weights):
            print(f"{c},{w!r}" if cfg.out_format() == "csv" else f"  class {c}: {w}")
    return EXIT_OK


def _read_answers_file(path: str) -> dict[str, int]:
    answers: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected emotion=level, got {raw.strip()!r}")
            name_text, value_text = (part.strip() for part in line.split("=", 1))
            name = parse_emotion(name_text)
            if name == "neutral":
                raise ConfigError(f"{path}:{lineno}: 'neutral' is not reportable")
            try:
                value = int(value_text)
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: level for {name!r} must be an integer 0-4, "
                    f"got {value_text!r}") from None
            if value not in (0, 1, 2, 3, 4):
                raise ConfigError(f"{path}:{lineno}: level for {name!r} must be 0-4, got {value}")
            answers[name] = value
    missing = [e for e in EMOTIONS if e not in answers]
    if missing:
        raise ConfigError("answers file missing emotion(s): " + ", ".join(missing))
    return answers


def _prompt_answers() -> dict[str, int]:
    answers: dict[str, int] = {}
    print("rate each emotion from 0 (not present) to 4 (strongest)")
    for name in EMOTIONS:
        while True:
            try:
                text = input(f"{name} [0-4]: ").strip()
            except EOFError:
                raise ConfigError(f"input ended before all emotions were rated "
                                  f"(next: {name})") from None
            try:
                value = int(text)
            except ValueError:
                print(f"  please enter an integer 0-4 for {name}")
                continue
            if value not in (0, 1, 2, 3, 4):
                print(f"  {value} is out of range; enter 0-4")
                continue
            answers[name] = value
            break
    return answers


def cmd_collect(args, cfg: CliConfig) -> int:
    answers = _read_answers_file(args.answers) if args.answers else _prompt_answers()
    now_ms = args.now if args.now is not None else int(time.time() * 1000)
    region = cfg.region(args.region)
    report = SelfReport(ts=now_ms, pid=args.participant, region=region, levels=answers)
    with open(args.out, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(report.to_json_dict(), sort_keys=True) + "\n")
    print(f"recorded report for {args.participant} at ts={now_ms} -> {args.out}")

    if args.replay:
        session_out = args.session_out or str(Path(args.out).with_suffix(".sessions.jsonl"))
        events = []
        with open(args.replay, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise SessionValidationError(
                        f"{args.replay}:{lineno}: invalid JSON: {exc}") from None
                if "kind" in obj:
                    events.append(obj)
        with open(session_out, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"pid": args.participant, "region": region},
                                sort_keys=True) + "\n")
            for obj in events:
                fh.write(json.dumps(obj, sort_keys=True) + "\n")
        print(f"replayed {len(events)} events -> {session_out}")

    print(f"next prompt due at ts={now_ms + int(args.interval * 3600 * 1000)} "
          f"(interval {args.interval} h)")
    return EXIT_OK


def cmd_synth(args, cfg: CliConfig) -> int:
    if args.preset not in STATE_MIX_PRESETS:
        raise ConfigError(f"unknown preset {args.preset!r}; "
                          f"choose from {', '.join(sorted(STATE_MIX_PRESETS))}")
    config = GeneratorConfig(
        seed=cfg.seed(),
        participants=args.participants,
        sessions_per_participant=args.sessions,
        noise_std=args.noise,
        behavior_noise_ms=args.behavior_noise,
        state_mix=STATE_MIX_PRESETS[args.preset],
    )
    ds = generate(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_sessions(out_dir / "sessions.jsonl", ds.sessions)
    write_reports(out_dir / "reports.jsonl", ds.reports)
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(ds.manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"wrote {len(ds.sessions)} sessions and {len(ds.reports)} reports to {out_dir}")
    print(f"dataset hash {ds.manifest['dataset_hash']}")
    return EXIT_OK


def cmd_extract(args, cfg: CliConfig) -> int:
    sessions = load_sessions(args.sessions)
    rows = extract_rows(sessions, strict=args.strict)
    write_features(args.out, rows)
    print(f"extracted {len(rows)} feature vectors -> {args.out}")
    return EXIT_OK


def cmd_train(args, cfg: CliConfig) -> int:
    rows = load_features(args.features)
    reports = load_reports(args.reports)
    emotions = tuple(parse_emotion(e) for e in args.emotions.split(",")) if args.emotions \
        else BASIC_EMOTIONS
    samples = build_labeled_samples(rows, reports, emotions=emotions,
                                    window_hours=args.window_hours)
    if not samples:
        raise EvalInputError("no feature row joined a report within the window")
    config = TrainConfig(c=cfg.svm_c(args.c), epochs=cfg.svm_epochs(args.epochs),
                         seed=cfg.seed(), emotions=emotions)
    model = train(samples, config)
    save_model(model, args.out)
    print(f"trained on {len(samples)} samples "
          f"({', '.join(model.emotions)}) -> {args.out}")
    return EXIT_OK


def cmd_predict(args, cfg: CliConfig) -> int:
    model = load_model(args.model)
    if args.features:
        rows = load_features(args.features)
    else:
        rows = extract_rows(load_sessions(args.sessions))
    with open(args.out, "w", encoding="utf-8") as fh:
        for row in rows:
            state = predict(model, row.vector)
            obj = {"pid": row.pid, "ts": row.ts}
            obj.update(state.to_json_dict())
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
    print(f"predicted {len(rows)} sessions -> {args.out}")
    return EXIT_OK


def _load_predictions(path) -> list[tuple[str, int, EmotionState]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                state = EmotionState.from_json_dict(obj)
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise SchemaMismatchError(f"{path}:{lineno}: invalid prediction line: {exc}") from None
            out.append((obj.get("pid", ""), int(obj.get("ts", 0)), state))
    return out


def cmd_eval(args, cfg: CliConfig) -> int:
    predictions = _load_predictions(args.predictions)
    reports = load_reports(args.truth)
    by_key = {}
    for report in reports:
        by_key.setdefault(report.pid, []).append(report)
    for lst in by_key.values():
        lst.sort(key=lambda r: r.ts)

    paired_states = []
    paired_truth = []
    window_ms = args.window_hours * 3600 * 1000
    for pid, ts, state in predictions:
        candidates = by_key.get(pid, [])
        best = None
        for report in candidates:
            if report.ts <= ts and ts - report.ts <= window_ms:
                if best is None or report.ts > best.ts:
                    best = report
        if best is None:
            raise EvalInputError(
                f"prediction for pid={pid!r} ts={ts} has no truth report within "
                f"{args.window_hours} h")
        paired_states.append(state)
        paired_truth.append(best)

    report = evaluate(paired_states, paired_truth, threshold=cfg.threshold(args.threshold))
    fmt = "csv" if args.csv else cfg.out_format()
    if fmt == "json":
        print(report.to_json())
    elif fmt == "csv":
        print(report.confusion.to_csv(), end="")
    else:
        print(report.render_table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affectfuzz",
        description="fuzzy multi-level emotion modeling: tables, collection, "
                    "synthesis, training, prediction and evaluation")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key=value config file "
                                         f"(default: ${CONFIG_ENV_VAR})")
    parser.add_argument("--seed", type=int, help="global random seed")
    parser.add_argument("--format", choices=("json", "csv", "table"),
                        help="output format (default: table)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="query the embedded co-occurrence tables")
    p.add_argument("anchor", help="anchor emotion (joy, anticipation, anger, fear, acceptance)")
    p.add_argument("--level", type=float, help="anchor level 0-4; fractional interpolates")
    p.add_argument("--region", help="region for the joy-at-50%% profile, or 'all'")
    p.add_argument("--check", metavar="EMOTION:LEVEL",
                   help="plausibility verdict for a hypothesized co-emotion")
    p.add_argument("--tolerance", type=float, help="plausibility tolerance in levels")
    p.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--plot-data", action="store_true",
                   help="emit the per-level CSV series behind the change-pattern charts")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("fuzzify", help="show the class membership of a level")
    p.add_argument("level", type=float)
    p.set_defaults(func=cmd_fuzzify)

    p = sub.add_parser("collect", help="record one prompted self-report")
    p.add_argument("--out", required=True, help="reports JSONL file (appended)")
    p.add_argument("--participant", required=True)
    p.add_argument("--region")
    p.add_argument("--answers", help="scripted answers file (emotion=level lines)")
    p.add_argument("--replay", help="events file to copy into the session log")
    p.add_argument("--session-out", help="session log path (with --replay)")
    p.add_argument("--now", type=int, help="timestamp override in ms (for testing)")
    p.add_argument("--interval", type=float, default=4.0,
                   help="prompting interval in hours (metadata, default 4)")
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("synth", help="generate a deterministic synthetic dataset")
    p.add_argument("--out-dir", required=True)
    # SUPPRESS keeps the global --seed value when the subcommand flag is absent
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--participants", type=int, default=10)
    p.add_argument("--sessions", type=int, default=50)
    p.add_argument("--noise", type=float, default=0.25, help="state noise std in levels")
    p.add_argument("--behavior-noise", type=float, default=2.0,
                   help="timing jitter std in ms")
    p.add_argument("--preset", default="separable",
                   help="state mix preset: separable or joy-sweep")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="extract feature vectors from session logs")
    p.add_argument("--sessions", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true",
                   help="fail on unsorted or unpaired events instead of skipping")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="train per-emotion level classifiers")
    p.add_argument("--features", required=True)
    p.add_argument("--reports", required=True)
    p.add_argument("--out", required=True, help="model file")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--emotions", help="comma-separated emotion subset (default: the 8 basics)")
    p.add_argument("--c", type=float, help="soft-margin C (default 1.0)")
    p.add_argument("--epochs", type=int, help="training epochs (default 200)")
    p.add_argument("--window-hours", type=float, default=4.0,
                   help="label join window in hours")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="apply a model to sessions or features")
    p.add_argument("--model", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sessions")
    group.add_argument("--features")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="score predictions against truth reports")
    p.add_argument("--predictions", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--threshold", type=float, help="name detection threshold (default 0.5)")
    p.add_argument("--window-hours", type=float, default=4.0)
    p.add_argument("--csv", action="store_true", help="emit the confusion matrix as CSV")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(args)
        return args.func(args, cfg)
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AffectFuzzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:
    raise SystemExit(main())
