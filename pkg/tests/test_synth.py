import pytest

from affectfuzz.errors import ConfigError
from affectfuzz.features import extract
from affectfuzz.synth import (
    JOY_SWEEP_MIX,
    PURPOSE_SESSION,
    PURPOSE_STATE,
    GeneratorConfig,
    arousal_proxy,
    dataset_hash,
    generate,
    render_session,
    sample_state,
    sample_states,
    stream,
)

from conftest import make_report


def joy_config(**kw):
    defaults = dict(seed=5, state_mix=(("joy", 2, 1.0),), noise_std=0.0)
    defaults.update(kw)
    return GeneratorConfig(**defaults)


class TestConfigValidation:
    def test_zero_sessions_rejected(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(sessions_per_participant=0)

    def test_zero_participants_rejected(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(participants=0)

    def test_negative_noise_rejected(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(noise_std=-0.1)

    def test_unsupported_anchor_in_mix(self):
        with pytest.raises(ConfigError, match="sadness"):
            GeneratorConfig(state_mix=(("sadness", 2, 1.0),))

    def test_bad_mix_level_and_weight(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(state_mix=(("joy", 7, 1.0),))
        with pytest.raises(ConfigError):
            GeneratorConfig(state_mix=(("joy", 2, 0.0),))
        with pytest.raises(ConfigError):
            GeneratorConfig(state_mix=())

    def test_non_finite_slope_rejected(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(dwell_slope_ms=float("nan"))


class TestSampleState:
    def test_noise_free_joy_level_2(self):
        report = sample_state(joy_config(), stream(5, 0, 0, PURPOSE_STATE))
        assert report.levels["joy"] == 2
        assert report.levels["disgust"] == 1     # round(0.84)
        assert report.levels["acceptance"] == 2  # round(2.15)
        assert report.levels["excited"] == 0     # non-basic defaults to zero

    def test_noise_free_anger_level_4(self):
        config = joy_config(state_mix=(("anger", 4, 1.0),))
        report = sample_state(config, stream(5, 0, 0, PURPOSE_STATE))
        assert report.levels["anger"] == 4
        assert report.levels["sadness"] == 3  # round(3.25)

    def test_same_stream_same_report(self):
        config = GeneratorConfig(seed=9, noise_std=0.5)
        a = sample_state(config, stream(9, 1, 2, PURPOSE_STATE))
        b = sample_state(config, stream(9, 1, 2, PURPOSE_STATE))
        assert a == b

    def test_levels_always_in_range(self):
        config = GeneratorConfig(seed=13, noise_std=3.0)
        for i in range(50):
            report = sample_state(config, stream(13, i, 0, PURPOSE_STATE))
            assert all(0 <= v <= 4 for v in report.levels.values())

    def test_sample_states_counts_and_determinism(self):
        config = GeneratorConfig(seed=21, noise_std=0.5, state_mix=JOY_SWEEP_MIX)
        reports = sample_states(config, 25)
        assert len(reports) == 25
        assert len({r.pid for r in reports}) == 25
        assert reports == sample_states(config, 25)
        with pytest.raises(ConfigError):
            sample_states(config, 0)


class TestRenderSession:
    def test_zero_arousal_dwells_equal_base(self):
        config = joy_config(behavior_noise_ms=0.0)
        state = make_report({})  # every emotion at 0 -> arousal 0
        session = render_session(state, config, stream(5, 0, 0, PURPOSE_SESSION))
        downs = {}
        dwells = []
        for ev in session.events:
            if ev.kind == "key_down":
                downs.setdefault(ev.key, []).append(ev.ts)
            elif ev.kind == "key_up":
                dwells.append(ev.ts - downs[ev.key].pop(0))
        assert dwells and all(d == config.base_dwell_ms for d in dwells)

    def test_arousal_shifts_dwell_by_slope(self):
        config = joy_config(behavior_noise_ms=0.0)
        low = make_report({})
        high = make_report({"anger": 4, "fear": 4, "surprise": 4, "joy": 4})
        assert arousal_proxy(high.levels) - arousal_proxy(low.levels) == 4.0
        vec_low = extract(render_session(low, config, stream(5, 0, 0, PURPOSE_SESSION)))
        vec_high = extract(render_session(high, config, stream(5, 0, 0, PURPOSE_SESSION)))
        assert vec_high["dwell_mean_ms"] - vec_low["dwell_mean_ms"] == \
            pytest.approx(4 * config.dwell_slope_ms)

    def test_separability_at_one_level_gap(self):
        config = joy_config(behavior_noise_ms=0.0)
        a = make_report({})
        b = make_report({"anger": 1, "fear": 1, "surprise": 1, "joy": 1})
        vec_a = extract(render_session(a, config, stream(5, 0, 0, PURPOSE_SESSION)))
        vec_b = extract(render_session(b, config, stream(5, 0, 0, PURPOSE_SESSION)))
        assert abs(vec_b["dwell_mean_ms"] - vec_a["dwell_mean_ms"]) >= config.dwell_slope_ms

    def test_mouse_speed_follows_kernel(self):
        config = joy_config(behavior_noise_ms=0.0)
        state = make_report({"anger": 2, "fear": 2, "surprise": 2, "joy": 2})
        vec = extract(render_session(state, config, stream(5, 0, 0, PURPOSE_SESSION)))
        expected = config.base_mouse_speed + 2 * config.mouse_speed_slope
        assert vec["mouse_speed_mean_px_per_s"] == pytest.approx(expected, rel=1e-6)

    def test_timestamps_strictly_increasing(self):
        config = GeneratorConfig(seed=3, behavior_noise_ms=5.0)
        state = sample_state(config, stream(3, 0, 0, PURPOSE_STATE))
        session = render_session(state, config, stream(3, 0, 0, PURPOSE_SESSION))
        ts = [ev.ts for ev in session.events]
        assert all(b > a for a, b in zip(ts, ts[1:]))

    def test_same_stream_byte_identical(self):
        config = GeneratorConfig(seed=8)
        state = sample_state(config, stream(8, 0, 0, PURPOSE_STATE))
        s1 = render_session(state, config, stream(8, 0, 0, PURPOSE_SESSION))
        s2 = render_session(state, config, stream(8, 0, 0, PURPOSE_SESSION))
        assert s1 == s2


class TestGenerate:
    def test_sizes_and_manifest(self):
        config = GeneratorConfig(seed=1, participants=3, sessions_per_participant=4)
        ds = generate(config)
        assert len(ds.sessions) == 12
        assert len(ds.reports) == 12
        assert ds.manifest["sessions"] == 12
        assert ds.manifest["config"]["seed"] == 1
        assert len(ds.manifest["dataset_hash"]) == 64
        assert len(ds.manifest["config_hash"]) == 64

    def test_seed_determinism(self):
        config = GeneratorConfig(seed=42, participants=2, sessions_per_participant=5)
        assert generate(config).manifest["dataset_hash"] == \
            generate(config).manifest["dataset_hash"]

    def test_different_seed_differs(self):
        a = generate(GeneratorConfig(seed=1, participants=2, sessions_per_participant=3))
        b = generate(GeneratorConfig(seed=2, participants=2, sessions_per_participant=3))
        assert a.manifest["dataset_hash"] != b.manifest["dataset_hash"]

    def test_adding_participants_preserves_earlier_draws(self):
        small = generate(GeneratorConfig(seed=6, participants=2, sessions_per_participant=4))
        large = generate(GeneratorConfig(seed=6, participants=3, sessions_per_participant=4))
        assert large.reports[:8] == small.reports
        assert large.sessions[:8] == small.sessions

    def test_reports_precede_sessions_within_window(self):
        ds = generate(GeneratorConfig(seed=2, participants=2, sessions_per_participant=3))
        for report, session in zip(ds.reports, ds.sessions):
            assert session.pid == report.pid
            assert 0 <= session.start_ts - report.ts <= 4 * 3600 * 1000

    def test_dataset_hash_sensitive_to_content(self):
        ds = generate(GeneratorConfig(seed=2, participants=1, sessions_per_participant=2))
        assert dataset_hash(ds.sessions, ds.reports) == ds.manifest["dataset_hash"]
        assert dataset_hash(ds.sessions[:1], ds.reports) != ds.manifest["dataset_hash"]


class TestArousalProxy:
    def test_mean_of_four(self):
        levels = {"anger": 1, "fear": 2, "surprise": 3, "joy": 4}
        assert arousal_proxy(levels) == 2.5
