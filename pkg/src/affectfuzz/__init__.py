"""Fuzzy multi-level emotion modeling and recognition toolkit."""

from .emotions import (
    BASIC_EMOTIONS,
    EMOTIONS,
    NEUTRAL,
    REGIONS,
    SelfReport,
    level_from_percent,
    parse_emotion,
    parse_region,
    percent,
)
from .cooccurrence import (
    CooccurrenceTable,
    PlausibilityVerdict,
    expected_profile,
    plausibility,
    recompute_table,
    regional_profile,
    table_for,
)
from .fuzzy import Membership, defuzzify, fuzzify, fuzzify_profile
from .features import (
    FEATURE_NAMES,
    FeatureRow,
    FeatureVector,
    InteractionEvent,
    Session,
    extract,
    extract_batch,
)
from .classifier import (
    EmotionState,
    LabeledSample,
    Model,
    TrainConfig,
    build_labeled_samples,
    load_model,
    predict,
    save_model,
    train,
)
from .evaluation import (
    ConfusionMatrix,
    EvalReport,
    aspect1_accuracy,
    aspect2_level_fpr,
    confusion_matrix,
    evaluate,
)
from .synth import GeneratorConfig, SyntheticDataset, generate, render_session, sample_state, sample_states

__version__ = "0.1.0"
