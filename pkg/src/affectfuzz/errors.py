"""Exception hierarchy shared by all affectfuzz modules."""


class AffectFuzzError(Exception):
    """Base class for all library errors."""


class EmotionParseError(AffectFuzzError, ValueError):
    """Token is not one of the accepted emotion names."""


class RegionParseError(AffectFuzzError, ValueError):
    """Token is not one of the accepted region names."""


class LevelRangeError(AffectFuzzError, ValueError):
    """Level or percentage outside its valid range."""


class ReportValidationError(AffectFuzzError, ValueError):
    """Self-report record violates the schema."""


class UnsupportedAnchorError(AffectFuzzError, ValueError):
    """No co-occurrence table exists for this anchor emotion."""


class NoRegionalDataError(AffectFuzzError, ValueError):
    """No regional profile exists for this (region, anchor, level) combination."""


class InvalidCandidateError(AffectFuzzError, ValueError):
    """Plausibility candidate coincides with the anchor."""


class IncompleteDataError(AffectFuzzError, ValueError):
    """Report collection is missing whole anchor-level buckets."""


class InvalidMembershipError(AffectFuzzError, ValueError):
    """Membership weights are negative or do not sum to one."""


class SessionValidationError(AffectFuzzError, ValueError):
    """Interaction event log violates ordering or pairing rules."""


class SchemaMismatchError(AffectFuzzError, ValueError):
    """Feature schema version or length does not match the model."""


class DegenerateLabelsError(AffectFuzzError, ValueError):
    """An emotion's training labels contain a single class."""


class ModelFormatError(AffectFuzzError, ValueError):
    """Model file is corrupt, truncated, or has an unsupported version."""


class ConfigError(AffectFuzzError, ValueError):
    """Invalid generator or CLI configuration."""


class EvalInputError(AffectFuzzError, ValueError):
    """Evaluation inputs are empty or misaligned."""
