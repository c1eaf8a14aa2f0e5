"""
Exception hierarchy for the hazard knowledge pipeline.

Every error raised on purpose by the package derives from HazardKGError and
carries a short machine-readable ``code`` that the command line prints.
"""


class HazardKGError(Exception):
    """Base class for all pipeline errors."""

    code = 'error'

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class InvalidInputError(HazardKGError, ValueError):
    """Raised when an operation receives arguments outside its contract."""

    code = 'invalid-input'


class TableDecodeError(HazardKGError):
    """Raised when a table file is not valid UTF-8."""

    code = 'decode-error'


class InvalidRecordError(HazardKGError, ValueError):
    """Raised when a hazard record violates its invariants."""

    code = 'invalid-record'


class DuplicateIdError(HazardKGError):
    """Raised when a record id appears twice in one dataset or batch."""

    code = 'duplicate-id'

    def __init__(self, doc_id, context='batch'):
        super().__init__(f'duplicate id {doc_id!r} in {context}')
        self.doc_id = doc_id


class TrainingError(HazardKGError):
    """Raised when a segmentation model cannot be trained."""

    code = 'training-error'


class InvalidModelError(HazardKGError):
    """Raised when HMM parameters break a stochastic or structural invariant."""

    code = 'invalid-model'


class ModelFormatError(HazardKGError):
    """Raised when a model file cannot be parsed."""

    code = 'model-format'


class IndexNotFoundError(HazardKGError):
    """Raised when an index directory does not exist."""

    code = 'index-not-found'

    def __init__(self, path):
        super().__init__(f'index directory not found: {path}')
        self.path = path


class IndexIntegrityError(HazardKGError):
    """Raised when a shard's segment or manifest files are corrupt."""

    code = 'index-integrity'

    def __init__(self, shard_id, detail):
        super().__init__(f'shard {shard_id}: {detail}')
        self.shard_id = shard_id


class StorageError(HazardKGError):
    """Raised when a commit cannot be made durable."""

    code = 'storage-error'


class UnknownFormatError(HazardKGError, ValueError):
    """Raised when an export format is not supported."""

    code = 'unknown-format'


class RuleFormatError(HazardKGError):
    """Raised when a prediction rules file is malformed."""

    code = 'rule-format'


class ConfigError(HazardKGError):
    """Raised when pipeline configuration is invalid."""

    code = 'config-error'
