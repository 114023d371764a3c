"""Exception types for the analysis pipeline.

Two families matter for callers: embedding-file problems (bad input
artifacts) and metric-domain problems (text that cannot be scored).
The CLI maps them to exit codes 1 and 2 respectively.
"""


class LtgError(Exception):
    """Base class for all analysis errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class EmbeddingFileError(LtgError):
    """Problems reading or parsing an embedding table file."""


class MalformedEmbeddingFile(EmbeddingFileError):
    pass


class EmptyTable(EmbeddingFileError):
    pass


class MetricError(LtgError):
    """The text cannot be scored (too short, no vocabulary overlap, ...)."""


class EmptyVocabularyOverlap(MetricError):
    pass


class TextTooShort(MetricError):
    pass


class InsufficientPositiveLags(MetricError):
    pass


class DegenerateFit(MetricError):
    pass


class ZeroDenominator(MetricError):
    pass
