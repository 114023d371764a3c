"""Long-text structure analysis and challenge evaluation toolkit."""

from .autocorr import (
    AutocorrelationCurve,
    autocorrelation_fft,
    autocorrelation_naive,
)
from .embeddings import (
    EmbeddingTable,
    TokenSequence,
    UnitVectorSequence,
    embed_sequence,
    load_embedding_table,
    tokenize,
)
from .errors import (
    DegenerateFit,
    EmbeddingFileError,
    EmptyTable,
    EmptyVocabularyOverlap,
    InsufficientPositiveLags,
    LtgError,
    MalformedEmbeddingFile,
    MetricError,
    TextTooShort,
    ZeroDenominator,
)
from .lawfit import (
    AnalysisConfig,
    GapelmaperReport,
    LagSelection,
    LawFit,
    analyze_text,
    fit_exponential_law,
    fit_power_law,
    gapelmaper,
    geometric_lag_grid,
    select_fit_lags,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "AutocorrelationCurve",
    "DegenerateFit",
    "EmbeddingFileError",
    "EmbeddingTable",
    "EmptyTable",
    "EmptyVocabularyOverlap",
    "GapelmaperReport",
    "InsufficientPositiveLags",
    "LagSelection",
    "LawFit",
    "LtgError",
    "MalformedEmbeddingFile",
    "MetricError",
    "TextTooShort",
    "TokenSequence",
    "UnitVectorSequence",
    "ZeroDenominator",
    "analyze_text",
    "autocorrelation_fft",
    "autocorrelation_naive",
    "embed_sequence",
    "fit_exponential_law",
    "fit_power_law",
    "gapelmaper",
    "geometric_lag_grid",
    "load_embedding_table",
    "select_fit_lags",
    "tokenize",
]
