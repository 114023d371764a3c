from .app import create_app
from .store import (
    PHASES,
    RATING_DIMENSIONS,
    ChallengeService,
    Prompt,
    ServiceError,
    load_prompts,
    normalize_whitespace,
)

__all__ = [
    "PHASES",
    "RATING_DIMENSIONS",
    "ChallengeService",
    "Prompt",
    "ServiceError",
    "create_app",
    "load_prompts",
    "normalize_whitespace",
]
