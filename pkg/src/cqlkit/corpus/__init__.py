from .engine import (
    DEFAULT_LIMIT,
    Hit,
    HitSet,
    TruncatedHitsWarning,
    default_limit,
    execute,
    execute_text,
    execution_accuracy,
)
from .index import CorpusIndex, build_index
from .model import AnnotatedCorpus, AnnToken, StructureSpan, ingest_vertical, write_vertical
from .oracle import brute_force_execute

__all__ = [
    "DEFAULT_LIMIT",
    "AnnToken",
    "AnnotatedCorpus",
    "CorpusIndex",
    "Hit",
    "HitSet",
    "StructureSpan",
    "TruncatedHitsWarning",
    "brute_force_execute",
    "build_index",
    "default_limit",
    "execute",
    "execute_text",
    "execution_accuracy",
    "ingest_vertical",
    "write_vertical",
]
