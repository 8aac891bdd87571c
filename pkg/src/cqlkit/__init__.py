"""Corpus Query Language toolkit.

Parsing and canonical printing of CQL queries, execution over annotated
corpora, text-to-CQL evaluation metrics, and template-based generation of
query datasets.
"""

from .cql import QueryClass, canonical_print, classify, normalize, parse
from .errors import ParseError
from .metrics import (
    MetricScore,
    MetricWeights,
    bleu,
    cqlbleu,
    exact_match,
    score_record,
    tree_similarity,
    valid_accuracy,
)

__version__ = "0.1.0"

__all__ = [
    "MetricScore",
    "MetricWeights",
    "ParseError",
    "QueryClass",
    "bleu",
    "canonical_print",
    "classify",
    "cqlbleu",
    "exact_match",
    "normalize",
    "parse",
    "score_record",
    "tree_similarity",
    "valid_accuracy",
]
