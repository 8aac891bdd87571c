"""Text-to-CQL evaluation metrics: EM, VA, EX, BLEU, tree similarity, CQLBLEU."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .cql.lexer import lex
from .cql.parser import parse
from .cql.printer import canonical_print
from .cql.signature import non_leaf_signatures
from .errors import GoldInvalid, ParseError


@dataclass(frozen=True)
class MetricWeights:
    alpha: float = 0.5
    beta: float = 0.5

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not math.isclose(self.alpha + self.beta, 1.0, abs_tol=1e-9):
            raise ValueError(f"alpha + beta must equal 1, got {self.alpha + self.beta}")


DEFAULT_WEIGHTS = MetricWeights()


@dataclass(frozen=True)
class MetricScore:
    em: int
    va: int
    ex: Optional[int]
    bleu: float
    ts: float
    cqlbleu: float

    def as_dict(self):
        return {
            "em": self.em,
            "va": self.va,
            "ex": self.ex,
            "bleu": self.bleu,
            "ts": self.ts,
            "cqlbleu": self.cqlbleu,
        }


def _parse_gold(gold):
    try:
        return parse(gold)
    except ParseError as exc:
        raise GoldInvalid(f"gold query does not parse: {exc}") from exc


def _try_parse(text):
    try:
        return parse(text)
    except ParseError:
        return None


def exact_match(pred: str, gold: str) -> int:
    gold_q = _parse_gold(gold)
    pred_q = _try_parse(pred)
    if pred_q is None:
        return 0
    return int(canonical_print(pred_q) == canonical_print(gold_q))


def valid_accuracy(pred: str) -> int:
    return int(_try_parse(pred) is not None)


def token_stream(text: str):
    """Lexer-token texts of the canonical form when parseable, else of the raw text."""
    q = _try_parse(text)
    if q is not None:
        text = canonical_print(q)
    return [t.text for t in lex(text)]


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu_tokens(candidate, reference, max_n=4):
    """Sentence BLEU with uniform weights.

    Orders whose clipped match count is zero get add-one smoothing on
    numerator and denominator, so an order with no candidate n-grams at all
    contributes a precision of 1 and the brevity penalty does the rest.
    """
    if not candidate:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand = _ngrams(candidate, n)
        ref = _ngrams(reference, n)
        total = sum(cand.values())
        matched = sum(min(c, ref[g]) for g, c in cand.items())
        if matched == 0:
            matched, total = 1, total + 1
        log_sum += math.log(matched / total) / max_n
    bp = min(1.0, math.exp(1 - len(reference) / len(candidate)))
    return bp * math.exp(log_sum)


def bleu(pred: str, gold: str, max_n: int = 4) -> float:
    return bleu_tokens(token_stream(pred), token_stream(gold), max_n)


def similarity(pred_q, gold_q):
    """Fraction of the candidate's non-leaf nodes whose signature occurs among
    the reference's non-leaf node signatures."""
    cand = non_leaf_signatures(pred_q)
    ref = set(non_leaf_signatures(gold_q))
    if not cand:
        return 0.0
    return sum(1 for s in cand if s in ref) / len(cand)


def tree_similarity(pred: str, gold: str) -> float:
    gold_q = _parse_gold(gold)
    pred_q = _try_parse(pred)
    if pred_q is None:
        return 0.0
    return similarity(pred_q, gold_q)


def cqlbleu(pred: str, gold: str, w: MetricWeights = DEFAULT_WEIGHTS) -> float:
    return w.alpha * bleu(pred, gold) + w.beta * tree_similarity(pred, gold)


def score_record(pred: str, gold: str, corpus=None, w: MetricWeights = DEFAULT_WEIGHTS, limit=None) -> MetricScore:
    """Every metric for one (prediction, gold) pair.

    ``corpus`` is an optional :class:`~cqlkit.corpus.CorpusIndex`; when given,
    execution accuracy is included.
    """
    gold_q = _parse_gold(gold)
    pred_q = _try_parse(pred)
    ex = None
    if corpus is not None:
        from .corpus.engine import execution_accuracy

        ex = execution_accuracy(pred, gold, corpus, limit)
    b = bleu(pred, gold)
    if pred_q is None:
        return MetricScore(0, 0, ex, b, 0.0, w.alpha * b)
    em = int(canonical_print(pred_q) == canonical_print(gold_q))
    ts = similarity(pred_q, gold_q)
    return MetricScore(em, 1, ex, b, ts, w.alpha * b + w.beta * ts)
