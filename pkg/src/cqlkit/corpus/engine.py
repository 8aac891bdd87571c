"""Query execution over a :class:`CorpusIndex`.

Token constraints are evaluated as boolean masks over the whole corpus; each
sequence is then matched by a forward pass over (start, position, bindings)
states, one token expression at a time. Every quantifier decomposition is
explored, so the hit set does not depend on greedy or lazy matching.
"""

from __future__ import annotations

import os
import warnings
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..cql.nodes import Op, Query, SeqExpr, StructureTag, query_attrs
from ..cql.parser import parse
from ..errors import ExecutionError, GoldExecutionFailed, GoldInvalid, ParseError
from .index import CorpusIndex

DEFAULT_LIMIT = 100_000


def default_limit():
    """Hit limit, overridable through the ``CQLKIT_LIMIT`` environment variable."""
    raw = os.environ.get("CQLKIT_LIMIT")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"CQLKIT_LIMIT must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError("CQLKIT_LIMIT must be >= 1")
        return value
    return DEFAULT_LIMIT


class TruncatedHitsWarning(RuntimeWarning):
    pass


@dataclass(frozen=True, order=True)
class Hit:
    doc_id: int
    start: int
    end: int
    bindings: tuple = field(default=(), compare=False)  # ((label, offset), ...)

    @property
    def span(self):
        return (self.doc_id, self.start, self.end)


@dataclass(frozen=True)
class HitSet:
    hits: frozenset
    truncated: bool = False

    def spans(self):
        return frozenset(h.span for h in self.hits)

    def sorted(self):
        return sorted(self.hits)

    def __len__(self):
        return len(self.hits)


class _Containment:
    """Answers "is [s, e) inside some span of this list?" by binary search
    over spans sorted by start, with a running maximum of their ends."""

    def __init__(self, spans):
        spans = sorted(spans)
        self.starts = np.array([s for s, _ in spans], dtype=np.int64)
        self.max_end = np.maximum.accumulate(np.array([e for _, e in spans], dtype=np.int64)) if spans else np.zeros(0, np.int64)

    def contains(self, s, e):
        i = int(np.searchsorted(self.starts, s, side="right")) - 1
        return i >= 0 and self.max_end[i] >= e

    def contains_many(self, S, E):
        if not len(self.starts):
            return np.zeros(len(S), dtype=bool)
        i = np.searchsorted(self.starts, S, side="right") - 1
        return (i >= 0) & (self.max_end[np.maximum(i, 0)] >= E)


def _check_attrs(q, idx):
    for attr in sorted(query_attrs(q)):
        idx.check_attr(attr)


def match_seq(seq: SeqExpr, idx: CorpusIndex, tracked=frozenset()):
    """All non-empty matches of ``seq``.

    Returns ``{(start, end): set of binding tuples}`` in global positions,
    where a binding tuple is ``((label, pos), ...)`` for the labels in
    ``tracked`` in sequence order.
    """
    S, E, B, labels = match_arrays(seq, idx, tracked)
    out = {}
    for s, e, b in zip(S.tolist(), E.tolist(), B.tolist()):
        out.setdefault((s, e), set()).add(tuple(zip(labels, b)))
    return out


def match_arrays(seq: SeqExpr, idx: CorpusIndex, tracked=frozenset()):
    """Array form of :func:`match_seq`: ``(starts, ends, bindings, labels)``
    with one row per distinct (start, end, bindings) match."""
    empty = np.zeros(0, dtype=np.int64)
    labels = [t.label for t in seq.elements if t.label in tracked]
    if idx.n == 0:
        return empty, empty, np.zeros((0, len(labels)), np.int64), labels
    col = {label: i for i, label in enumerate(labels)}

    # State arrays: start, current position, and one binding column per label.
    first = seq.elements[0]
    runs = idx.run_lengths(idx.constraint_mask(first.constraint))
    if first.quant.min >= 1:
        S = np.flatnonzero(runs >= 1)
    else:
        S = np.arange(idx.n, dtype=np.int64)
    P = S.copy()
    B = np.full((len(S), len(labels)), -1, dtype=np.int64)
    end_of = idx.doc_end

    for i, t in enumerate(seq.elements):
        if i:
            runs = idx.run_lengths(idx.constraint_mask(t.constraint))
        inside = P < end_of[S]
        avail = np.where(inside, runs[np.minimum(P, idx.n - 1)], 0)
        lo = t.quant.min
        hi = int(min(t.quant.max, avail.max(initial=0)))
        parts = []
        for r in range(lo, hi + 1):
            keep = avail >= r
            if not keep.any():
                break
            b = B[keep]
            if t.label in col:
                b = b.copy()
                b[:, col[t.label]] = P[keep]
            parts.append((S[keep], P[keep] + r, b))
        if not parts:
            return empty, empty, np.zeros((0, len(labels)), np.int64), labels
        S = np.concatenate([p[0] for p in parts])
        P = np.concatenate([p[1] for p in parts])
        B = np.concatenate([p[2] for p in parts])
        if labels:
            rows = np.unique(np.column_stack([S, P, B]), axis=0)
            S, P, B = rows[:, 0], rows[:, 1], rows[:, 2:]
        else:
            key = np.unique(S * (idx.n + 1) + P)
            S, P = key // (idx.n + 1), key % (idx.n + 1)
            B = np.empty((len(S), 0), dtype=np.int64)

    nonempty = P > S
    return S[nonempty], P[nonempty], B[nonempty], labels


def _conditions_hold(conditions, bound, idx):
    for c in conditions:
        a = idx.values[c.left.attr][bound[c.left.label]]
        b = idx.values[c.right.attr][bound[c.right.label]]
        if (a == b) != (c.op is Op.EQ):
            return False
    return True


def execute(q: Query, idx: CorpusIndex, limit=None) -> HitSet:
    """Run ``q`` over ``idx`` and return every distinct matching span.

    At most ``limit`` hits are kept (the first ones in document order); the
    result is flagged ``truncated`` when more existed.
    """
    if limit is None:
        limit = default_limit()
    if limit < 1:
        raise ValueError("limit must be >= 1")
    _check_attrs(q, idx)
    cond_labels = q.condition_labels()
    head_labels = {t.label for t in q.head.elements}
    if cond_labels <= head_labels and not any(
        isinstance(w, SeqExpr) and any(t.label in cond_labels for t in w.elements) for w in q.withins
    ):
        return _execute_vectorised(q, idx, limit, cond_labels)
    return _execute_general(q, idx, limit, cond_labels)


def _execute_general(q, idx, limit, cond_labels):
    """Any query; bindings from within clauses take part in the conditions."""
    head = match_seq(q.head, idx, cond_labels)
    clauses = []
    for w in q.withins:
        if isinstance(w, StructureTag):
            clauses.append(("fast", _Containment(idx.structure_spans(w.name))))
            continue
        tracked = {t.label for t in w.elements if t.label in cond_labels}
        matches = match_seq(w, idx, tracked)
        if tracked:
            ordered = sorted(matches.items())
            clauses.append(("bound", ([k[0] for k, _ in ordered], ordered)))
        else:
            clauses.append(("fast", _Containment(matches.keys())))

    hits = []
    for (s, e) in sorted(head):
        options = [sorted(head[(s, e)])]
        ok = True
        for kind, data in clauses:
            if kind == "fast":
                if not data.contains(s, e):
                    ok = False
                    break
            else:
                starts, ordered = data
                found = set()
                for (ws, we), binds in ordered[: bisect_right(starts, s)]:
                    if we >= e:
                        found |= binds
                if not found:
                    ok = False
                    break
                options.append(sorted(found))
        if not ok:
            continue
        witness = options[0][0]
        if q.conditions:
            witness = None
            for combo in product(*options):
                bound = dict(pair for part in combo for pair in part)
                if _conditions_hold(q.conditions, bound, idx):
                    witness = combo[0]
                    break
            if witness is None:
                continue
        doc_id, start = idx.locate(s)
        base = s - start
        bindings = tuple((label, pos - base) for label, pos in witness)
        hits.append(Hit(doc_id, start, e - base, bindings))
        if len(hits) > limit:
            break

    truncated = len(hits) > limit
    return HitSet(frozenset(hits[:limit]), truncated)


def _attr_array(idx, attr, other):
    # Vocabulary ids are comparable only within one attribute.
    if attr == other:
        return idx.ids[attr]
    cache = idx.memo.setdefault("object_values", {})
    if attr not in cache:
        cache[attr] = np.array(idx.values[attr], dtype=object)
    return cache[attr]


def _execute_vectorised(q, idx, limit, cond_labels):
    """Queries whose condition labels (if any) all sit in the head sequence."""
    S, E, B, labels = match_arrays(q.head, idx, cond_labels)
    keep = np.ones(len(S), dtype=bool)
    col = {label: i for i, label in enumerate(labels)}
    for c in q.conditions:
        left = _attr_array(idx, c.left.attr, c.right.attr)[B[:, col[c.left.label]]]
        right = _attr_array(idx, c.right.attr, c.left.attr)[B[:, col[c.right.label]]]
        same = left == right
        keep &= same if c.op is Op.EQ else ~same
    for w in q.withins:
        if not keep.any():
            break
        if isinstance(w, StructureTag):
            spans = idx.structure_spans(w.name)
        else:
            ws, we, _, _ = match_arrays(w, idx)
            spans = list(zip(ws.tolist(), we.tolist()))
        keep &= _Containment(spans).contains_many(S, E)
    S, E, B = S[keep], E[keep], B[keep]
    # Rows come sorted by (start, end, bindings); the first row of each span
    # is its witness.
    first = np.ones(len(S), dtype=bool)
    first[1:] = (S[1:] != S[:-1]) | (E[1:] != E[:-1])
    S, E, B = S[first], E[first], B[first]
    truncated = len(S) > limit
    hits = []
    for s, e, b in zip(S[:limit].tolist(), E[:limit].tolist(), B[:limit].tolist()):
        doc_id, start = idx.locate(s)
        base = s - start
        hits.append(Hit(doc_id, start, e - base, tuple((label, p - base) for label, p in zip(labels, b))))
    return HitSet(frozenset(hits), truncated)


def execute_text(source, idx, limit=None):
    return execute(parse(source), idx, limit)


def execution_accuracy(pred: str, gold: str, idx: CorpusIndex, limit=None) -> int:
    """1 when ``pred`` retrieves exactly the spans ``gold`` retrieves."""
    try:
        gold_q = parse(gold)
    except ParseError as exc:
        raise GoldInvalid(f"gold query does not parse: {exc}") from exc
    try:
        gold_hits = execute(gold_q, idx, limit)
    except ExecutionError as exc:
        raise GoldExecutionFailed(str(exc)) from exc
    try:
        pred_hits = execute(parse(pred), idx, limit)
    except (ParseError, ExecutionError):
        return 0
    if gold_hits.truncated or pred_hits.truncated:
        which = "both" if gold_hits.truncated and pred_hits.truncated else (
            "gold" if gold_hits.truncated else "prediction"
        )
        warnings.warn(
            f"hit limit reached ({which} truncated); execution accuracy is indeterminate and scored 0",
            TruncatedHitsWarning,
            stacklevel=2,
        )
        return 0
    return int(pred_hits.spans() == gold_hits.spans())
