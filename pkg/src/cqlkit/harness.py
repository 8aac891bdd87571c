"""Dataset I/O, evaluation runs and dataset statistics."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .cql.nodes import QueryClass, classify, iter_atoms
from .cql.parser import parse
from .cql.signature import node_count, tree_depth
from .errors import (
    DanglingPredictionId,
    DuplicateId,
    GoldExecutionFailed,
    GoldInvalid,
    ParseError,
    SchemaError,
)
from .metrics import DEFAULT_WEIGHTS, MetricWeights, score_record

log = logging.getLogger(__name__)

CLASSES = (QueryClass.SIMPLE, QueryClass.WITHIN, QueryClass.CONDITION)
METRIC_COLUMNS = ("em", "va", "ex", "cqlbleu")
STAT_FIELDS = ("nl_chars", "cql_chars", "token_exprs", "ast_depth", "ast_nodes", "atoms")


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    nl: str
    cql: str
    cls: QueryClass
    lang: str = "other"


@dataclass(frozen=True)
class PredictionRecord:
    id: str
    pred: str


def _read_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(obj, dict):
                raise SchemaError("expected a JSON object", lineno)
            yield lineno, obj


def _field(obj, name, lineno, ident=None):
    value = obj.get(name)
    if not isinstance(value, str):
        who = f" (record {ident!r})" if ident else ""
        raise SchemaError(f"field {name!r} must be a string{who}", lineno)
    return value


def load_dataset(path):
    records = []
    seen = set()
    for lineno, obj in _read_jsonl(path):
        rid = _field(obj, "id", lineno)
        nl = _field(obj, "nl", lineno, rid)
        cql = _field(obj, "cql", lineno, rid)
        cls_name = _field(obj, "class", lineno, rid)
        lang = obj.get("lang", "other")
        if not isinstance(lang, str):
            raise SchemaError(f"field 'lang' must be a string (record {rid!r})", lineno)
        try:
            cls = QueryClass(cls_name)
        except ValueError:
            raise SchemaError(f"unknown class {cls_name!r} (record {rid!r})", lineno) from None
        try:
            q = parse(cql)
        except ParseError as exc:
            raise SchemaError(f"record {rid!r}: cql does not parse: {exc}", lineno) from None
        if classify(q) is not cls:
            raise SchemaError(
                f"record {rid!r}: declared class {cls.value!r} but query is {classify(q).value!r}",
                lineno,
            )
        if rid in seen:
            raise DuplicateId(f"duplicate id {rid!r}", lineno)
        seen.add(rid)
        records.append(DatasetRecord(rid, nl, cql, cls, lang))
    return records


def load_predictions(path, gold=None):
    """Read predictions; with ``gold`` given, ids absent from it are rejected."""
    known = None if gold is None else {r.id for r in gold}
    preds = []
    seen = set()
    for lineno, obj in _read_jsonl(path):
        rid = _field(obj, "id", lineno)
        pred = _field(obj, "pred", lineno, rid)
        if rid in seen:
            raise DuplicateId(f"duplicate prediction id {rid!r}", lineno)
        if known is not None and rid not in known:
            raise DanglingPredictionId(f"prediction id {rid!r} has no gold record", lineno)
        seen.add(rid)
        preds.append(PredictionRecord(rid, pred))
    return preds


def pct(fraction):
    """Fraction -> percentage rounded half-up to two decimals."""
    if fraction is None:
        return None
    return float((Decimal(repr(fraction)) * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _mean(values):
    return sum(values) / len(values) if values else None


@dataclass
class MetricReport:
    rows: dict  # class value or "overall" -> {"n": int, metric: fraction}
    with_ex: bool
    excluded: list = field(default_factory=list)  # (id, reason)
    missing: list = field(default_factory=list)  # gold ids without a prediction
    records: list = field(default_factory=list)  # (id, class, MetricScore)

    def percent(self, row, metric):
        return pct(self.rows[row][metric])

    def columns(self):
        return [c for c in METRIC_COLUMNS if c != "ex" or self.with_ex]

    def to_text(self):
        cols = self.columns()
        head = f"{'class':<10} {'n':>6} " + " ".join(f"{c.upper():>8}" for c in cols)
        lines = [head, "-" * len(head)]
        for key in [c.value for c in CLASSES] + ["overall"]:
            row = self.rows[key]
            cells = []
            for c in cols:
                v = pct(row[c])
                cells.append(f"{'-':>8}" if v is None else f"{v:>8.2f}")
            lines.append(f"{key:<10} {row['n']:>6} " + " ".join(cells))
        if self.excluded:
            lines.append(f"excluded (invalid gold): {len(self.excluded)}")
        if self.missing:
            lines.append(f"missing predictions (scored as empty): {len(self.missing)}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        rows = {}
        for key, row in self.rows.items():
            rows[key] = {
                "n": row["n"],
                "fractions": {m: row[m] for m in (*self.columns(), "bleu", "ts")},
                "percent": {m: pct(row[m]) for m in self.columns()},
            }
        return {
            "columns": self.columns(),
            "rows": rows,
            "excluded": [{"id": i, "reason": r} for i, r in self.excluded],
            "missing": list(self.missing),
            "records": [{"id": i, "class": c.value, **s.as_dict()} for i, c, s in self.records],
        }


def _aggregate(scored, with_ex):
    metrics = ("em", "va", "ex", "bleu", "ts", "cqlbleu")

    def row(items):
        out = {"n": len(items)}
        for m in metrics:
            if m == "ex" and not with_ex:
                out[m] = None
                continue
            out[m] = _mean([getattr(s, m) for _, _, s in items])
        return out

    rows = {c.value: row([x for x in scored if x[1] is c]) for c in CLASSES}
    rows["overall"] = row(scored)
    return rows


def evaluate(gold, preds, corpus=None, w: MetricWeights = DEFAULT_WEIGHTS, limit=None, jobs=1):
    """Score predictions against gold records.

    Gold records without a prediction are scored as an empty prediction.
    Records whose gold query fails to parse or execute are left out of the
    aggregates and listed in ``report.excluded``.
    """
    by_id = {p.id: p.pred for p in preds}
    known = {g.id for g in gold}
    dangling = sorted(set(by_id) - known)
    if dangling:
        raise DanglingPredictionId(f"prediction ids without gold: {', '.join(dangling[:5])}")
    missing = [g.id for g in gold if g.id not in by_id]

    def work(g):
        try:
            return g, score_record(by_id.get(g.id, ""), g.cql, corpus, w, limit), None
        except (GoldInvalid, GoldExecutionFailed) as exc:
            return g, None, f"{type(exc).__name__}: {exc}"

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, gold))
    else:
        results = [work(g) for g in gold]

    scored, excluded = [], []
    for g, score, err in results:
        if err is not None:
            excluded.append((g.id, err))
        else:
            scored.append((g.id, g.cls, score))
    if excluded:
        log.warning("%d record(s) excluded because the gold query is invalid", len(excluded))
    with_ex = corpus is not None
    return MetricReport(_aggregate(scored, with_ex), with_ex, excluded, missing, scored)


@dataclass
class DatasetStats:
    rows: dict  # class value or "overall" -> {"n", "unparseable", field: average or None}

    def to_json(self):
        return {"fields": list(STAT_FIELDS), "rows": self.rows}

    def to_text(self):
        head = f"{'class':<10} {'n':>6} {'bad':>4} " + " ".join(f"{f:>12}" for f in STAT_FIELDS)
        lines = [head, "-" * len(head)]
        for key, row in self.rows.items():
            cells = " ".join(
                f"{'-':>12}" if row[f] is None else f"{row[f]:>12.2f}" for f in STAT_FIELDS
            )
            lines.append(f"{key:<10} {row['n']:>6} {row['unparseable']:>4} {cells}")
        return "\n".join(lines) + "\n"


def query_stats(q):
    return {
        "token_exprs": sum(1 for _ in q.token_exprs()),
        "ast_depth": tree_depth(q),
        "ast_nodes": node_count(q),
        "atoms": sum(1 for t in q.token_exprs() for _ in iter_atoms(t.constraint)),
    }


def compute_stats(gold):
    """Per-class averages over parseable records; empty classes report None."""
    per_class = {c.value: [] for c in CLASSES}
    bad = {c.value: 0 for c in CLASSES}
    for rec in gold:
        key = rec.cls.value
        try:
            q = parse(rec.cql)
        except ParseError:
            bad[key] += 1
            continue
        per_class[key].append({"nl_chars": len(rec.nl), "cql_chars": len(rec.cql), **query_stats(q)})

    def row(items, unparseable):
        out = {"n": len(items) + unparseable, "unparseable": unparseable}
        for f in STAT_FIELDS:
            out[f] = _mean([x[f] for x in items])
        return out

    rows = {k: row(v, bad[k]) for k, v in per_class.items()}
    rows["overall"] = row([x for v in per_class.values() for x in v], sum(bad.values()))
    return DatasetStats(rows)
