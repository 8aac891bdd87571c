"""Dataset-level generation: class schedule, retries, grounding, output."""

from __future__ import annotations

import json
import random

from ..corpus.engine import execute
from ..cql.nodes import QueryClass
from ..cql.parser import parse
from ..errors import ExhaustedInputs, NoEligiblePair
from .templates import Abandoned, GenConfig, gen_condition, gen_simple, gen_within

CLASS_ORDER = (QueryClass.SIMPLE, QueryClass.WITHIN, QueryClass.CONDITION)


def class_counts(n, mix):
    """Split ``n`` records by ``mix`` using largest remainders (ties by class order)."""
    quotas = [(mix.get(c, 0.0) * n, i, c) for i, c in enumerate(CLASS_ORDER)]
    counts = {c: int(q) for q, _, c in quotas}
    rest = n - sum(counts.values())
    for _, _, c in sorted(quotas, key=lambda x: (-(x[0] - int(x[0])), x[1]))[:rest]:
        counts[c] += 1
    return counts


def _attempt(cls, idx, cols, syn, cfg, rng):
    if cls is QueryClass.SIMPLE:
        return gen_simple(cols[rng.randrange(len(cols))], idx, cfg, rng, syn)
    if cls is QueryClass.WITHIN:
        if len(cols) >= 2:
            i, j = rng.sample(range(len(cols)), 2)
            return gen_within((cols[i], cols[j]), idx, cfg, rng, syn)
        return gen_within((cols[0],), idx, cfg, rng, syn, form="structure")
    return gen_condition(idx, cfg, rng)


def generate_dataset(idx, cols, syn, n, cfg: GenConfig):
    """Generate exactly ``n`` records with the class proportions of ``cfg.mix``.

    Abandoned attempts (and, with ``cfg.require_hits``, zero-hit queries) are
    retried with fresh draws; more than ``100 * n`` attempts in total raises
    :class:`ExhaustedInputs`. The output is a pure function of the inputs and
    ``cfg.seed``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(cfg.seed)
    counts = class_counts(n, cfg.mix)
    if not cols and (counts[QueryClass.SIMPLE] or counts[QueryClass.WITHIN]):
        raise ExhaustedInputs("simple and within queries need at least one collocation")
    schedule = [c for c in CLASS_ORDER for _ in range(counts[c])]
    rng.shuffle(schedule)

    budget = 100 * n
    attempts = 0
    records = []
    for cls in schedule:
        while True:
            attempts += 1
            if attempts > budget:
                raise ExhaustedInputs(
                    f"gave up after {budget} attempts with {len(records)}/{n} records generated"
                )
            try:
                rec = _attempt(cls, idx, cols, syn, cfg, rng)
            except NoEligiblePair as exc:
                raise ExhaustedInputs(f"cannot generate condition queries: {exc}") from exc
            if isinstance(rec, Abandoned):
                continue
            if cfg.require_hits and not len(execute(parse(rec.cql), idx, limit=1)):
                continue
            records.append(rec)
            break
    return records


def record_dicts(records, lang="en", prefix="gen"):
    width = max(6, len(str(len(records))))
    for i, rec in enumerate(records, start=1):
        yield {
            "id": f"{prefix}-{i:0{width}d}",
            "nl": "",
            "cql": rec.cql,
            "class": rec.cls.value,
            "lang": lang,
            "provenance": rec.provenance,
        }


def write_jsonl(records, fh, lang="en"):
    for d in record_dicts(records, lang):
        fh.write(json.dumps(d, ensure_ascii=False, sort_keys=False) + "\n")
