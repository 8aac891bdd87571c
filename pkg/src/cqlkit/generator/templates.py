"""Template-based synthesis of simple, within and condition queries."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..cql.nodes import (
    And,
    Atom,
    AttrRef,
    Empty,
    GlobalConstraint,
    Op,
    Or,
    Quantifier,
    Query,
    QueryClass,
    SeqExpr,
    StructureTag,
    TokenExpr,
    classify,
)
from ..cql.printer import canonical_print, format_quant
from ..errors import NoEligiblePair
from .resources import GAP, Word

FORMS = ("W", "P", "WAP", "WOP", "WW", "WWP")
STRUCTURES = ("s", "p", "doc")


@dataclass
class GenConfig:
    seed: int = 0
    mix: dict = field(
        default_factory=lambda: {
            QueryClass.SIMPLE: 0.6,
            QueryClass.WITHIN: 0.25,
            QueryClass.CONDITION: 0.15,
        }
    )
    null_token_prob: float = 0.5
    max_min: int = 4
    max_width: int = 7
    min_freq: int = 6
    require_hits: bool = False
    nested_prob: float = 0.2
    structure_form_prob: float = 0.5
    structure_names: tuple = STRUCTURES
    cond_max_gap: int = 7

    def __post_init__(self):
        self.mix = {QueryClass(k) if isinstance(k, str) else k: float(v) for k, v in self.mix.items()}
        if any(v < 0 for v in self.mix.values()) or abs(sum(self.mix.values()) - 1.0) > 1e-9:
            raise ValueError(f"class mix must be non-negative and sum to 1, got {self.mix}")
        for name in ("null_token_prob", "nested_prob", "structure_form_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.max_min < 0 or self.max_width < 1 or self.min_freq < 0:
            raise ValueError("invalid quantifier bounds or frequency threshold")


@dataclass(frozen=True)
class GenRecord:
    cql: str
    cls: QueryClass
    provenance: dict = field(compare=False, hash=False)


@dataclass(frozen=True)
class Abandoned:
    reason: str


def _lit(s):
    return re.escape(s)


def build_form(form, word, pos, synonym=None):
    w = Atom("word", Op.EQ, _lit(word))
    p = Atom("pos", Op.EQ, _lit(pos))
    if form == "W":
        return w
    if form == "P":
        return p
    if form == "WAP":
        return And((w, p))
    if form == "WOP":
        return Or((w, p))
    w2 = Atom("word", Op.EQ, _lit(synonym))
    if form == "WW":
        return Or((w, w2))
    if form == "WWP":
        return And((Or((w, w2)), p))
    raise ValueError(f"unknown mutation form {form!r}")


def choose_mutation(word, pos, syn, rng, form=None):
    """Pick a mutation form (uniformly unless ``form`` is forced) and build it.

    Returns ``(form_used, constraint)``; WW and WWP fall back to W when the
    lexicon has no synonym for ``word``.
    """
    if form is None:
        form = rng.choice(FORMS)
    synonym = None
    if form in ("WW", "WWP"):
        options = syn.synonyms(word) if syn is not None else []
        if not options:
            form = "W"
        else:
            synonym = rng.choice(options)
    return form, build_form(form, word, pos, synonym)


def mutate_token(word, pos, syn, rng, form=None):
    return choose_mutation(word, pos, syn, rng, form)[1]


def quantifier_choices(max_min=4, max_width=7):
    out = [Quantifier(0, 1)]
    for m in range(max_min + 1):
        for n in range(m + 1, m + max_width + 1):
            out.append(Quantifier(m, n))
    return out


def null_token(rng, cfg=None, forced=None):
    if forced is None:
        cfg = cfg or GenConfig()
        forced = rng.choice(quantifier_choices(cfg.max_min, cfg.max_width))
    return TokenExpr(Empty(), forced)


def insert_null_token(seq, rng, cfg=None, forced=None):
    """Append an unconstrained token with a random quantifier to ``seq``."""
    elements = tuple(seq.elements) if isinstance(seq, SeqExpr) else tuple(seq or ())
    return SeqExpr(elements + (null_token(rng, cfg, forced),))


def simple_seq(col, idx, cfg, rng, syn=None):
    """Walk a collocation left to right, mutating each word into a token
    constraint and inserting unconstrained tokens.

    Returns ``(SeqExpr, trace)`` or :class:`Abandoned` when a word is rarer
    than ``cfg.min_freq`` in the corpus.
    """
    elements = []
    forms = []
    nulls = []
    items = col.items
    i = 0
    while i < len(items):
        item = items[i]
        if not isinstance(item, Word):
            i += 1
            continue
        if idx.freq.get(item.word, 0) <= cfg.min_freq - 1:
            return Abandoned(f"low frequency word {item.word!r}")
        form, constraint = choose_mutation(item.word, item.pos, syn, rng)
        elements.append(TokenExpr(constraint))
        forms.append(form)
        if i + 1 < len(items) and items[i + 1] is GAP:
            elements.append(null_token(rng, cfg))
            nulls.append(format_quant(elements[-1].quant))
            i += 1
        elif rng.random() < cfg.null_token_prob:
            elements.append(null_token(rng, cfg))
            nulls.append(format_quant(elements[-1].quant))
        i += 1
    trace = {"collocation": str(col), "mutations": forms, "null_tokens": nulls}
    return SeqExpr(tuple(elements)), trace


def _record(q, expected, provenance):
    cls = classify(q)
    assert cls is expected, (cls, expected)
    return GenRecord(canonical_print(q), cls, provenance)


def gen_simple(col, idx, cfg, rng, syn=None):
    out = simple_seq(col, idx, cfg, rng, syn)
    if isinstance(out, Abandoned):
        return out
    seq, trace = out
    return _record(Query(seq), QueryClass.SIMPLE, {"template": "simple", **trace})


def structure_names(idx, cfg):
    present = set(idx.corpus.structure_names())
    names = [n for n in cfg.structure_names if n in present]
    return names or list(cfg.structure_names)


def gen_within(cols, idx, cfg, rng, syn=None, form=None, structure=None):
    """Within-query from one or two collocations.

    ``form`` is ``"subquery"``, ``"structure"`` or ``"nested"``; when None it
    is drawn at random (structure form with ``cfg.structure_form_prob``,
    otherwise subquery form, nested with ``cfg.nested_prob``). Subquery
    forms need two collocations.
    """
    if form is None:
        if len(cols) < 2 or rng.random() < cfg.structure_form_prob:
            form = "structure"
        else:
            form = "nested" if rng.random() < cfg.nested_prob else "subquery"
    pick = lambda: structure if structure is not None else rng.choice(structure_names(idx, cfg))

    first = simple_seq(cols[0], idx, cfg, rng, syn)
    if isinstance(first, Abandoned):
        return first
    a, trace_a = first
    if form == "structure":
        name = pick()
        q = Query(a, (StructureTag(name),))
        return _record(q, QueryClass.WITHIN, {"template": "within", "form": form, "structure": name, "parts": [trace_a]})

    second = simple_seq(cols[1], idx, cfg, rng, syn)
    if isinstance(second, Abandoned):
        return second
    b, trace_b = second
    traces = [trace_a, trace_b]
    if a.max_length() > b.max_length():
        a, b = b, a
        traces.reverse()
    withins = (b,)
    prov = {"template": "within", "form": form, "parts": traces}
    if form == "nested":
        name = pick()
        withins = (b, StructureTag(name))
        prov["structure"] = name
    return _record(Query(a, withins), QueryClass.WITHIN, prov)


def _sentence_pairs(tokens, max_gap):
    pairs = []
    for i, a in enumerate(tokens):
        for j in range(i + 1, min(len(tokens), i + max_gap + 2)):
            b = tokens[j]
            attrs = [attr for attr in ("pos", "word") if a.get(attr) == b.get(attr)]
            if attrs:
                pairs.append((i, j, attrs))
    return pairs


def eligible_sentences(idx, max_gap):
    """Sentence spans holding at least one token pair equal on pos or word."""
    memo = idx.memo.setdefault("eligible_sentences", {})
    if max_gap not in memo:
        spans = []
        for span in idx.corpus.spans("s"):
            toks = idx.corpus.docs[span.doc_id][span.start : span.end]
            if _sentence_pairs(toks, max_gap):
                spans.append(span)
        memo[max_gap] = spans
    return memo[max_gap]


def condition_query(gap, attr, labels=("A", "B"), within="s"):
    """``A:[] <gap> B:[] within <s/> :: A.attr = B.attr``."""
    elements = [TokenExpr(Empty(), label=labels[0])]
    if gap <= 1:
        elements.append(TokenExpr(Empty(), Quantifier(0, 1)))
    else:
        elements.append(TokenExpr(Empty(), Quantifier(gap, gap)))
    elements.append(TokenExpr(Empty(), label=labels[1]))
    withins = (StructureTag(within),) if within else ()
    cond = GlobalConstraint(AttrRef(labels[0], attr), Op.EQ, AttrRef(labels[1], attr))
    return Query(SeqExpr(tuple(elements)), withins, (cond,))


def gen_condition(idx, cfg, rng):
    spans = eligible_sentences(idx, cfg.cond_max_gap)
    if not spans:
        raise NoEligiblePair("no sentence contains two tokens sharing pos or word")
    span = rng.choice(spans)
    toks = idx.corpus.docs[span.doc_id][span.start : span.end]
    i, j, attrs = rng.choice(_sentence_pairs(toks, cfg.cond_max_gap))
    attr = rng.choice(attrs)
    q = condition_query(j - i - 1, attr)
    prov = {
        "template": "condition",
        "doc": span.doc_id,
        "pair": [span.start + i, span.start + j],
        "attr": attr,
        "value": toks[i].get(attr),
    }
    return _record(q, QueryClass.CONDITION, prov)
