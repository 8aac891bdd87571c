"""Brute-force reference executor.

Enumerates every (document, start, end) span, every quantifier decomposition
and every label binding explicitly, evaluating constraints token by token on
the raw corpus. It shares no code with the indexed engine and exists to
check it.
"""

import re
from itertools import product

from ..cql.nodes import And, Atom, Empty, Not, Op, Or, StructureTag, query_attrs
from ..errors import CorpusTooLarge, RegexError, UnknownAttribute
from .engine import Hit, HitSet

MAX_TOKENS = 10_000
_ATTRS = ("word", "pos", "lemma")


def _holds(c, tok):
    if isinstance(c, Empty):
        return True
    if isinstance(c, Atom):
        try:
            matched = re.fullmatch(c.value, getattr(tok, c.attr)) is not None
        except re.error as exc:
            raise RegexError(str(exc)) from None
        return matched if c.op is Op.EQ else not matched
    if isinstance(c, Not):
        return not _holds(c.child, tok)
    if isinstance(c, And):
        return all(_holds(x, tok) for x in c.children)
    if isinstance(c, Or):
        return any(_holds(x, tok) for x in c.children)
    raise TypeError(c)


def _decompositions(elements, tokens, p, end, bound):
    """Yield binding dicts for every way ``elements`` covers tokens[p:end]."""
    if not elements:
        if p == end:
            yield dict(bound)
        return
    t, rest = elements[0], elements[1:]
    r = 0
    while True:
        if r >= t.quant.min:
            if t.label is not None and t.quant.is_one:
                bound[t.label] = p
            yield from _decompositions(rest, tokens, p + r, end, bound)
            bound.pop(t.label, None)
        if r >= t.quant.max or p + r >= end:
            break
        if not _holds(t.constraint, tokens[p + r]):
            break
        r += 1


def _span_bindings(seq, tokens, s, e):
    return list(_decompositions(seq.elements, tokens, s, e, {}))


def brute_force_execute(q, corpus, limit=None):
    if corpus.n_tokens > MAX_TOKENS:
        raise CorpusTooLarge(f"brute force is limited to {MAX_TOKENS} tokens")
    for attr in query_attrs(q):
        if attr not in _ATTRS:
            raise UnknownAttribute(attr)

    found = []
    for d, tokens in enumerate(corpus.docs):
        n = len(tokens)
        every_span = [(s, e) for s in range(n) for e in range(s + 1, n + 1)]
        clause_matches = []
        for w in q.withins:
            if isinstance(w, StructureTag):
                spans = [(x.start, x.end) for x in corpus.structures if x.doc_id == d and x.name == w.name]
                clause_matches.append([(s, e, [{}]) for s, e in spans])
            else:
                rows = []
                for s, e in every_span:
                    b = _span_bindings(w, tokens, s, e)
                    if b:
                        rows.append((s, e, b))
                clause_matches.append(rows)

        for s, e in every_span:
            head = _span_bindings(q.head, tokens, s, e)
            if not head:
                continue
            options = [head]
            for rows in clause_matches:
                opts = [b for ws, we, bs in rows if ws <= s and e <= we for b in bs]
                if not opts:
                    break
                options.append(opts)
            else:
                for combo in product(*options):
                    bound = {}
                    for part in combo:
                        bound.update(part)
                    if all(
                        (tokens[bound[c.left.label]].get(c.left.attr) == tokens[bound[c.right.label]].get(c.right.attr))
                        == (c.op is Op.EQ)
                        for c in q.conditions
                    ):
                        keep = q.condition_labels()
                        bindings = tuple(sorted((k, v) for k, v in combo[0].items() if k in keep))
                        found.append(Hit(d, s, e, bindings))
                        break

    found.sort()
    if limit is not None and len(found) > limit:
        return HitSet(frozenset(found[:limit]), True)
    return HitSet(frozenset(found), False)
