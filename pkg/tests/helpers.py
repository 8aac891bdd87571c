"""Synthetic corpora and random queries for tests."""

import random

from cqlkit.corpus import AnnotatedCorpus
from cqlkit.cql.nodes import (
    UNBOUNDED,
    And,
    Atom,
    AttrRef,
    Empty,
    GlobalConstraint,
    Not,
    Op,
    Or,
    Quantifier,
    Query,
    SeqExpr,
    StructureTag,
    TokenExpr,
)

LEXICON = {
    "DT": ["the", "a", "this", "every"],
    "JJ": ["old", "red", "small", "new", "good"],
    "NN": ["book", "notebook", "teapot", "cat", "dog", "house", "research", "evening", "table"],
    "NNS": ["books", "cats", "dogs", "students"],
    "VBZ": ["reads", "likes", "sees", "writes"],
    "VBD": ["read", "liked", "saw", "wrote"],
    "IN": ["in", "on", "with", "near"],
    "PRP": ["she", "he", "it", "they"],
    "RB": ["quickly", "often", "never"],
    ".": ["."],
}
LEMMAS = {
    "books": "book", "cats": "cat", "dogs": "dog", "students": "student",
    "reads": "read", "likes": "like", "sees": "see", "writes": "write",
    "liked": "like", "saw": "see", "wrote": "write",
}


def _np(rng, plural=False):
    out = [("DT", rng.choice(LEXICON["DT"]))]
    if rng.random() < 0.4:
        out.append(("JJ", rng.choice(LEXICON["JJ"])))
    tag = "NNS" if plural else "NN"
    out.append((tag, rng.choice(LEXICON[tag])))
    return out


def toy_sentence(rng):
    kind = rng.randrange(3)
    if kind == 0:
        parts = _np(rng) + [("VBZ", rng.choice(LEXICON["VBZ"]))] + _np(rng)
        if rng.random() < 0.5:
            parts += [("IN", rng.choice(LEXICON["IN"]))] + _np(rng)
    elif kind == 1:
        parts = [("PRP", rng.choice(LEXICON["PRP"])), ("VBD", rng.choice(LEXICON["VBD"]))]
        if rng.random() < 0.4:
            parts.append(("RB", rng.choice(LEXICON["RB"])))
        parts += _np(rng, plural=rng.random() < 0.5)
    else:
        parts = _np(rng, plural=True) + [("VBD", rng.choice(LEXICON["VBD"]))]
        if rng.random() < 0.6:
            parts += [("IN", rng.choice(LEXICON["IN"]))] + _np(rng)
    parts.append((".", "."))
    return [(w, t, LEMMAS.get(w, w)) for t, w in parts]


def toy_corpus(seed=0, n_docs=10, sents_per_doc=20):
    rng = random.Random(seed)
    docs = [[toy_sentence(rng) for _ in range(sents_per_doc)] for _ in range(n_docs)]
    return AnnotatedCorpus.from_sentences(docs)


def tiny_random_corpus(rng, max_tokens=200):
    """Small-alphabet corpus so that equalities and regexes hit often."""
    words = ["a", "b", "c", "d", "e"]
    tags = ["NN", "NNS", "VB", "DT"]
    docs = []
    budget = rng.randint(1, max_tokens)
    while budget > 0 and len(docs) < 4:
        sents = []
        for _ in range(rng.randint(1, 4)):
            k = min(budget, rng.randint(1, 9))
            if k <= 0:
                break
            sent = []
            for _ in range(k):
                w = rng.choice(words)
                sent.append((w, rng.choice(tags), rng.choice([w, w.upper()])))
            sents.append(sent)
            budget -= k
        if sents:
            docs.append(sents)
    corpus = AnnotatedCorpus.from_sentences(docs)
    # add a few paragraph spans covering whole documents
    from cqlkit.corpus import StructureSpan

    for d, toks in enumerate(corpus.docs):
        if toks and rng.random() < 0.5:
            corpus.structures.append(StructureSpan("p", d, 0, len(toks)))
    return corpus


_VALUES = {
    "word": ["a", "b", "c", "[ab]", "a|e", ".", "d"],
    "pos": ["NN", "NN.*", "VB", "DT", "N.*", "N"],
    "lemma": ["a", "A", "[a-c]", "B|b"],
}


def random_atom(rng):
    attr = rng.choice(list(_VALUES))
    op = Op.EQ if rng.random() < 0.75 else Op.NEQ
    return Atom(attr, op, rng.choice(_VALUES[attr]))


def random_constraint(rng, depth=0):
    r = rng.random()
    if depth >= 2 or r < 0.5:
        return random_atom(rng)
    if r < 0.7:
        return And(tuple(random_constraint(rng, depth + 1) for _ in range(rng.randint(2, 3))))
    if r < 0.9:
        return Or(tuple(random_constraint(rng, depth + 1) for _ in range(rng.randint(2, 3))))
    return Not(random_constraint(rng, depth + 1))


_QUANTS = [
    Quantifier(1, 1), Quantifier(1, 1), Quantifier(1, 1),
    Quantifier(0, 1), Quantifier(0, UNBOUNDED), Quantifier(1, UNBOUNDED),
    Quantifier(0, 2), Quantifier(1, 3), Quantifier(2, 2), Quantifier(2, UNBOUNDED),
]


def random_token(rng, label=None):
    c = Empty() if rng.random() < 0.3 else random_constraint(rng)
    quant = Quantifier(1, 1) if label else rng.choice(_QUANTS)
    return TokenExpr(c, quant, label)


def random_seq(rng, labels):
    elements = []
    for _ in range(rng.randint(1, 3)):
        label = labels.pop(0) if labels and rng.random() < 0.5 else None
        elements.append(random_token(rng, label))
    return SeqExpr(tuple(elements))


def random_query(rng, kind=None):
    """A random query of the given class ("simple", "within", "condition")."""
    kind = kind or rng.choice(["simple", "within", "condition"])
    pool = ["A", "B", "1", "2", "C"]
    head = random_seq(rng, pool if kind == "condition" else [])
    withins = []
    if kind in ("within", "condition") and (kind == "within" or rng.random() < 0.6):
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.5:
                withins.append(StructureTag(rng.choice(["s", "doc", "p"])))
            else:
                withins.append(random_seq(rng, pool if kind == "condition" else []))
    conditions = []
    if kind == "condition":
        labels = [t.label for s in [head, *[w for w in withins if isinstance(w, SeqExpr)]] for t in s.elements if t.label]
        if len(labels) < 2:
            # force two labelled tokens into the head
            extra = [l for l in ["X1", "X2"]]
            head = SeqExpr(head.elements + tuple(random_token(rng, l) for l in extra))
            labels += extra
        for _ in range(rng.randint(1, 2)):
            left, right = rng.sample(labels, 2)
            attr_l = rng.choice(["word", "pos", "lemma"])
            attr_r = attr_l if rng.random() < 0.8 else rng.choice(["word", "pos", "lemma"])
            op = Op.EQ if rng.random() < 0.7 else Op.NEQ
            conditions.append(GlobalConstraint(AttrRef(left, attr_l), op, AttrRef(right, attr_r)))
    return Query(head, tuple(withins), tuple(conditions))
