"""Attribute-value index over an annotated corpus."""

from __future__ import annotations

import re
from collections import Counter

import numpy as np

from ..cql.nodes import And, Atom, Empty, Not, Op, Or
from ..errors import RegexError, UnknownAttribute
from .model import AnnotatedCorpus

ATTRS = ("word", "pos", "lemma")


class CorpusIndex:
    """Immutable index over a corpus.

    Tokens are addressed by a global position; ``doc_start[d]`` is the
    position of the first token of document ``d``. Per attribute, each token
    position holds an id into that attribute's vocabulary, which is what
    makes regex evaluation cheap: a value pattern is matched once per
    distinct value rather than once per token.
    """

    def __init__(self, corpus: AnnotatedCorpus):
        self.corpus = corpus
        self.attrs = ATTRS
        lengths = [len(d) for d in corpus.docs]
        self.doc_start = np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)
        self.n = int(self.doc_start[-1])
        self.doc_of = np.repeat(np.arange(len(lengths), dtype=np.int64), lengths)
        # exclusive end of the document containing each position
        self.doc_end = self.doc_start[1:][self.doc_of] if self.n else np.zeros(0, np.int64)

        self.values = {}  # attr -> list of str, by position
        self.vocab = {}  # attr -> list of distinct values (sorted)
        self.ids = {}  # attr -> np.ndarray of vocab ids, by position
        self.postings = {}  # (attr, value) -> list of (doc_id, offset)
        for attr in ATTRS:
            vals = [t.get(attr) for doc in corpus.docs for t in doc]
            vocab = sorted(set(vals))
            lookup = {v: i for i, v in enumerate(vocab)}
            self.values[attr] = vals
            self.vocab[attr] = vocab
            self.ids[attr] = np.fromiter((lookup[v] for v in vals), dtype=np.int64, count=len(vals))
        for d, doc in enumerate(corpus.docs):
            for off, tok in enumerate(doc):
                for attr in ATTRS:
                    self.postings.setdefault((attr, tok.get(attr)), []).append((d, off))
        self.freq = Counter(self.values["word"])
        self._mask_cache = {}
        self._struct_cache = {}
        # derived data computed on demand by other modules
        self.memo = {}

    def __len__(self):
        return self.n

    def locate(self, pos):
        """Global position -> (doc_id, offset)."""
        d = int(self.doc_of[pos])
        return d, int(pos - self.doc_start[d])

    def global_pos(self, doc_id, offset):
        return int(self.doc_start[doc_id]) + offset

    # constraint evaluation ----------------------------------------------

    def check_attr(self, attr):
        if attr not in self.values:
            raise UnknownAttribute(f"attribute {attr!r} is not annotated in this corpus")

    def atom_mask(self, atom: Atom):
        key = (atom.attr, atom.value)
        mask = self._mask_cache.get(key)
        if mask is None:
            self.check_attr(atom.attr)
            try:
                rx = re.compile(atom.value)
            except re.error as exc:
                raise RegexError(f"invalid regular expression {atom.value!r}: {exc}") from None
            vocab = self.vocab[atom.attr]
            hits = np.fromiter((rx.fullmatch(v) is not None for v in vocab), dtype=bool, count=len(vocab))
            mask = hits[self.ids[atom.attr]] if self.n else np.zeros(0, bool)
            self._mask_cache[key] = mask
        return mask if atom.op is Op.EQ else ~mask

    def constraint_mask(self, c):
        if isinstance(c, Empty):
            return np.ones(self.n, dtype=bool)
        if isinstance(c, Atom):
            return self.atom_mask(c)
        if isinstance(c, Not):
            return ~self.constraint_mask(c.child)
        if isinstance(c, And):
            out = self.constraint_mask(c.children[0]).copy()
            for child in c.children[1:]:
                out &= self.constraint_mask(child)
            return out
        if isinstance(c, Or):
            out = self.constraint_mask(c.children[0]).copy()
            for child in c.children[1:]:
                out |= self.constraint_mask(child)
            return out
        raise TypeError(f"not a constraint: {c!r}")

    def run_lengths(self, mask):
        """Number of consecutive matching tokens starting at each position,
        stopping at document boundaries."""
        if not self.n:
            return np.zeros(0, np.int64)
        idx = np.arange(self.n, dtype=np.int64)
        breaks = np.where(mask, self.n, idx)
        next_break = np.minimum.accumulate(breaks[::-1])[::-1]
        return np.minimum(next_break, self.doc_end) - idx

    def structure_spans(self, name):
        """Global (start, end) spans of a structure, sorted by start."""
        spans = self._struct_cache.get(name)
        if spans is None:
            spans = sorted(
                (self.global_pos(s.doc_id, s.start), self.global_pos(s.doc_id, s.end))
                for s in self.corpus.structures
                if s.name == name
            )
            self._struct_cache[name] = spans
        return spans


def build_index(corpus: AnnotatedCorpus) -> CorpusIndex:
    return CorpusIndex(corpus)
