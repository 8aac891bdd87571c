"""Collocations and synonym lexicons: the seed material for generation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..errors import FormatError

GAP_MARK = "X"


@dataclass(frozen=True)
class Word:
    word: str
    pos: str

    def __str__(self):
        return f"{self.word}/{self.pos}"


class _Gap:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "GAP"

    def __str__(self):
        return GAP_MARK

    def __reduce__(self):
        return (_Gap, ())


GAP = _Gap()


@dataclass(frozen=True)
class Collocation:
    items: tuple

    def __post_init__(self):
        items = self.items
        if sum(isinstance(i, Word) for i in items) < 2:
            raise ValueError("a collocation needs at least two words")
        if items[0] is GAP or items[-1] is GAP:
            raise ValueError("a collocation cannot start or end with a gap")
        for a, b in zip(items, items[1:]):
            if a is GAP and b is GAP:
                raise ValueError("adjacent gaps in collocation")

    @property
    def words(self):
        return [i for i in self.items if isinstance(i, Word)]

    def __str__(self):
        return "\t".join(str(i) for i in self.items)


def parse_collocation(line):
    items = []
    for field_ in line.split("\t"):
        field_ = field_.strip()
        if field_ == GAP_MARK:
            items.append(GAP)
            continue
        word, sep, pos = field_.rpartition("/")
        if not sep or not word or not pos:
            raise ValueError(f"bad collocation item {field_!r}; expected word/pos or {GAP_MARK}")
        items.append(Word(word, pos))
    return Collocation(tuple(items))


def load_collocations(path):
    cols = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                cols.append(parse_collocation(line))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
    return cols


class SynonymLexicon(dict):
    """word -> list of synonyms, never listing a word as its own synonym."""

    def __init__(self, entries=()):
        super().__init__()
        for word, syns in dict(entries).items():
            self.add(word, syns)

    def add(self, word, syns):
        clean = [s for s in syns if s and s != word]
        seen = self.setdefault(word, [])
        for s in clean:
            if s not in seen:
                seen.append(s)

    def synonyms(self, word):
        return self.get(word, [])


def load_synonyms(path):
    lex = SynonymLexicon()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if not cols[0]:
                raise FormatError("empty headword", lineno)
            lex.add(cols[0], cols[1:])
    return lex


def extract_collocations_naive(idx, window=3, min_count=1):
    """Frequency-ranked word pairs co-occurring within ``window`` tokens of
    each other inside a sentence. Non-adjacent pairs carry one gap marker.
    """
    if not 1 <= window <= 5:
        raise ValueError("window must be in [1, 5]")
    counts = Counter()
    for span in idx.corpus.spans("s"):
        toks = idx.corpus.docs[span.doc_id][span.start : span.end]
        for i, a in enumerate(toks):
            for j in range(i + 1, min(len(toks), i + window + 1)):
                b = toks[j]
                counts[(a.word, a.pos, j - i > 1, b.word, b.pos)] += 1
    ranked = sorted(
        ((c, key) for key, c in counts.items() if c >= min_count),
        key=lambda x: (-x[0], x[1]),
    )
    out = []
    for _, (w1, p1, gapped, w2, p2) in ranked:
        items = (Word(w1, p1), GAP, Word(w2, p2)) if gapped else (Word(w1, p1), Word(w2, p2))
        out.append(Collocation(items))
    return out
