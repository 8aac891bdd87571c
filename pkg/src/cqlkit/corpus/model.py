"""Annotated corpus data model and vertical-file ingestion."""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import Optional

from ..errors import FormatError


@dataclass(frozen=True)
class AnnToken:
    word: str
    pos: str
    lemma: Optional[str] = None

    def __post_init__(self):
        if not self.word or not self.pos:
            raise ValueError("word and pos must be non-empty")
        if self.lemma is None:
            object.__setattr__(self, "lemma", self.word)

    def get(self, attr):
        return getattr(self, attr)


@dataclass(frozen=True)
class StructureSpan:
    name: str
    doc_id: int
    start: int
    end: int


@dataclass
class AnnotatedCorpus:
    docs: list = field(default_factory=list)  # list of lists of AnnToken
    structures: list = field(default_factory=list)
    doc_names: list = field(default_factory=list)

    @property
    def n_tokens(self):
        return sum(len(d) for d in self.docs)

    def spans(self, name):
        return [s for s in self.structures if s.name == name]

    def structure_names(self):
        return sorted({s.name for s in self.structures})

    @classmethod
    def from_sentences(cls, docs):
        """Build a corpus from ``[[sentence, ...], ...]`` where a sentence is a
        list of ``(word, pos)`` or ``(word, pos, lemma)`` tuples."""
        corpus = cls()
        for d, sentences in enumerate(docs):
            tokens = []
            for sent in sentences:
                start = len(tokens)
                tokens.extend(AnnToken(*t) for t in sent)
                corpus.structures.append(StructureSpan("s", d, start, len(tokens)))
            corpus.docs.append(tokens)
            corpus.doc_names.append(str(d))
            if tokens:
                corpus.structures.append(StructureSpan("doc", d, 0, len(tokens)))
        return corpus


_OPEN = re.compile(r"^<([A-Za-z_][\w-]*)(\s[^>]*)?>$")
_CLOSE = re.compile(r"^</([A-Za-z_][\w-]*)>$")
_DOC_ID = re.compile(r"""\bid\s*=\s*["']([^"']*)["']""")


def ingest_vertical(stream):
    """Read a vertical corpus from a text or byte stream (or a path).

    Structure lines (``<doc id="...">``, ``<s>``, ``</s>``, ``</doc>``, and
    other ``<name>``/``</name>`` pairs such as ``<p>``) stand alone on a line;
    token lines are ``word<TAB>pos[<TAB>lemma]``; ``#`` lines are comments.
    """
    if isinstance(stream, (str, bytes)) or hasattr(stream, "__fspath__"):
        with open(stream, "rb") as fh:
            return ingest_vertical(fh)
    data = stream.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"input is not valid UTF-8: {exc}") from None

    corpus = AnnotatedCorpus()
    tokens = None  # tokens of the open document
    open_tags = []  # stack of (name, start offset, line)
    for lineno, raw in enumerate(io.StringIO(data), start=1):
        line = raw.rstrip("\r\n")
        if line.startswith("#"):
            continue
        if not line.strip():
            if any(name == "s" for name, _, _ in open_tags):
                raise FormatError("blank line inside a sentence", lineno)
            continue
        stripped = line.strip()
        m = _OPEN.match(stripped)
        if m and not stripped.endswith("/>"):
            name = m.group(1)
            if name == "doc":
                if tokens is not None:
                    raise FormatError("nested <doc>", lineno)
                tokens = []
                idm = _DOC_ID.search(m.group(2) or "")
                corpus.doc_names.append(idm.group(1) if idm else str(len(corpus.docs)))
                open_tags.append(("doc", 0, lineno))
            else:
                if tokens is None:
                    raise FormatError(f"<{name}> outside a document", lineno)
                if any(n == name for n, _, _ in open_tags):
                    raise FormatError(f"nested <{name}>", lineno)
                open_tags.append((name, len(tokens), lineno))
            continue
        m = _CLOSE.match(stripped)
        if m:
            name = m.group(1)
            if not open_tags or open_tags[-1][0] != name:
                raise FormatError(f"</{name}> without matching <{name}>", lineno)
            _, start, _ = open_tags.pop()
            doc_id = len(corpus.docs)
            if name == "doc":
                if not tokens:
                    raise FormatError("empty document", lineno)
                corpus.structures.append(StructureSpan("doc", doc_id, 0, len(tokens)))
                corpus.docs.append(tokens)
                tokens = None
            else:
                if start == len(tokens):
                    kind = "sentence" if name == "s" else f"<{name}> element"
                    raise FormatError(f"empty {kind}", lineno)
                corpus.structures.append(StructureSpan(name, doc_id, start, len(tokens)))
            continue
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise FormatError(f"expected 2 or 3 tab-separated columns, got {len(cols)}", lineno)
        if tokens is None or not any(n == "s" for n, _, _ in open_tags):
            raise FormatError("token outside a sentence", lineno)
        word, pos = cols[0], cols[1]
        lemma = cols[2] if len(cols) == 3 and cols[2] else None
        if not word or not pos:
            raise FormatError("empty word or pos column", lineno)
        tokens.append(AnnToken(word, pos, lemma))
    if open_tags:
        name, _, lineno = open_tags[-1]
        raise FormatError(f"unclosed <{name}> opened here", lineno)
    corpus.structures.sort(key=lambda s: (s.doc_id, s.start, s.name))
    return corpus


def write_vertical(corpus, fh):
    """Serialise ``corpus`` (doc and s structures only) as a vertical file."""
    for d, tokens in enumerate(corpus.docs):
        name = corpus.doc_names[d] if d < len(corpus.doc_names) else str(d)
        fh.write(f'<doc id="{name}">\n')
        for span in corpus.spans("s"):
            if span.doc_id != d:
                continue
            fh.write("<s>\n")
            for t in tokens[span.start : span.end]:
                fh.write(f"{t.word}\t{t.pos}\t{t.lemma}\n")
            fh.write("</s>\n")
        fh.write("</doc>\n")
