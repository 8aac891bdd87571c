"""Tokenizer for the CQL dialect.

The lexer never fails: anything it cannot recognise becomes an ``ERROR``
token and lexing resumes at the next character.
"""

from dataclasses import dataclass
from enum import Enum


class Kind(Enum):
    LBRACKET = "["
    RBRACKET = "]"
    LPAREN = "("
    RPAREN = ")"
    AND = "&"
    OR = "|"
    NOT = "!"
    EQ = "="
    NEQ = "!="
    STRING_LITERAL = "string"
    IDENT = "identifier"
    LABEL_SEP = ":"
    DOT = "."
    WITHIN_KW = "within"
    COND_SEP = "::"
    QUANT_QMARK = "?"
    QUANT_STAR = "*"
    QUANT_PLUS = "+"
    LBRACE = "{"
    RBRACE = "}"
    COMMA = ","
    NUMBER = "number"
    STRUCT_OPEN = "<"
    STRUCT_SELFCLOSE = "/>"
    ERROR = "error"


@dataclass(frozen=True)
class CqlToken:
    kind: Kind
    text: str
    span: tuple  # (start, end) character offsets into the source

    @property
    def value(self):
        """Decoded content of a string literal (quotes stripped).

        A backslash before either quote character yields the bare quote;
        every other backslash pair is kept verbatim since the value is a
        regular expression.
        """
        if self.kind is not Kind.STRING_LITERAL:
            return self.text
        return decode_literal(self.text[1:-1])


_TWO_CHAR = {
    "!=": Kind.NEQ,
    "::": Kind.COND_SEP,
    "/>": Kind.STRUCT_SELFCLOSE,
}

_ONE_CHAR = {
    "[": Kind.LBRACKET,
    "]": Kind.RBRACKET,
    "(": Kind.LPAREN,
    ")": Kind.RPAREN,
    "&": Kind.AND,
    "|": Kind.OR,
    "!": Kind.NOT,
    "=": Kind.EQ,
    ":": Kind.LABEL_SEP,
    ".": Kind.DOT,
    "?": Kind.QUANT_QMARK,
    "*": Kind.QUANT_STAR,
    "+": Kind.QUANT_PLUS,
    "{": Kind.LBRACE,
    "}": Kind.RBRACE,
    ",": Kind.COMMA,
    "<": Kind.STRUCT_OPEN,
}


def _is_ident_start(ch):
    return ch == "_" or (ch.isalpha() and ch.isascii())


def _is_ident_char(ch):
    return ch == "_" or (ch.isalnum() and ch.isascii())


def decode_literal(raw):
    out = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch == "\\" and i + 1 < len(raw):
            nxt = raw[i + 1]
            out.append(nxt if nxt in "'\"" else ch + nxt)
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def encode_literal(value):
    """Inverse of :func:`decode_literal` for double-quoted output."""
    out = ['"']
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value) and value[i + 1] not in "'\"":
            out.append(value[i : i + 2])
            i += 2
            continue
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            # a lone trailing backslash or one before a quote
            out.append("\\\\")
        else:
            out.append(ch)
        i += 1
    out.append('"')
    return "".join(out)


def lex(source):
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        two = source[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(CqlToken(_TWO_CHAR[two], two, (i, i + 2)))
            i += 2
            continue
        if ch in "'\"":
            j = i + 1
            while j < n and source[j] != ch:
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                # unterminated literal swallows the rest of the input
                tokens.append(CqlToken(Kind.ERROR, source[i:], (i, n)))
                break
            tokens.append(CqlToken(Kind.STRING_LITERAL, source[i : j + 1], (i, j + 1)))
            i = j + 1
            continue
        if ch in _ONE_CHAR:
            tokens.append(CqlToken(_ONE_CHAR[ch], ch, (i, i + 1)))
            i += 1
            continue
        if ch.isdigit() and ch.isascii():
            j = i
            while j < n and source[j].isdigit() and source[j].isascii():
                j += 1
            tokens.append(CqlToken(Kind.NUMBER, source[i:j], (i, j)))
            i = j
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(source[j]):
                j += 1
            word = source[i:j]
            kind = Kind.WITHIN_KW if word == "within" else Kind.IDENT
            tokens.append(CqlToken(kind, word, (i, j)))
            i = j
            continue
        tokens.append(CqlToken(Kind.ERROR, ch, (i, i + 1)))
        i += 1
    return tokens
