"""Recursive-descent parser for the CQL dialect.

Grammar::

    query     := seq ("within" (seq | structure))* ("::" cond ("&" cond)*)?
    seq       := token+
    token     := (label ":")? "[" or_expr? "]" quant?
    or_expr   := and_expr ("|" and_expr)*
    and_expr  := unary ("&" unary)*
    unary     := "!" unary | "(" or_expr ")" | attr ("=" | "!=") literal
    structure := "<" ident "/>"
    cond      := label "." attr ("=" | "!=") label "." attr
    quant     := "?" | "*" | "+" | "{" n "}" | "{" n "," n? "}"
"""

import logging
import re

from ..errors import ParseError
from .lexer import Kind, lex
from .nodes import (
    KNOWN_ATTRS,
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

log = logging.getLogger(__name__)

_LABEL_KINDS = (Kind.IDENT, Kind.NUMBER)
_QUANT_START = (Kind.QUANT_QMARK, Kind.QUANT_STAR, Kind.QUANT_PLUS, Kind.LBRACE)


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = lex(source)
        self.pos = 0
        self.labels = {}  # label -> TokenExpr

    # token helpers -------------------------------------------------------

    def peek(self, ahead=0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, *kinds, ahead=0):
        tok = self.peek(ahead)
        return tok is not None and tok.kind in kinds

    def offset(self):
        tok = self.peek()
        return tok.span[0] if tok is not None else len(self.source)

    def fail(self, message, expected=(), offset=None):
        tok = self.peek()
        if tok is not None and tok.kind is Kind.ERROR and offset is None:
            message = f"unrecognised input {tok.text!r}"
        raise ParseError(
            message,
            self.offset() if offset is None else offset,
            [k.value if isinstance(k, Kind) else k for k in expected],
            self.source,
        )

    def expect(self, kind, what=None):
        if not self.at(kind):
            found = self.peek()
            found = "end of input" if found is None else repr(found.text)
            self.fail(f"expected {what or kind.value}, found {found}", [kind])
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # grammar -------------------------------------------------------------

    def query(self):
        if not self.tokens:
            self.fail("empty query", [Kind.LBRACKET])
        head = self.seq()
        withins = []
        while self.at(Kind.WITHIN_KW):
            self.pos += 1
            if self.at(Kind.STRUCT_OPEN):
                withins.append(self.structure())
            elif self.at(Kind.LBRACKET, *_LABEL_KINDS):
                withins.append(self.seq())
            else:
                self.fail(
                    "dangling 'within': expected a sequence or structure tag",
                    [Kind.LBRACKET, Kind.STRUCT_OPEN],
                )
        conditions = []
        if self.at(Kind.COND_SEP):
            self.pos += 1
            conditions.append(self.cond())
            while self.at(Kind.AND):
                self.pos += 1
                conditions.append(self.cond())
        if self.peek() is not None:
            self.fail(
                f"unexpected {self.peek().text!r}",
                [Kind.WITHIN_KW, Kind.COND_SEP, Kind.LBRACKET],
            )
        q = Query(head, tuple(withins), tuple(conditions))
        self.check_labels(q)
        return q

    def seq(self):
        elements = [self.token()]
        while self.at(Kind.LBRACKET) or (
            self.at(*_LABEL_KINDS) and self.at(Kind.LABEL_SEP, ahead=1)
        ):
            elements.append(self.token())
        return SeqExpr(tuple(elements))

    def token(self):
        label = None
        if self.at(*_LABEL_KINDS) and self.at(Kind.LABEL_SEP, ahead=1):
            tok = self.tokens[self.pos]
            label = tok.text
            if label in self.labels:
                self.fail(f"duplicate label {label!r}", offset=tok.span[0])
            self.pos += 2
        self.expect(Kind.LBRACKET, "'['")
        if self.at(Kind.RBRACKET):
            constraint = Empty()
        else:
            constraint = self.or_expr()
        self.expect(Kind.RBRACKET, "']'")
        quant = self.quant()
        t = TokenExpr(constraint, quant, label)
        if label is not None:
            self.labels[label] = t
        return t

    def or_expr(self):
        children = [self.and_expr()]
        while self.at(Kind.OR):
            self.pos += 1
            children.append(self.and_expr())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def and_expr(self):
        children = [self.unary()]
        while self.at(Kind.AND):
            self.pos += 1
            children.append(self.unary())
        return children[0] if len(children) == 1 else And(tuple(children))

    def unary(self):
        if self.at(Kind.NOT):
            self.pos += 1
            return Not(self.unary())
        if self.at(Kind.LPAREN):
            self.pos += 1
            inner = self.or_expr()
            self.expect(Kind.RPAREN, "')'")
            return inner
        if not self.at(Kind.IDENT):
            self.fail(
                "expected an attribute constraint",
                [Kind.IDENT, Kind.NOT, Kind.LPAREN],
            )
        attr = self.tokens[self.pos].text
        if attr not in KNOWN_ATTRS:
            log.warning("unknown attribute %r", attr)
        self.pos += 1
        op = self.op()
        lit = self.expect(Kind.STRING_LITERAL, "a quoted value")
        value = lit.value
        if not value:
            self.fail("empty attribute value", offset=lit.span[0])
        try:
            re.compile(value)
        except re.error as exc:
            self.fail(f"invalid regular expression {value!r}: {exc}", offset=lit.span[0])
        return Atom(attr, op, value)

    def op(self):
        if self.at(Kind.EQ):
            self.pos += 1
            return Op.EQ
        if self.at(Kind.NEQ):
            self.pos += 1
            return Op.NEQ
        self.fail("expected '=' or '!='", [Kind.EQ, Kind.NEQ])

    def quant(self):
        tok = self.peek()
        if tok is None or tok.kind not in _QUANT_START:
            return Quantifier(1, 1)
        start = tok.span[0]
        self.pos += 1
        if tok.kind is Kind.QUANT_QMARK:
            return Quantifier(0, 1)
        if tok.kind is Kind.QUANT_STAR:
            return Quantifier(0, UNBOUNDED)
        if tok.kind is Kind.QUANT_PLUS:
            return Quantifier(1, UNBOUNDED)
        lo = int(self.expect(Kind.NUMBER, "a repetition count").text)
        hi = lo
        if self.at(Kind.COMMA):
            self.pos += 1
            hi = int(self.tokens[self.pos].text) if self.at(Kind.NUMBER) else UNBOUNDED
            if self.at(Kind.NUMBER):
                self.pos += 1
        self.expect(Kind.RBRACE, "'}'")
        if hi < lo:
            self.fail(f"bad quantifier: minimum {lo} exceeds maximum {hi}", offset=start)
        return Quantifier(lo, hi)

    def structure(self):
        self.expect(Kind.STRUCT_OPEN)
        name = self.expect(Kind.IDENT, "a structure name").text
        self.expect(Kind.STRUCT_SELFCLOSE, "'/>'")
        return StructureTag(name)

    def ref(self):
        if not self.at(*_LABEL_KINDS):
            self.fail("expected a label reference", [Kind.IDENT, Kind.NUMBER])
        tok = self.tokens[self.pos]
        self.pos += 1
        self.expect(Kind.DOT, "'.'")
        attr = self.expect(Kind.IDENT, "an attribute name").text
        return tok, AttrRef(tok.text, attr)

    def cond(self):
        ltok, left = self.ref()
        op = self.op()
        rtok, right = self.ref()
        for tok, ref in ((ltok, left), (rtok, right)):
            if ref.label not in self.labels:
                self.fail(f"undeclared label {ref.label!r}", offset=tok.span[0])
        if left.label == right.label:
            self.fail("a condition must compare two different labels", offset=ltok.span[0])
        return GlobalConstraint(left, op, right)

    def check_labels(self, q):
        for label in q.condition_labels():
            if not self.labels[label].quant.is_one:
                raise ParseError(
                    f"label {label!r} is compared in a condition and must bind exactly one token",
                    self._label_offset(label),
                    (),
                    self.source,
                )

    def _label_offset(self, label):
        for i, tok in enumerate(self.tokens[:-1]):
            if tok.text == label and self.tokens[i + 1].kind is Kind.LABEL_SEP:
                return tok.span[0]
        return 0


def parse(source: str) -> Query:
    """Parse ``source`` into a :class:`Query`; raises :class:`ParseError`."""
    return _Parser(source).query()


def is_valid(source: str) -> bool:
    try:
        parse(source)
    except ParseError:
        return False
    return True
