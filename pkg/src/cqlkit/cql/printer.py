"""Canonical rendering of query ASTs.

Literals are always double-quoted, sequence elements separated by one
space, boolean operators padded by one space, quantifiers attached.
"""

from .lexer import encode_literal
from .nodes import UNBOUNDED, And, Atom, Empty, Not, Or, SeqExpr, StructureTag
from .parser import parse


def format_quant(q):
    if q.min == 1 and q.max == 1:
        return ""
    if q.min == 0 and q.max == 1:
        return "?"
    if q.max == UNBOUNDED:
        if q.min == 0:
            return "*"
        if q.min == 1:
            return "+"
        return "{%d,}" % q.min
    return "{%d,%d}" % (q.min, q.max)


def format_constraint(c):
    if isinstance(c, Empty):
        return ""
    if isinstance(c, Atom):
        return f"{c.attr}{c.op.value}{encode_literal(c.value)}"
    if isinstance(c, Not):
        inner = format_constraint(c.child)
        if isinstance(c.child, (And, Or)):
            inner = f"({inner})"
        return "!" + inner
    if isinstance(c, And):
        parts = []
        for child in c.children:
            s = format_constraint(child)
            parts.append(f"({s})" if isinstance(child, (And, Or)) else s)
        return " & ".join(parts)
    if isinstance(c, Or):
        parts = []
        for child in c.children:
            s = format_constraint(child)
            parts.append(f"({s})" if isinstance(child, Or) else s)
        return " | ".join(parts)
    raise TypeError(f"not a constraint: {c!r}")


def format_token(t):
    label = f"{t.label}:" if t.label is not None else ""
    return f"{label}[{format_constraint(t.constraint)}]{format_quant(t.quant)}"


def format_seq(seq):
    return " ".join(format_token(t) for t in seq.elements)


def canonical_print(q):
    parts = [format_seq(q.head)]
    for w in q.withins:
        if isinstance(w, StructureTag):
            parts.append(f"within <{w.name}/>")
        else:
            assert isinstance(w, SeqExpr)
            parts.append("within " + format_seq(w))
    text = " ".join(parts)
    if q.conditions:
        conds = " & ".join(
            f"{c.left.label}.{c.left.attr} {c.op.value} {c.right.label}.{c.right.attr}"
            for c in q.conditions
        )
        text += " :: " + conds
    return text


def normalize(source):
    """Canonical text of ``source``; raises ParseError when unparseable."""
    return canonical_print(parse(source))
