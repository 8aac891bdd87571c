"""Immutable AST for CQL queries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

UNBOUNDED = math.inf

KNOWN_ATTRS = frozenset({"word", "pos", "lemma"})


class Op(Enum):
    EQ = "="
    NEQ = "!="


class QueryClass(Enum):
    SIMPLE = "simple"
    WITHIN = "within"
    CONDITION = "condition"


@dataclass(frozen=True)
class Atom:
    attr: str
    op: Op
    value: str


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


@dataclass(frozen=True)
class Not:
    child: "Constraint"


@dataclass(frozen=True)
class Empty:
    pass


Constraint = Union[Atom, And, Or, Not, Empty]


@dataclass(frozen=True)
class Quantifier:
    min: int = 1
    max: float = 1  # int, or UNBOUNDED

    def __post_init__(self):
        if self.min < 0 or self.max < self.min:
            raise ValueError(f"invalid quantifier bounds {{{self.min},{self.max}}}")

    @property
    def bounded(self):
        return self.max != UNBOUNDED

    @property
    def is_one(self):
        return self.min == 1 and self.max == 1


ONE = Quantifier(1, 1)
OPTIONAL = Quantifier(0, 1)
STAR = Quantifier(0, UNBOUNDED)
PLUS = Quantifier(1, UNBOUNDED)


@dataclass(frozen=True)
class TokenExpr:
    constraint: Constraint = field(default_factory=Empty)
    quant: Quantifier = ONE
    label: Optional[str] = None


@dataclass(frozen=True)
class SeqExpr:
    elements: tuple

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a sequence needs at least one token expression")

    def max_length(self):
        """Largest number of corpus tokens the sequence can span."""
        return sum(t.quant.max for t in self.elements)

    def min_length(self):
        return sum(t.quant.min for t in self.elements)


@dataclass(frozen=True)
class StructureTag:
    name: str


@dataclass(frozen=True)
class AttrRef:
    label: str
    attr: str


@dataclass(frozen=True)
class GlobalConstraint:
    left: AttrRef
    op: Op
    right: AttrRef


@dataclass(frozen=True)
class Query:
    head: SeqExpr
    withins: tuple = ()
    conditions: tuple = ()

    def sequences(self):
        """The head followed by every within-clause sequence."""
        yield self.head
        for w in self.withins:
            if isinstance(w, SeqExpr):
                yield w

    def token_exprs(self):
        for seq in self.sequences():
            yield from seq.elements

    def labels(self):
        return {t.label for t in self.token_exprs() if t.label is not None}

    def condition_labels(self):
        out = set()
        for c in self.conditions:
            out.add(c.left.label)
            out.add(c.right.label)
        return out


def classify(q: Query) -> QueryClass:
    if q.conditions:
        return QueryClass.CONDITION
    if q.withins:
        return QueryClass.WITHIN
    return QueryClass.SIMPLE


def iter_atoms(c):
    if isinstance(c, Atom):
        yield c
    elif isinstance(c, (And, Or)):
        for child in c.children:
            yield from iter_atoms(child)
    elif isinstance(c, Not):
        yield from iter_atoms(c.child)


def query_attrs(q: Query):
    """Every attribute name the query reads."""
    attrs = {a.attr for t in q.token_exprs() for a in iter_atoms(t.constraint)}
    for c in q.conditions:
        attrs.add(c.left.attr)
        attrs.add(c.right.attr)
    return attrs
