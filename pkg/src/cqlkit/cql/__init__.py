from .lexer import CqlToken, Kind, lex
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
    QueryClass,
    SeqExpr,
    StructureTag,
    TokenExpr,
    classify,
    iter_atoms,
)
from .parser import is_valid, parse
from .printer import canonical_print, normalize
from .signature import NodeSignature, signature_nodes

__all__ = [
    "KNOWN_ATTRS",
    "UNBOUNDED",
    "And",
    "Atom",
    "AttrRef",
    "CqlToken",
    "Empty",
    "GlobalConstraint",
    "Kind",
    "NodeSignature",
    "Not",
    "Op",
    "Or",
    "Quantifier",
    "Query",
    "QueryClass",
    "SeqExpr",
    "StructureTag",
    "TokenExpr",
    "canonical_print",
    "classify",
    "is_valid",
    "iter_atoms",
    "lex",
    "normalize",
    "parse",
    "signature_nodes",
]
