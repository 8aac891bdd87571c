"""Node signatures used by the AST similarity metric.

A signature is the triple (kind, child kinds, key): the node's own kind, the
ordered kinds of its direct children, and the node's lexical payload
(operator symbol, attribute/value, quantifier bounds and label, structure
name).
"""

from typing import NamedTuple, Optional

from .nodes import (
    UNBOUNDED,
    And,
    Atom,
    Empty,
    GlobalConstraint,
    Not,
    Or,
    Query,
    SeqExpr,
    StructureTag,
    TokenExpr,
)


class NodeSignature(NamedTuple):
    kind: str
    child_kinds: tuple
    key: Optional[tuple]


def node_kind(node):
    return _KINDS[type(node)]


_KINDS = {
    Query: "Query",
    SeqExpr: "Seq",
    TokenExpr: "Token",
    And: "And",
    Or: "Or",
    Not: "Not",
    Atom: "Atom",
    Empty: "Empty",
    StructureTag: "Struct",
    GlobalConstraint: "Cond",
}


def children(node):
    if isinstance(node, Query):
        return (node.head, *node.withins, *node.conditions)
    if isinstance(node, SeqExpr):
        return node.elements
    if isinstance(node, TokenExpr):
        return (node.constraint,)
    if isinstance(node, (And, Or)):
        return node.children
    if isinstance(node, Not):
        return (node.child,)
    return ()


def _bound(x):
    return "inf" if x == UNBOUNDED else int(x)


def node_key(node):
    if isinstance(node, TokenExpr):
        return (node.label, node.quant.min, _bound(node.quant.max))
    if isinstance(node, And):
        return ("&",)
    if isinstance(node, Or):
        return ("|",)
    if isinstance(node, Not):
        return ("!",)
    if isinstance(node, Atom):
        return (node.attr, node.op.value, node.value)
    if isinstance(node, StructureTag):
        return (node.name,)
    if isinstance(node, GlobalConstraint):
        return (node.left.label, node.left.attr, node.op.value, node.right.label, node.right.attr)
    return None


def signature(node):
    return NodeSignature(
        node_kind(node),
        tuple(node_kind(c) for c in children(node)),
        node_key(node),
    )


def walk(node, depth=1):
    """Pre-order (node, depth) pairs."""
    yield node, depth
    for c in children(node):
        yield from walk(c, depth + 1)


def signature_nodes(q):
    """Pre-order list of (signature, is_leaf) for every AST node."""
    return [(signature(n), not children(n)) for n, _ in walk(q)]


def non_leaf_signatures(q):
    return [sig for sig, leaf in signature_nodes(q) if not leaf]


def tree_depth(q):
    return max(d for _, d in walk(q))


def node_count(q):
    return sum(1 for _ in walk(q))
