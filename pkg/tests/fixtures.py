"""Hand-built fixtures with values worked out by hand.

Every number below was derived by hand from the definitions; the tests
compare library output against them.
"""

import math
from pathlib import Path

DATA = Path(__file__).parent / "data"

# -- statistics fixture (data/stats5.jsonl) ---------------------------------
#
#  id  nl chars  cql chars  token exprs  depth  nodes  atoms
#  s1     22        16          1          4      4      1   Query>Seq>Token>Atom
#  s2     29        28          1          5      6      2   ...Token>And>Atom x2
#  w1     24        52          4          4     11      3   head 4 nodes + Seq + 3 Tokens + 2 Atoms + Empty
#  w2      0        25          1          4      5      1   Query>Seq>Token>Atom, Struct
#  c1     38        26          2          4      7      0   Seq>2 Tokens>Empty x2, Cond

STATS_EXPECTED = {
    "simple": {"n": 2, "nl_chars": 25.5, "cql_chars": 22.0, "token_exprs": 1.0, "ast_depth": 4.5, "ast_nodes": 5.0, "atoms": 1.5},
    "within": {"n": 2, "nl_chars": 12.0, "cql_chars": 38.5, "token_exprs": 2.5, "ast_depth": 4.0, "ast_nodes": 8.0, "atoms": 2.0},
    "condition": {"n": 1, "nl_chars": 38.0, "cql_chars": 26.0, "token_exprs": 2.0, "ast_depth": 4.0, "ast_nodes": 7.0, "atoms": 0.0},
    "overall": {"n": 5, "nl_chars": 22.6, "cql_chars": 29.4, "token_exprs": 1.8, "ast_depth": 4.2, "ast_nodes": 6.6, "atoms": 1.4},
}

# -- evaluation fixture (data/eval_gold.jsonl, data/eval_pred.jsonl) ---------
#
# r1  pred [word="book"]  gold [word="book"] []
#     tokens 5 vs 7; every candidate n-gram occurs in the gold stream, BP = e^(1-7/5)
#     TS: candidate non-leaf Query(Seq), Seq(Token), Token(Atom); gold has
#     Seq(Token, Token) instead of Seq(Token) -> 2/3
# r2  operands of | swapped; 9 tokens each
#     precisions 9/9, 4/8, 2/7, and 0/6 smoothed to 1/7 -> (1/49)^(1/4)
#     TS: Query, Seq, Token(Or), Or(Atom, Atom) all occur in gold -> 1
# r3  quote style only -> EM 1, BLEU 1, TS 1
# r4  pred [pos="N.*"] within <s/> (9 tokens) vs the 23-token within row
#     precisions 6/9, 5/8, 4/7, 3/6 -> (5/42)^(1/4), BP = e^(1-23/9)
#     TS: Query(Seq, Struct) no; Seq(Token) yes; Token(Atom) yes -> 2/3
# r5  pred "1:[] 2:[] :: 1.pos =" does not parse; its 13 raw tokens are a
#     prefix of the 16 gold tokens -> BLEU e^(1-16/13), TS 0, VA 0

EVAL_EXPECTED = {
    "r1": {"em": 0, "va": 1, "bleu": math.exp(1 - 7 / 5), "ts": 2 / 3},
    "r2": {"em": 0, "va": 1, "bleu": (1 / 49) ** 0.25, "ts": 1.0},
    "r3": {"em": 1, "va": 1, "bleu": 1.0, "ts": 1.0},
    "r4": {"em": 0, "va": 1, "bleu": math.exp(1 - 23 / 9) * (5 / 42) ** 0.25, "ts": 2 / 3},
    "r5": {"em": 0, "va": 0, "bleu": math.exp(1 - 16 / 13), "ts": 0.0},
}
EVAL_CLASSES = {"r1": "simple", "r2": "simple", "r3": "simple", "r4": "within", "r5": "condition"}

# Semantically equal pairs whose OR operands are swapped.
SWAPPED_OR_PAIRS = [
    ('[word="a" | word="b"]', '[word="b" | word="a"]'),
    ('[pos="NN" | pos="DT"]', '[pos="DT" | pos="NN"]'),
    ('[word="a" | pos="VB"]', '[pos="VB" | word="a"]'),
    ('[lemma="b" | word="c"]', '[word="c" | lemma="b"]'),
    ('[word="a" | word="b" | word="c"]', '[word="c" | word="b" | word="a"]'),
    ('[(word="a" | word="b") & pos="DT"]', '[(word="b" | word="a") & pos="DT"]'),
    ('[pos="NN" | pos="VB"] [word="a"]', '[pos="VB" | pos="NN"] [word="a"]'),
    ('[word="b" | word="d"] within <s/>', '[word="d" | word="b"] within <s/>'),
    ('[!(word="a" | word="c")]', '[!(word="c" | word="a")]'),
    ('A:[word="a" | word="b"] []? B:[] :: A.pos = B.pos', 'A:[word="b" | word="a"] []? B:[] :: A.pos = B.pos'),
    ('[pos="N.*" | word="a"]{1,2}', '[word="a" | pos="N.*"]{1,2}'),
    ('[word="a"] within [word="c" | word="a"] []*', '[word="a"] within [word="a" | word="c"] []*'),
]

# Fixture corpus for EX: (word, pos, lemma) per sentence, one document.
EX_SENTENCES = [
    [("a", "DT", "a"), ("b", "NN", "b"), ("c", "VB", "c")],
    [("b", "NN", "b"), ("a", "DT", "a"), ("d", "NN", "d"), ("c", "VB", "c")],
    [("a", "DT", "a"), ("b", "NNS", "b"), ("a", "DT", "a")],
]
