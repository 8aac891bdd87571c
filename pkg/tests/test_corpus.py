import io
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqlkit.corpus import (
    AnnotatedCorpus,
    AnnToken,
    Hit,
    StructureSpan,
    TruncatedHitsWarning,
    brute_force_execute,
    build_index,
    execute,
    execute_text,
    execution_accuracy,
    ingest_vertical,
    write_vertical,
)
from cqlkit.cql import parse
from cqlkit.errors import (
    CorpusTooLarge,
    FormatError,
    GoldExecutionFailed,
    GoldInvalid,
    RegexError,
    UnknownAttribute,
)

from helpers import random_query, tiny_random_corpus, toy_corpus


def corpus_of(*sentences):
    """One document, one sentence per argument; tokens given as 'word/POS'."""
    sents = [[tuple(t.split("/")) for t in s.split()] for s in sentences]
    return AnnotatedCorpus.from_sentences([sents])


def spans(hits):
    return sorted(hits.spans())


# -- ingestion -------------------------------------------------------------

VERT = """\
# comment line
<doc id="d1">
<s>
the\tDT\tthe
cats\tNNS\tcat
sleep\tVBP
</s>
<s>
ok\tUH\tok
.\t.\t.
</s>
</doc>
<doc id="d2">
<s>
a\tDT\ta
b\tNN\tb
c\tNN\tc
d\tNN\td
e\tNN\te
</s>
</doc>
"""


def test_ingest_counts_and_defaults():
    c = ingest_vertical(io.StringIO(VERT))
    assert c.n_tokens == 10
    assert c.doc_names == ["d1", "d2"]
    assert len(c.spans("doc")) == 2 and len(c.spans("s")) == 3
    assert c.docs[0][2] == AnnToken("sleep", "VBP", "sleep")  # lemma defaults to word
    assert c.docs[0][1].lemma == "cat"


def test_ingest_bytes_and_path(tmp_path):
    p = tmp_path / "c.vert"
    p.write_text(VERT, encoding="utf-8")
    assert ingest_vertical(p).n_tokens == 10
    assert ingest_vertical(str(p)).n_tokens == 10
    assert ingest_vertical(io.BytesIO(VERT.encode())).n_tokens == 10


def test_every_token_in_one_sentence_and_one_doc():
    c = ingest_vertical(io.StringIO(VERT))
    for kind in ("s", "doc"):
        covered = [(s.doc_id, i) for s in c.spans(kind) for i in range(s.start, s.end)]
        assert sorted(covered) == [(d, i) for d, doc in enumerate(c.docs) for i in range(len(doc))]


def test_ingest_other_structures():
    text = "<doc>\n<p>\n<s>\na\tDT\n</s>\n<s>\nb\tNN\n</s>\n</p>\n</doc>\n"
    c = ingest_vertical(io.StringIO(text))
    assert [(s.start, s.end) for s in c.spans("p")] == [(0, 2)]


@pytest.mark.parametrize(
    "text,line,needle",
    [
        ("<doc>\n</s>\n", 2, "without matching"),
        ("<doc>\n<s>\na\tDT\tx\ty\n</s>\n</doc>\n", 3, "columns"),
        ("<doc>\n<s>\nword\n</s>\n</doc>\n", 3, "columns"),
        ("<doc>\n<s>\na\tDT\n", 2, "unclosed"),
        ("<doc>\n<s>\n</s>\n</doc>\n", 3, "empty sentence"),
        ("<doc>\n<s>\na\tDT\n\nb\tNN\n</s>\n</doc>\n", 4, "blank line"),
        ("<doc>\na\tDT\n</doc>\n", 2, "outside a sentence"),
    ],
)
def test_ingest_errors(text, line, needle):
    with pytest.raises(FormatError, match=needle) as ei:
        ingest_vertical(io.StringIO(text))
    assert ei.value.line == line


def test_write_then_ingest_round_trip():
    c = toy_corpus(1, 3, 4)
    buf = io.StringIO()
    write_vertical(c, buf)
    back = ingest_vertical(io.StringIO(buf.getvalue()))
    assert back.docs == c.docs
    assert sorted(back.spans("s"), key=lambda s: (s.doc_id, s.start)) == sorted(
        c.spans("s"), key=lambda s: (s.doc_id, s.start)
    )


# -- index -----------------------------------------------------------------


def test_freq_and_postings():
    c = corpus_of("book/NN the/DT book/NN", "a/DT book/NN")
    idx = build_index(c)
    assert idx.freq["book"] == 3
    assert sum(idx.freq.values()) == idx.n == 5
    post = idx.postings[("pos", "NN")]
    assert post == sorted(post) == [(0, 0), (0, 2), (0, 4)]


def test_empty_corpus():
    idx = build_index(AnnotatedCorpus())
    assert idx.n == 0 and idx.postings == {} and not idx.freq
    assert len(execute(parse("[]"), idx)) == 0


def test_postings_strictly_increasing():
    idx = build_index(toy_corpus(2, 3, 5))
    for positions in idx.postings.values():
        assert all(a < b for a, b in zip(positions, positions[1:]))


# -- execution -------------------------------------------------------------


def test_empty_token_matches_every_token():
    idx = build_index(corpus_of("x/NN y/VBZ z/NNS"))
    assert spans(execute(parse("[]"), idx)) == [(0, 0, 1), (0, 1, 2), (0, 2, 3)]


def test_regex_is_anchored():
    idx = build_index(corpus_of("x/NN y/VBZ z/NNS"))
    assert spans(execute(parse('[pos="N.*"]'), idx)) == [(0, 0, 1), (0, 2, 3)]
    assert spans(execute(parse('[pos="N"]'), idx)) == []
    assert spans(execute(parse('[pos!="N"]'), idx)) == [(0, 0, 1), (0, 1, 2), (0, 2, 3)]


def test_condition_example():
    c = corpus_of("x/NN y/VBZ z/NN")
    q = parse("1:[] 2:[] :: 1.pos = 2.pos")
    # no adjacent pair shares pos
    assert spans(execute(q, build_index(c))) == spans(brute_force_execute(q, c)) == []
    q = parse("1:[] []? 2:[] :: 1.pos = 2.pos")
    hits = execute(q, build_index(c))
    assert spans(hits) == spans(brute_force_execute(q, c)) == [(0, 0, 3)]
    (h,) = hits.hits
    assert dict(h.bindings) == {"1": 0, "2": 2}


def test_all_decompositions_enumerated():
    idx = build_index(corpus_of("a/X a/X a/X"))
    got = spans(execute(parse('[word="a"]+ [word="a"]?'), idx))
    assert got == [(0, s, e) for s in range(3) for e in range(s + 1, 4)]


def test_hits_do_not_cross_documents():
    c = AnnotatedCorpus.from_sentences([[[("a", "X")]], [[("a", "X")]]])
    assert spans(execute(parse('[word="a"]{2}'), build_index(c))) == []
    assert spans(brute_force_execute(parse("[] []"), corpus_of("a/X"))) == []


def test_within_structure_and_sequence():
    c = corpus_of("the/DT cat/NN sees/VBZ a/DT dog/NN", "she/PRP saw/VBD books/NNS")
    idx = build_index(c)
    assert spans(execute(parse('[pos="NN.*"] within <s/>'), idx)) == [(0, 1, 2), (0, 4, 5), (0, 7, 8)]
    q = parse('[pos="N.*"] within [pos="VB.*"] []{0,5} [pos="VB.*"]')
    # only the noun between the two verbs of the same window
    assert spans(execute(q, idx)) == spans(brute_force_execute(q, c))
    assert spans(execute(q, idx)) == [(0, 4, 5)]


def test_within_chain_is_left_to_right():
    c = corpus_of("a/DT b/NN", "c/DT d/NN")
    c.structures.append(StructureSpan("p", 0, 0, 2))
    idx = build_index(c)
    q = parse('[pos="NN"] within <s/> within <p/>')
    assert spans(execute(q, idx)) == [(0, 1, 2)]


def test_unknown_attribute_and_bad_regex():
    idx = build_index(corpus_of("a/DT"))
    with pytest.raises(UnknownAttribute):
        execute(parse('[tag="DT"]'), idx)
    with pytest.raises(UnknownAttribute):
        execute(parse("1:[] 2:[] :: 1.tag = 2.tag"), idx)
    from cqlkit.cql.nodes import Atom, Op, Query, SeqExpr, TokenExpr

    bad = Query(SeqExpr((TokenExpr(Atom("word", Op.EQ, "(")),)))
    with pytest.raises(RegexError):
        execute(bad, idx)


def test_limit_truncates_in_document_order():
    idx = build_index(corpus_of("a/X b/X c/X d/X"))
    res = execute(parse("[]"), idx, limit=2)
    assert res.truncated and spans(res) == [(0, 0, 1), (0, 1, 2)]
    assert not execute(parse("[]"), idx, limit=4).truncated
    with pytest.raises(ValueError):
        execute(parse("[]"), idx, limit=0)


def test_limit_from_environment(monkeypatch):
    idx = build_index(corpus_of("a/X b/X c/X"))
    monkeypatch.setenv("CQLKIT_LIMIT", "1")
    assert execute(parse("[]"), idx).truncated
    monkeypatch.setenv("CQLKIT_LIMIT", "zero")
    with pytest.raises(ValueError):
        execute(parse("[]"), idx)


def test_hit_equality_ignores_bindings():
    assert Hit(0, 1, 2, (("A", 1),)) == Hit(0, 1, 2)
    assert len({Hit(0, 1, 2, (("A", 1),)), Hit(0, 1, 2)}) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 30))
def test_limit_monotone(seed, k):
    rng = random.Random(seed)
    idx = build_index(tiny_random_corpus(rng, 80))
    q = random_query(rng)
    a, b = execute(q, idx, limit=k), execute(q, idx, limit=k + 1)
    assert a.spans() <= b.spans()
    assert execute(q, idx, limit=k).spans() == a.spans()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_within_hits_are_contained_hits_of_head(seed):
    rng = random.Random(seed)
    c = tiny_random_corpus(rng, 80)
    idx = build_index(c)
    q = random_query(rng, "within")
    head_only = execute(type(q)(q.head), idx, limit=10**9).spans()
    first = q.withins[0]
    if hasattr(first, "name"):
        outer = {(s.doc_id, s.start, s.end) for s in c.spans(first.name)}
    else:
        outer = execute(type(q)(first), idx, limit=10**9).spans()
    for d, s, e in execute(q, idx, limit=10**9).spans():
        assert (d, s, e) in head_only
        assert any(d == od and os_ <= s and e <= oe for od, os_, oe in outer)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_condition_bindings_satisfy_conditions(seed):
    rng = random.Random(seed)
    c = tiny_random_corpus(rng, 80)
    idx = build_index(c)
    q = random_query(rng, "condition")
    for h in execute(q, idx, limit=10**9).hits:
        bound = dict(h.bindings)
        assert h.start < h.end
        for cond in q.conditions:
            if cond.left.label in bound and cond.right.label in bound:
                a = c.docs[h.doc_id][bound[cond.left.label]].get(cond.left.attr)
                b = c.docs[h.doc_id][bound[cond.right.label]].get(cond.right.attr)
                assert (a == b) == (cond.op.value == "=")
        for label, off in h.bindings:
            if all(t.label != label for w in q.withins if hasattr(w, "elements") for t in w.elements):
                assert h.start <= off < h.end


def test_engine_is_deterministic():
    idx = build_index(toy_corpus(4, 3, 6))
    q = parse('A:[pos="DT"] []{0,3} B:[] :: A.pos = B.pos')
    a = sorted((h.span, h.bindings) for h in execute(q, idx).hits)
    b = sorted((h.span, h.bindings) for h in execute(q, idx).hits)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_engine_matches_brute_force(seed):
    rng = random.Random(seed)
    c = tiny_random_corpus(rng, 60)
    q = random_query(rng)
    assert execute(q, build_index(c), limit=10**9).spans() == brute_force_execute(q, c).spans()


def test_brute_force_guards():
    assert len(brute_force_execute(parse("[]"), AnnotatedCorpus())) == 0
    big = AnnotatedCorpus.from_sentences([[[("a", "X")] * 10_001]])
    with pytest.raises(CorpusTooLarge):
        brute_force_execute(parse("[]"), big)


def test_brute_force_limit():
    res = brute_force_execute(parse("[]"), corpus_of("a/X b/X c/X"), limit=2)
    assert res.truncated and spans(res) == [(0, 0, 1), (0, 1, 2)]


def test_execute_text():
    idx = build_index(corpus_of("a/X"))
    assert len(execute_text('[word="a"]', idx)) == 1


# -- execution accuracy ----------------------------------------------------


def test_execution_accuracy_cases():
    idx = build_index(corpus_of("a/DT b/NN c/VB", "b/NN a/DT d/NN"))
    assert execution_accuracy('[word="a"]', '[word="a"]', idx) == 1
    assert execution_accuracy('[word="a"|word="b"]', '[word="b"|word="a"]', idx) == 1
    assert execution_accuracy('[word="a"', '[word="a"]', idx) == 0
    assert execution_accuracy('[tag="DT"]', '[word="a"]', idx) == 0
    assert execution_accuracy('[pos="DT"]', '[word="a"]', idx) == 1
    assert execution_accuracy('[pos="NN"]', '[word="a"]', idx) == 0
    with pytest.raises(GoldInvalid):
        execution_accuracy('[word="a"]', "[word=", idx)
    with pytest.raises(GoldExecutionFailed):
        execution_accuracy('[word="a"]', '[tag="a"]', idx)


def test_execution_accuracy_truncation_scores_zero():
    idx = build_index(corpus_of("a/DT a/DT a/DT"))
    with pytest.warns(TruncatedHitsWarning, match="both"):
        assert execution_accuracy("[]", "[]", idx, limit=2) == 0
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert execution_accuracy("[]", "[]", idx, limit=3) == 1
