"""Command-line entry point.

Exit codes: 0 success, 1 query parse/execution or input data error, 2 usage
error, 3 corpus file missing or malformed, 4 generation inputs exhausted.
"""

import argparse
import json
import logging
import os
import sys

from .corpus import build_index, default_limit, execute, ingest_vertical
from .cql import canonical_print, classify, parse
from .cql.signature import children, node_key, node_kind
from .errors import CqlError, ExecutionError, ExhaustedInputs, FormatError, ParseError
from .generator import (
    GenConfig,
    SynonymLexicon,
    extract_collocations_naive,
    generate_dataset,
    load_collocations,
    load_synonyms,
    record_dicts,
)
from .harness import compute_stats, evaluate, load_dataset, load_predictions
from .metrics import MetricWeights

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_CORPUS, EXIT_EXHAUSTED = 0, 1, 2, 3, 4

log = logging.getLogger("cqlkit")


class UsageError(Exception):
    pass


class CorpusUnavailable(Exception):
    pass


def _err(msg):
    print(msg, file=sys.stderr)


def _dump(obj):
    print(json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False))


def ast_to_json(node):
    key = node_key(node)
    out = {"kind": node_kind(node)}
    if key is not None:
        out["key"] = list(key)
    kids = children(node)
    if kids:
        out["children"] = [ast_to_json(c) for c in kids]
    return out


def ast_lines(node, depth=0):
    key = node_key(node)
    text = "  " * depth + node_kind(node)
    if key is not None:
        text += " " + " ".join("-" if k is None else str(k) for k in key)
    yield text
    for c in children(node):
        yield from ast_lines(c, depth + 1)


def _load_corpus(path):
    try:
        return build_index(ingest_vertical(path))
    except OSError as exc:
        raise CorpusUnavailable(f"cannot read corpus {path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise CorpusUnavailable(f"{path}: {exc}") from None


def _limit(args):
    return args.limit if args.limit is not None else default_limit()


def cmd_parse(args):
    try:
        q = parse(args.query)
    except ParseError as exc:
        _err(exc.diagnostic())
        return EXIT_ERROR
    if args.json:
        _dump({"class": classify(q).value, "canonical": canonical_print(q), "ast": ast_to_json(q)})
    else:
        print("\n".join(ast_lines(q)))
        print(f"class: {classify(q).value}")
        print(f"canonical: {canonical_print(q)}")
    return EXIT_OK


def cmd_exec(args):
    try:
        q = parse(args.query)
    except ParseError as exc:
        _err(exc.diagnostic())
        return EXIT_ERROR
    idx = _load_corpus(args.corpus)
    try:
        result = execute(q, idx, _limit(args))
    except ExecutionError as exc:
        _err(f"error: {exc}")
        return EXIT_ERROR
    rows = []
    for h in result.sorted():
        words = " ".join(t.word for t in idx.corpus.docs[h.doc_id][h.start : h.end])
        rows.append((h, words))
    if args.json:
        _dump(
            {
                "query": canonical_print(q),
                "total": len(rows),
                "truncated": result.truncated,
                "hits": [
                    {
                        "doc_id": h.doc_id,
                        "doc": idx.corpus.doc_names[h.doc_id],
                        "start": h.start,
                        "end": h.end,
                        "text": words,
                        "bindings": dict(h.bindings),
                    }
                    for h, words in rows
                ],
            }
        )
    else:
        for h, words in rows:
            print(f"{h.doc_id}\t{h.start}\t{h.end}\t{words}")
        print(f"{len(rows)} hits" + (" (truncated)" if result.truncated else ""))
    return EXIT_OK


def _weights(args):
    alpha, beta = args.alpha, args.beta
    if alpha is None and beta is None:
        alpha, beta = 0.5, 0.5
    elif beta is None:
        beta = 1.0 - alpha
    elif alpha is None:
        alpha = 1.0 - beta
    try:
        return MetricWeights(alpha, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_eval(args):
    w = _weights(args)
    gold = load_dataset(args.gold)
    preds = load_predictions(args.pred, gold)
    idx = _load_corpus(args.corpus) if args.corpus else None
    report = evaluate(gold, preds, idx, w, _limit(args), jobs=args.jobs)
    if args.json:
        _dump(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    if args.plot_dir:
        from .plotting import plot_report

        _err("figure: " + plot_report(report, os.path.join(args.plot_dir, "eval_metrics.png")))
    return EXIT_OK


def parse_mix(text):
    mix = {}
    for part in text.split(","):
        name, sep, value = part.partition(":")
        if not sep:
            raise UsageError(f"bad --mix entry {part!r}; expected class:proportion")
        try:
            mix[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad proportion in --mix entry {part!r}") from None
    unknown = set(mix) - {"simple", "within", "condition"}
    if unknown:
        raise UsageError(f"unknown class(es) in --mix: {', '.join(sorted(unknown))}")
    return mix


def cmd_gen(args):
    try:
        cfg = GenConfig(
            seed=args.seed,
            mix=parse_mix(args.mix),
            require_hits=args.require_hits,
            nested_prob=args.nested_prob,
            null_token_prob=args.null_token_prob,
            min_freq=args.min_freq,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    idx = _load_corpus(args.corpus)
    if args.collocations:
        cols = load_collocations(args.collocations)
    else:
        cols = extract_collocations_naive(idx, args.window)
    syn = load_synonyms(args.synonyms) if args.synonyms else SynonymLexicon()
    records = generate_dataset(idx, cols, syn, args.n, cfg)

    lines = [json.dumps(d, ensure_ascii=False) + "\n" for d in record_dicts(records, args.lang)]
    counts = {c: 0 for c in ("simple", "within", "condition")}
    for r in records:
        counts[r.cls.value] += 1
    summary = {"records": len(records), "classes": counts, "seed": args.seed}
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(lines)
        if args.json:
            _dump(summary)
        else:
            print(f"wrote {len(records)} records to {args.out}")
            for name, c in counts.items():
                print(f"{name:<10} {c:>6}")
    else:
        sys.stdout.writelines(lines)
        _err(json.dumps(summary))
    return EXIT_OK


def cmd_stats(args):
    stats = compute_stats(load_dataset(args.dataset))
    if args.json:
        _dump(stats.to_json())
    else:
        sys.stdout.write(stats.to_text())
    if args.plot_dir:
        from .plotting import plot_stats

        _err("figure: " + plot_stats(stats, os.path.join(args.plot_dir, "stats.png")))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="cqlkit", description="Corpus Query Language toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse a query and print its AST and class")
    sp.add_argument("query")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("exec", help="run a query over a vertical corpus file")
    sp.add_argument("query")
    sp.add_argument("corpus")
    sp.add_argument("--limit", type=int, default=None, help="maximum hits (default: $CQLKIT_LIMIT or 100000)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_exec)

    sp = sub.add_parser("eval", help="score predictions against a gold dataset")
    sp.add_argument("--gold", required=True)
    sp.add_argument("--pred", required=True)
    sp.add_argument("--corpus", help="vertical corpus for execution accuracy")
    sp.add_argument("--alpha", type=float, default=None, help="BLEU weight (default 0.5)")
    sp.add_argument("--beta", type=float, default=None, help="tree similarity weight (default 0.5)")
    sp.add_argument("--limit", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--plot-dir", help="also render a metrics figure into this directory")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("gen", help="generate a CQL dataset from a corpus")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--collocations", help="collocation file; extracted naively when omitted")
    sp.add_argument("--synonyms")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--mix", default="simple:0.6,within:0.25,condition:0.15")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--require-hits", action="store_true")
    sp.add_argument("--nested-prob", type=float, default=0.2)
    sp.add_argument("--null-token-prob", type=float, default=0.5)
    sp.add_argument("--min-freq", type=int, default=6)
    sp.add_argument("--window", type=int, default=3, help="window for naive collocation extraction")
    sp.add_argument("--lang", default="en")
    sp.add_argument("--out")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("stats", help="per-class statistics of a dataset")
    sp.add_argument("dataset")
    sp.add_argument("--plot-dir", help="also render a statistics figure into this directory")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "limit", None) is not None and args.limit < 1:
        parser.error("--limit must be >= 1")
    if getattr(args, "n", 1) < 1:
        parser.error("--n must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _err(f"cqlkit: error: {exc}")
        return EXIT_USAGE
    except CorpusUnavailable as exc:
        _err(f"error: {exc}")
        return EXIT_CORPUS
    except ExhaustedInputs as exc:
        _err(f"error: {exc}")
        return EXIT_EXHAUSTED
    except (CqlError, OSError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
