"""Command-line interface.

Subcommands: ``extract`` (corpus -> triples JSONL), ``match`` (ad-hoc
pattern over parses), ``report`` (rule-frequency table from a result
summary), ``eval`` (accuracy against an annotation file).

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .depgraph import ConlluError, read_conllu_file
from .evaluation import (
    AnnotationError,
    accuracy,
    format_report,
    load_annotations,
    load_triple_keys,
    report_to_json_dict,
)
from .matcher import find_matches
from .patterns import PatternError, builtin_lexicons, expand_lexicons, parse_pattern
from .pipeline import (
    PipelineConfig,
    extract,
    report_rule_frequency,
    report_rule_frequency_tsv,
    result_from_json_dict,
    result_to_json_dict,
)
from .rules import RuleError

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="causalex", description="Cause-effect relation extraction toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract causal triples from a corpus")
    p.add_argument("--tweets", required=True, help="tweet JSONL file")
    p.add_argument("--parses", required=True, help="CoNLL-U parse file keyed tweetId:ordinal")
    p.add_argument("--targets", required=True, help="comma-separated effect keywords")
    p.add_argument("--rules", default=None, help="rule file (defaults to the built-in rule set)")
    p.add_argument("--no-dedup", action="store_true", help="keep repeated triples")
    p.add_argument("--out", required=True, help="triples JSONL output path")
    p.add_argument("--summary", default=None, help="also write the result summary JSON here")

    p = sub.add_parser("match", help="run one pattern over a parse file")
    p.add_argument("--pattern", required=True, help="pattern source (built-in lexicon macros allowed)")
    p.add_argument("--parses", required=True, help="CoNLL-U parse file")

    p = sub.add_parser("report", help="print the rule-frequency table for a result summary")
    p.add_argument("--result", required=True, help="result summary JSON (from extract --summary)")
    p.add_argument("--tsv", action="store_true", help="machine-readable TSV instead of the table")

    p = sub.add_parser("eval", help="score extracted triples against annotations")
    p.add_argument("--triples", required=True, help="triples JSONL (from extract --out)")
    p.add_argument("--annotations", required=True, help="annotation TSV")
    p.add_argument("--mode", required=True, choices=["strict", "relaxed", "both"])
    p.add_argument("--json", action="store_true", help="emit JSON instead of the text table")

    return parser


def _cmd_extract(args: argparse.Namespace) -> int:
    targets = [t.strip() for t in args.targets.split(",") if t.strip()]
    if not targets:
        print("causalex: error: --targets must name at least one keyword", file=sys.stderr)
        return USAGE_ERROR
    config = PipelineConfig(
        targets=targets,
        tweets_path=args.tweets,
        parses_path=args.parses,
        rules_path=args.rules,
        dedup=not args.no_dedup,
    )
    result = extract(config)
    with open(args.out, "w", encoding="utf-8") as handle:
        for target in result.per_target:
            for triple in result.per_target[target].triples:
                handle.write(json.dumps(triple.to_json_dict()) + "\n")
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as handle:
            json.dump(result_to_json_dict(result), handle, indent=2)
            handle.write("\n")
    total = sum(tr.relationship_count for tr in result.per_target.values())
    print(f"extracted {total} causal relationship(s) across {len(result.per_target)} target(s)")
    return 0


def _cmd_match(args: argparse.Namespace) -> int:
    pattern = expand_lexicons(parse_pattern(args.pattern), builtin_lexicons())
    graphs = read_conllu_file(args.parses)
    for graph in graphs:
        for match in find_matches(graph, pattern):
            bindings = {
                name: {"index": idx, "form": graph.token(idx).form, "lemma": graph.token(idx).lemma}
                for name, idx in sorted(match.bindings.items())
            }
            print(json.dumps({"sent_id": graph.sentence_id, "bindings": bindings}))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    with open(args.result, encoding="utf-8") as handle:
        result = result_from_json_dict(json.load(handle))
    if args.tsv:
        sys.stdout.write(report_rule_frequency_tsv(result))
    else:
        sys.stdout.write(report_rule_frequency(result))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    with open(args.triples, encoding="utf-8") as handle:
        keys = load_triple_keys(handle)
    with open(args.annotations, encoding="utf-8") as handle:
        annotations = load_annotations(handle)
    modes = ["strict", "relaxed"] if args.mode == "both" else [args.mode]
    reports = [accuracy(keys, annotations, mode) for mode in modes]
    if args.json:
        print(json.dumps([report_to_json_dict(r) for r in reports], indent=2))
    else:
        sys.stdout.write(format_report(reports))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "extract": _cmd_extract,
        "match": _cmd_match,
        "report": _cmd_report,
        "eval": _cmd_eval,
    }[args.command]
    try:
        return handler(args)
    except (ConlluError, PatternError, RuleError, AnnotationError) as exc:
        print(f"causalex: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"causalex: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
