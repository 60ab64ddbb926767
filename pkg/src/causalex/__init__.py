"""Cause-effect relation extraction over dependency graphs.

The toolkit reads dependency-parsed sentences (CoNLL-U), matches
pattern-language rules against their enhanced dependency edges, emits
<cause, relation, effect> triples filtered to configurable effect
keywords, and scores extraction output against human annotation files.

Typical use::

    from causalex import read_conllu_file, builtin_ruleset, apply_rules

    graphs = read_conllu_file("parses.conllu")
    rules = builtin_ruleset()
    for graph in graphs:
        for triple in apply_rules(graph, rules, {"insomnia", "stress"}):
            print(triple.cause, "->", triple.effect)
"""

__version__ = "0.1.0"

from .depgraph import (
    ConlluError,
    DependencyEdge,
    DependencyGraph,
    ROOT,
    Token,
    dependents,
    governors,
    parse_conllu,
    read_conllu_file,
    to_conllu,
)
from .evaluation import (
    AccuracyReport,
    AnnotationError,
    AnnotationRecord,
    accuracy,
    format_report,
    load_annotations,
)
from .matcher import Match, brute_force_matches, find_matches
from .patterns import (
    LexiconSet,
    NodePattern,
    PatternAst,
    PatternError,
    RelationConstraint,
    builtin_lexicons,
    expand_lexicons,
    parse_pattern,
    pretty_print,
)
from .pipeline import (
    ExtractionResult,
    PipelineConfig,
    TweetRecord,
    extract,
    extract_corpus,
    filter_tweets,
    read_tweets,
    report_rule_frequency,
    report_rule_frequency_tsv,
)
from .rules import (
    CausalRule,
    CausalTriple,
    RuleError,
    RuleSet,
    apply_rules,
    builtin_ruleset,
    dedup_triples,
    load_rules,
)

__all__ = [
    "__version__",
    "ConlluError",
    "DependencyEdge",
    "DependencyGraph",
    "ROOT",
    "Token",
    "dependents",
    "governors",
    "parse_conllu",
    "read_conllu_file",
    "to_conllu",
    "AccuracyReport",
    "AnnotationError",
    "AnnotationRecord",
    "accuracy",
    "format_report",
    "load_annotations",
    "Match",
    "brute_force_matches",
    "find_matches",
    "LexiconSet",
    "NodePattern",
    "PatternAst",
    "PatternError",
    "RelationConstraint",
    "builtin_lexicons",
    "expand_lexicons",
    "parse_pattern",
    "pretty_print",
    "ExtractionResult",
    "PipelineConfig",
    "TweetRecord",
    "extract",
    "extract_corpus",
    "filter_tweets",
    "read_tweets",
    "report_rule_frequency",
    "report_rule_frequency_tsv",
    "CausalRule",
    "CausalTriple",
    "RuleError",
    "RuleSet",
    "apply_rules",
    "builtin_ruleset",
    "dedup_triples",
    "load_rules",
]
