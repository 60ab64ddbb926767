"""Batch extraction over a tweet corpus with pre-parsed sentences.

Tweets arrive as JSONL, parses as CoNLL-U keyed ``tweetId:ordinal``.
Tweets are prefiltered by target keyword (word-boundary match, plural
-s/-es accepted), then the rule set runs per target over every parsed
sentence of every surviving tweet.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from io import StringIO
from typing import Iterable, Iterator, TextIO, Union

from .depgraph import DependencyGraph, read_conllu_file
from .rules import CausalTriple, RuleSet, apply_rules, builtin_ruleset, dedup_triples, load_rules

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TweetRecord:
    id: str
    text: str
    created_at: str | None = None
    city: str | None = None


@dataclass
class TargetResult:
    """Extraction aggregates for one target keyword."""

    tweets_matched: int = 0
    rule_hits: dict[int, int] = field(default_factory=dict)
    raw_triple_count: int = 0
    triples: list[CausalTriple] = field(default_factory=list)
    relationship_count: int = 0
    multiplicities: dict[tuple[str, int, str], int] = field(default_factory=dict)


@dataclass
class ExtractionResult:
    per_target: dict[str, TargetResult]
    missing_parses: int = 0
    skipped_tweets: int = 0

    def canonicalized(self) -> "ExtractionResult":
        """Copy with triples in provenance order, for order-independent
        comparison of runs over shuffled corpora."""
        out = {}
        for target, tr in self.per_target.items():
            out[target] = TargetResult(
                tweets_matched=tr.tweets_matched,
                rule_hits=dict(sorted(tr.rule_hits.items())),
                raw_triple_count=tr.raw_triple_count,
                triples=sorted(tr.triples, key=lambda t: (t.tweet_id, t.sentence_index, t.rule_id, t.effect, t.cause)),
                relationship_count=tr.relationship_count,
                multiplicities=dict(sorted(tr.multiplicities.items())),
            )
        return ExtractionResult(
            per_target=dict(sorted(out.items())),
            missing_parses=self.missing_parses,
            skipped_tweets=self.skipped_tweets,
        )


@dataclass
class PipelineConfig:
    targets: list[str]
    tweets_path: str
    parses_path: str
    rules_path: str | None = None  # None selects the built-in rule set
    dedup: bool = True

    def __post_init__(self) -> None:
        if not self.targets:
            raise ValueError("targets must be non-empty")
        self.targets = [t.lower() for t in self.targets]


def read_tweets(source: Union[str, TextIO]) -> tuple[list[TweetRecord], int]:
    """Parse tweet JSONL; malformed lines are logged, skipped, counted."""
    if isinstance(source, str):
        source = StringIO(source)
    records: list[TweetRecord] = []
    skipped = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            record = TweetRecord(
                id=str(obj["id"]),
                text=obj["text"],
                created_at=obj.get("created_at"),
                city=obj.get("city"),
            )
            if not record.text:
                raise ValueError("empty text")
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            logger.warning("tweets line %d: skipping malformed record (%s)", lineno, exc)
            skipped += 1
            continue
        records.append(record)
    return records, skipped


@lru_cache(maxsize=256)
def _keyword_rx(target: str) -> re.Pattern:
    # Word-boundary with optional plural: "headaches" counts for
    # "headache", but "insomniac" does not count for "insomnia".
    return re.compile(rf"\b{re.escape(target)}(?:es|s)?\b", re.IGNORECASE)


def filter_tweets(
    tweets: Iterable[TweetRecord], targets: Iterable[str]
) -> Iterator[tuple[TweetRecord, list[str]]]:
    """Yield tweets containing any target as a whole word, input order
    preserved, with every matching target listed once."""
    targets = sorted({t.lower() for t in targets})
    for tweet in tweets:
        matched = [t for t in targets if _keyword_rx(t).search(tweet.text)]
        if matched:
            yield tweet, matched


def extract(config: PipelineConfig) -> ExtractionResult:
    """Run the full pipeline per the config; see :func:`extract_corpus`."""
    with open(config.tweets_path, encoding="utf-8") as handle:
        tweets, skipped = read_tweets(handle)
    graphs = read_conllu_file(config.parses_path)
    if config.rules_path is None:
        rules = builtin_ruleset()
    else:
        with open(config.rules_path, encoding="utf-8") as handle:
            rules = load_rules(handle)
    result = extract_corpus(tweets, graphs, rules, config.targets, dedup=config.dedup)
    result.skipped_tweets = skipped
    return result


def extract_corpus(
    tweets: Iterable[TweetRecord],
    graphs: Iterable[DependencyGraph],
    rules: RuleSet,
    targets: Iterable[str],
    dedup: bool = True,
) -> ExtractionResult:
    """Apply the rule set per target over every parsed sentence of every
    keyword-filtered tweet.

    A filtered tweet with no sentence in the parse index increments the
    missing-parse counter instead of failing.  Output is deterministic
    for a fixed corpus order; runs over reordered corpora agree after
    :meth:`ExtractionResult.canonicalized`.
    """
    targets = [t.lower() for t in targets]
    by_tweet: dict[str, list[DependencyGraph]] = {}
    ordinals: dict[str, int] = {}
    for graph in graphs:
        doc, sep, ordinal = graph.sentence_id.rpartition(":")
        key = doc if sep and doc else graph.sentence_id
        ordinals[graph.sentence_id] = int(ordinal) if sep and ordinal.isdigit() else 0
        by_tweet.setdefault(key, []).append(graph)
    for sentences in by_tweet.values():
        sentences.sort(key=lambda g: ordinals[g.sentence_id])

    per_target = {t: TargetResult(rule_hits={r.id: 0 for r in rules}) for t in targets}
    missing: set[str] = set()

    for tweet, matched in filter_tweets(tweets, targets):
        sentences = by_tweet.get(tweet.id)
        if not sentences:
            missing.add(tweet.id)
        for target in matched:
            tr = per_target[target]
            tr.tweets_matched += 1
            for graph in sentences or ():
                for triple in apply_rules(graph, rules, {target}):
                    tr.rule_hits[triple.rule_id] = tr.rule_hits.get(triple.rule_id, 0) + 1
                    tr.raw_triple_count += 1
                    tr.triples.append(triple)

    for tr in per_target.values():
        survivors, counts = dedup_triples(tr.triples)
        tr.relationship_count = len(survivors)
        tr.multiplicities = counts
        if dedup:
            tr.triples = survivors

    return ExtractionResult(per_target=per_target, missing_parses=len(missing))


def result_to_json_dict(result: ExtractionResult, include_triples: bool = True) -> dict:
    per_target = {}
    for target, tr in result.per_target.items():
        entry = {
            "tweets_matched": tr.tweets_matched,
            "rule_hits": {str(rule_id): count for rule_id, count in sorted(tr.rule_hits.items())},
            "raw_triples": tr.raw_triple_count,
            "relationships": tr.relationship_count,
        }
        if include_triples:
            entry["triples"] = [t.to_json_dict() for t in tr.triples]
        per_target[target] = entry
    return {
        "targets": list(result.per_target.keys()),
        "per_target": per_target,
        "missing_parses": result.missing_parses,
    }


def result_from_json_dict(obj: dict) -> ExtractionResult:
    """Load a result summary; triples may be absent (counts-only files)."""
    per_target = {}
    for target in obj["targets"]:
        entry = obj["per_target"][target]
        triples = [
            CausalTriple(
                cause=t["cause"],
                cause_index=t.get("cause_index", 0),
                rule_id=t["rule"],
                trigger_lemma=t.get("trigger_lemma", ""),
                effect=t["effect"],
                effect_index=t.get("effect_index", 0),
                tweet_id=t["tweet_id"],
                sentence_index=t["sent"],
                text=t.get("text", ""),
            )
            for t in entry.get("triples", [])
        ]
        per_target[target] = TargetResult(
            tweets_matched=entry["tweets_matched"],
            rule_hits={int(k): v for k, v in entry["rule_hits"].items()},
            raw_triple_count=entry["raw_triples"],
            triples=triples,
            relationship_count=entry["relationships"],
        )
    return ExtractionResult(per_target=per_target, missing_parses=obj.get("missing_parses", 0))


RELATIONSHIP_ROW_LABEL = "# causal relationship"


def report_rule_frequency(result: ExtractionResult) -> str:
    """Rule-by-target frequency table with Total and relationship rows."""
    targets = list(result.per_target.keys())
    rule_ids = sorted({rid for tr in result.per_target.values() for rid in tr.rule_hits})
    headers = ["MATCHED RULE #"] + [
        f"{t.capitalize()} (of {result.per_target[t].tweets_matched})" for t in targets
    ]
    rows: list[list[str]] = []
    for rid in rule_ids:
        rows.append([str(rid)] + [str(result.per_target[t].rule_hits.get(rid, 0)) for t in targets])
    rows.append(["Total"] + [str(result.per_target[t].raw_triple_count) for t in targets])
    rows.append([RELATIONSHIP_ROW_LABEL] + [str(result.per_target[t].relationship_count) for t in targets])

    widths = [max(len(headers[c]), *(len(r[c]) for r in rows)) for c in range(len(headers))]
    lines = []
    for row in [headers] + rows:
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def report_rule_frequency_tsv(result: ExtractionResult) -> str:
    """Machine-readable twin of :func:`report_rule_frequency`."""
    targets = list(result.per_target.keys())
    rule_ids = sorted({rid for tr in result.per_target.values() for rid in tr.rule_hits})
    lines = ["\t".join(["rule"] + targets)]
    lines.append("\t".join(["tweets_matched"] + [str(result.per_target[t].tweets_matched) for t in targets]))
    for rid in rule_ids:
        lines.append("\t".join([str(rid)] + [str(result.per_target[t].rule_hits.get(rid, 0)) for t in targets]))
    lines.append("\t".join(["total"] + [str(result.per_target[t].raw_triple_count) for t in targets]))
    lines.append("\t".join(["relationships"] + [str(result.per_target[t].relationship_count) for t in targets]))
    return "\n".join(lines) + "\n"
