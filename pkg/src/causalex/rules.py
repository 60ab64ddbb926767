"""Causal rule set, triple construction, and deduplication.

A rule is a pattern with three required captures (trigger, cause,
effect).  Applying a rule to a sentence graph yields cause-effect
triples, filtered so that the effect is one of the configured target
keywords, with the cause rendered as the surface projection of its
basic-edge subtree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from io import StringIO
from typing import Iterable, TextIO, Union

from .depgraph import DependencyGraph
from .matcher import find_matches
from .patterns import (
    LexiconSet,
    PatternAst,
    PatternError,
    builtin_lexicons,
    expand_lexicons,
    parse_pattern,
)

REQUIRED_CAPTURES = ("trigger", "cause", "effect")

# Edge labels followed when an effect binding is itself off-target but
# coordinated with a target word ("swollen eye & headaches").
CONJUNCT_LABEL = re.compile(r"conj(:.*)?")

# Function words hanging directly off the span head are dropped so that
# "caused by stress" yields the cause "stress", not "by stress".
SPAN_HEAD_DROP_LABELS = re.compile(r"case|mark")

PUNCT_LABEL = "punct"


class RuleError(ValueError):
    """Raised for malformed rule definitions or rule files."""


@dataclass(frozen=True)
class CausalRule:
    """One extraction rule; ``invert_on`` swaps cause/effect when the
    effect was bound via an edge whose label matches it."""

    id: int
    name: str
    pattern: PatternAst
    invert_on: str | None = None

    def __post_init__(self) -> None:
        captures = self.pattern.capture_names()
        for required in REQUIRED_CAPTURES:
            if required not in captures:
                raise RuleError(f"rule {self.id}: missing capture '{required}'")
        extra = [c for c in captures if c not in REQUIRED_CAPTURES]
        if extra:
            raise RuleError(f"rule {self.id}: unexpected capture '{extra[0]}'")
        if self.invert_on is not None:
            try:
                re.compile(self.invert_on)
            except re.error as exc:
                raise RuleError(f"rule {self.id}: invalid invert_on regex: {exc}") from None


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[CausalRule, ...]
    lexicons: LexiconSet = field(default_factory=builtin_lexicons)

    def __post_init__(self) -> None:
        seen = set()
        for rule in self.rules:
            if rule.id in seen:
                raise RuleError(f"duplicate rule id {rule.id}")
            seen.add(rule.id)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class CausalTriple:
    """An extracted <cause, relation, effect> with provenance."""

    cause: str
    cause_index: int
    rule_id: int
    trigger_lemma: str
    effect: str
    effect_index: int
    tweet_id: str
    sentence_index: int
    text: str

    @property
    def dedup_key(self) -> tuple[str, int, str]:
        return (self.cause.lower(), self.rule_id, self.effect)

    @property
    def annotation_key(self) -> tuple[str, int, int, str]:
        return (self.tweet_id, self.sentence_index, self.rule_id, self.effect)

    def to_json_dict(self) -> dict:
        return {
            "tweet_id": self.tweet_id,
            "sent": self.sentence_index,
            "rule": self.rule_id,
            "trigger_lemma": self.trigger_lemma,
            "cause": self.cause,
            "effect": self.effect,
            "text": self.text,
        }


BUILTIN_RULE_SOURCES: tuple[tuple[int, str, str, str | None], ...] = (
    (
        1,
        "active-nominal",
        "{lemma:/$CLAUSAL_VERB/;pos:/VB.*/}=trigger >/nsubj/ {}=cause >/dobj|obj/ {}=effect",
        None,
    ),
    (
        2,
        "active-clausal-subject",
        "{lemma:/$CLAUSAL_VERB/}=trigger >/csubj|nsubj/ {pos:/VBG/}=cause >/dobj|obj/ {}=effect",
        None,
    ),
    (
        3,
        "passive-agent",
        "{lemma:/$CLAUSAL_VERB/;pos:VBN}=trigger >/nsubjpass/ {}=effect >/nmod:agent/ {}=cause",
        None,
    ),
    (
        4,
        "clausal-noun",
        "{lemma:/$CLAUSAL_NOUN/;pos:/NN.*/}=trigger >/nsubj/ {}=cause >/nmod:of/ {}=effect",
        None,
    ),
    (
        5,
        "passive-gerund",
        "{lemma:/$CLAUSAL_VERB/;pos:VBN}=trigger >/nsubjpass/ {}=effect >/advcl:by/ {pos:VBG}=cause",
        None,
    ),
    (
        6,
        "result-prep",
        "{lemma:/$CLAUSAL_VERB/}=trigger >/nsubj|csubj/ {}=cause >/nmod:$RESULT_PREP/ {}=effect",
        "nmod:from",
    ),
)


def builtin_ruleset() -> RuleSet:
    """The six built-in causal rules, macro-expanded and ready to match."""
    lexicons = builtin_lexicons()
    rules = []
    for rule_id, name, source, invert_on in BUILTIN_RULE_SOURCES:
        ast = expand_lexicons(parse_pattern(source), lexicons)
        rules.append(CausalRule(id=rule_id, name=name, pattern=ast, invert_on=invert_on))
    return RuleSet(rules=tuple(rules), lexicons=lexicons)


_RULE_HEADER_RE = re.compile(r'rule\s+(\d+)\s+"([^"]*)"\s*$')
_LEXICON_RE = re.compile(r"lexicon\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")


def load_rules(source: Union[str, TextIO]) -> RuleSet:
    """Parse a rule file into a macro-expanded rule set.

    Format (line oriented)::

        lexicon CLAUSAL_VERB = cause, trigger
        rule 1 "my-rule"
        pattern {lemma:/$CLAUSAL_VERB/}=trigger >/nsubj/ {}=cause >/dobj/ {}=effect
        invert_on nmod:from
        end

    Lexicon lines override or extend the built-ins.  Lines starting with
    ``#`` and blank lines are ignored.
    """
    if isinstance(source, str):
        source = StringIO(source)

    lexicons = builtin_lexicons()
    pending: list[tuple[int, str, str | None, str | None]] = []  # id, name, pattern, invert
    current: dict | None = None

    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if current is None:
            if m := _LEXICON_RE.match(line):
                words = [w.strip().lower() for w in m.group(2).split(",") if w.strip()]
                try:
                    lexicons.define(m.group(1), words)
                except ValueError as exc:
                    raise RuleError(f"line {lineno}: {exc}") from None
                continue
            if m := _RULE_HEADER_RE.match(line):
                current = {"id": int(m.group(1)), "name": m.group(2), "pattern": None, "invert": None}
                continue
            raise RuleError(f"line {lineno}: expected 'lexicon' or 'rule' directive, got {line!r}")
        if line == "end":
            if current["pattern"] is None:
                raise RuleError(f"rule {current['id']}: missing pattern")
            pending.append((current["id"], current["name"], current["pattern"], current["invert"]))
            current = None
        elif line.startswith("pattern "):
            current["pattern"] = line[len("pattern ") :].strip()
        elif line.startswith("invert_on "):
            current["invert"] = line[len("invert_on ") :].strip()
        else:
            raise RuleError(f"line {lineno}: unexpected line inside rule {current['id']}: {line!r}")
    if current is not None:
        raise RuleError(f"rule {current['id']}: missing 'end'")

    rules = []
    for rule_id, name, pattern_source, invert_on in pending:
        try:
            ast = expand_lexicons(parse_pattern(pattern_source), lexicons)
        except (PatternError, ValueError) as exc:
            raise RuleError(f"rule {rule_id}: {exc}") from None
        rules.append(CausalRule(id=rule_id, name=name, pattern=ast, invert_on=invert_on))
    return RuleSet(rules=tuple(rules), lexicons=lexicons)


def apply_rules(
    graph: DependencyGraph, rules: RuleSet, targets: set[str]
) -> list[CausalTriple]:
    """Extract all triples whose effect resolves to a target lemma.

    The effect binding counts directly when its lemma is a target, or
    indirectly when a token reachable from it over conjunct edges is; the
    matched token becomes the recorded effect.  Rules with ``invert_on``
    swap cause and effect first when the effect-binding edge label asks
    for it.
    """
    if not targets:
        raise ValueError("targets must be non-empty")
    tweet_id, sentence_index = _split_sentence_id(graph.sentence_id)
    triples: list[CausalTriple] = []
    for rule in rules:
        for match in find_matches(graph, rule.pattern):
            trigger = graph.token(match.bindings["trigger"])
            cause_idx = match.bindings["cause"]
            effect_idx = match.bindings["effect"]
            if rule.invert_on and _edge_label_matches(graph, trigger.index, effect_idx, rule.invert_on):
                cause_idx, effect_idx = effect_idx, cause_idx
            resolved = _resolve_effect(graph, effect_idx, targets)
            if resolved is None:
                continue
            keyword, keyword_idx = resolved
            span = _cause_span(graph, cause_idx, effect_index=effect_idx)
            if not span:
                continue
            triples.append(
                CausalTriple(
                    cause=span,
                    cause_index=cause_idx,
                    rule_id=rule.id,
                    trigger_lemma=trigger.lemma,
                    effect=keyword,
                    effect_index=keyword_idx,
                    tweet_id=tweet_id,
                    sentence_index=sentence_index,
                    text=graph.text,
                )
            )
    return triples


def _split_sentence_id(sentence_id: str) -> tuple[str, int]:
    doc, sep, ordinal = sentence_id.rpartition(":")
    if sep and ordinal.isdigit():
        return doc, int(ordinal)
    return sentence_id, 0


def _edge_label_matches(graph: DependencyGraph, governor: int, dependent: int, pattern: str) -> bool:
    rx = re.compile(pattern)
    return any(
        e.dependent == dependent and rx.fullmatch(e.label)
        for e in graph._by_governor.get(governor, ())
    )


def _resolve_effect(
    graph: DependencyGraph, effect_index: int, targets: set[str]
) -> tuple[str, int] | None:
    """Target lemma and token index for the effect binding, if any.

    Walks conjunct edges outward from the binding (breadth first, so the
    nearest coordinated target wins).
    """
    first = graph.token(effect_index)
    if first.lemma.lower() in targets:
        return first.lemma.lower(), first.index
    seen = {effect_index}
    queue = [effect_index]
    while queue:
        current = queue.pop(0)
        for e in graph._by_governor.get(current, ()):
            if not CONJUNCT_LABEL.fullmatch(e.label) or e.dependent in seen:
                continue
            seen.add(e.dependent)
            tok = graph.token(e.dependent)
            if tok.lemma.lower() in targets:
                return tok.lemma.lower(), tok.index
            queue.append(e.dependent)
    return None


def _cause_span(graph: DependencyGraph, cause_index: int, effect_index: int) -> str:
    """Surface projection of the cause subtree over basic edges.

    Excludes punctuation, the effect token's subtree, and case/mark
    function words attached directly to the cause head.
    """
    keep = set(graph.basic_subtree(cause_index))
    keep -= set(graph.basic_subtree(effect_index)) - {cause_index}
    for child in graph._basic_children.get(cause_index, ()):
        label = graph._basic_label_in.get(child, "")
        if SPAN_HEAD_DROP_LABELS.fullmatch(label):
            keep -= set(graph.basic_subtree(child))
    keep = {i for i in keep if graph._basic_label_in.get(i) != PUNCT_LABEL or i == cause_index}
    return " ".join(graph.token(i).form for i in sorted(keep))


def dedup_triples(
    triples: Iterable[CausalTriple],
) -> tuple[list[CausalTriple], dict[tuple[str, int, str], int]]:
    """Collapse repeats of (lowercased cause, rule, effect), keeping the
    first occurrence; also reports how often each key appeared."""
    survivors: list[CausalTriple] = []
    counts: dict[tuple[str, int, str], int] = {}
    for triple in triples:
        key = triple.dedup_key
        if key not in counts:
            survivors.append(triple)
            counts[key] = 0
        counts[key] += 1
    return survivors, counts
