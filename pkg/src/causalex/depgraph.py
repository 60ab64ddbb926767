"""Dependency graph data model and CoNLL-U reader.

Sentences are immutable graphs of tokens connected by labeled
governor->dependent edges.  Each graph carries two edge sets: the basic
edges, which must form a tree and are used for validation and span
projection, and the enhanced edges, which may give a token several
governors and are the substrate for all pattern queries.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache, cached_property
from io import StringIO
from typing import Iterable, TextIO, Union

logger = logging.getLogger(__name__)

CONLLU_COLUMNS = 10


class ConlluError(ValueError):
    """Raised when a CoNLL-U stream or graph structure is malformed."""


class _Root:
    """Sentinel for the virtual root governor (index 0)."""

    def __repr__(self) -> str:
        return "ROOT"


ROOT = _Root()


@dataclass(frozen=True)
class Token:
    """One word or punctuation mark of a sentence.

    ``index`` is 1-based and contiguous within the sentence.  ``lemma``
    falls back to the lowercased form when the source had none.
    """

    index: int
    form: str
    lemma: str
    upos: str = "_"
    xpos: str = "_"
    misc: str = ""


@dataclass(frozen=True)
class DependencyEdge:
    """Labeled edge from a governor (0 = virtual root) to a dependent."""

    governor: int
    dependent: int
    label: str


@dataclass(frozen=True)
class DependencyGraph:
    """A parsed sentence: tokens plus basic (tree) and enhanced edges."""

    sentence_id: str
    text: str
    tokens: tuple[Token, ...]
    basic_edges: tuple[DependencyEdge, ...]
    enhanced_edges: tuple[DependencyEdge, ...]

    def __post_init__(self) -> None:
        _validate_tokens(self.tokens, self.sentence_id)
        _validate_basic_tree(self.tokens, self.basic_edges, self.sentence_id)
        _validate_enhanced(self.tokens, self.enhanced_edges, self.sentence_id)

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"{self.sentence_id}: token index {index} out of range 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    @cached_property
    def _by_governor(self) -> dict[int, tuple[DependencyEdge, ...]]:
        out: dict[int, list[DependencyEdge]] = {}
        for e in self.enhanced_edges:
            out.setdefault(e.governor, []).append(e)
        return {g: tuple(sorted(es, key=lambda e: (e.dependent, e.label))) for g, es in out.items()}

    @cached_property
    def _by_dependent(self) -> dict[int, tuple[DependencyEdge, ...]]:
        out: dict[int, list[DependencyEdge]] = {}
        for e in self.enhanced_edges:
            out.setdefault(e.dependent, []).append(e)
        return {d: tuple(sorted(es, key=lambda e: (e.governor, e.label))) for d, es in out.items()}

    @cached_property
    def _basic_children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for e in self.basic_edges:
            out.setdefault(e.governor, []).append(e.dependent)
        return {g: tuple(sorted(ds)) for g, ds in out.items()}

    @cached_property
    def _basic_label_in(self) -> dict[int, str]:
        return {e.dependent: e.label for e in self.basic_edges}

    def basic_subtree(self, index: int) -> list[int]:
        """Token indices of the basic-edge subtree rooted at ``index``, sorted."""
        self.token(index)
        seen = {index}
        stack = [index]
        while stack:
            for child in self._basic_children.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return sorted(seen)


def dependents(
    graph: DependencyGraph, governor: int, label_pattern: str | None = None
) -> list[tuple[DependencyEdge, Token]]:
    """Enhanced edges governed by ``governor`` whose full label matches.

    ``governor`` may be 0 to list the root token(s).  The label pattern,
    when given, is anchored: it must match the entire edge label.
    """
    if not 0 <= governor <= len(graph.tokens):
        raise IndexError(f"{graph.sentence_id}: governor index {governor} out of range 0..{len(graph.tokens)}")
    rx = _compiled(label_pattern) if label_pattern is not None else None
    out = []
    for e in graph._by_governor.get(governor, ()):
        if rx is None or rx.fullmatch(e.label):
            out.append((e, graph.token(e.dependent)))
    return out


def governors(
    graph: DependencyGraph, dependent: int, label_pattern: str | None = None
) -> list[tuple[DependencyEdge, Union[Token, _Root]]]:
    """Enhanced edges pointing at ``dependent``; the virtual root shows as ROOT.

    Mirror of :func:`dependents`; with enhanced edges a token may have
    several governors.
    """
    graph.token(dependent)
    rx = _compiled(label_pattern) if label_pattern is not None else None
    out: list[tuple[DependencyEdge, Union[Token, _Root]]] = []
    for e in graph._by_dependent.get(dependent, ()):
        if rx is None or rx.fullmatch(e.label):
            gov = ROOT if e.governor == 0 else graph.token(e.governor)
            out.append((e, gov))
    return out


@lru_cache(maxsize=512)
def _compiled(pattern: str) -> re.Pattern:
    return re.compile(pattern)


def _validate_tokens(tokens: tuple[Token, ...], sent_id: str) -> None:
    for pos, tok in enumerate(tokens, start=1):
        if tok.index != pos:
            raise ConlluError(f"{sent_id}: token indices not contiguous at {tok.index} (expected {pos})")
        if tok.form and not tok.lemma:
            raise ConlluError(f"{sent_id}: token {pos} has a form but no lemma")


def _validate_basic_tree(
    tokens: tuple[Token, ...], edges: tuple[DependencyEdge, ...], sent_id: str
) -> None:
    n = len(tokens)
    head_of: dict[int, int] = {}
    roots = 0
    for e in edges:
        _check_edge_bounds(e, n, sent_id)
        if e.dependent in head_of:
            raise ConlluError(f"{sent_id}: token {e.dependent} has more than one basic governor")
        head_of[e.dependent] = e.governor
        if e.governor == 0:
            roots += 1
    if n == 0:
        return
    if len(head_of) != n:
        missing = sorted(set(range(1, n + 1)) - set(head_of))
        raise ConlluError(f"{sent_id}: tokens without a basic governor: {missing}")
    if roots != 1:
        raise ConlluError(f"{sent_id}: expected exactly one root edge, found {roots}")
    for start in range(1, n + 1):
        node, hops = start, 0
        while node != 0:
            node = head_of[node]
            hops += 1
            if hops > n:
                raise ConlluError(f"{sent_id}: cycle in basic tree involving token {start}")


def _validate_enhanced(
    tokens: tuple[Token, ...], edges: tuple[DependencyEdge, ...], sent_id: str
) -> None:
    n = len(tokens)
    covered = set()
    seen = set()
    for e in edges:
        _check_edge_bounds(e, n, sent_id)
        key = (e.governor, e.dependent, e.label)
        if key in seen:
            raise ConlluError(f"{sent_id}: duplicate enhanced edge {key}")
        seen.add(key)
        covered.add(e.dependent)
    if n and covered != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - covered)
        raise ConlluError(f"{sent_id}: tokens without any enhanced governor: {missing}")


def _check_edge_bounds(e: DependencyEdge, n: int, sent_id: str) -> None:
    if not 1 <= e.dependent <= n:
        raise ConlluError(f"{sent_id}: dependent index {e.dependent} out of range 1..{n}")
    if not 0 <= e.governor <= n:
        raise ConlluError(f"{sent_id}: governor index {e.governor} out of range 0..{n}")
    if e.governor == e.dependent:
        raise ConlluError(f"{sent_id}: self-loop on token {e.dependent}")
    if not e.label:
        raise ConlluError(f"{sent_id}: empty edge label on token {e.dependent}")


def parse_conllu(source: Union[str, TextIO]) -> list[DependencyGraph]:
    """Read a 10-column CoNLL-U stream into one graph per sentence block.

    ``# sent_id =`` and ``# text =`` comments are honored.  Multiword-token
    ranges ("3-4") and empty nodes ("5.1") are skipped with a logged
    warning.  A DEPS column of ``_`` copies that token's basic edge into
    the enhanced set; explicit ``head:rel`` pairs (``|``-separated) are
    used otherwise.  Duplicate enhanced triples are collapsed.
    """
    if isinstance(source, str):
        source = StringIO(source)

    graphs: list[DependencyGraph] = []
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line.strip() == "":
            if block:
                graphs.append(_parse_block(block))
                block = []
        else:
            block.append((lineno, line))
    if block:
        graphs.append(_parse_block(block))
    return graphs


def _parse_block(lines: list[tuple[int, str]]) -> DependencyGraph:
    sent_id = ""
    text = ""
    tokens: list[Token] = []
    rows: list[tuple[int, list[str]]] = []

    for lineno, line in lines:
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id"):
                _, _, value = body.partition("=")
                sent_id = value.strip()
            elif body.startswith("text"):
                _, _, value = body.partition("=")
                text = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != CONLLU_COLUMNS:
            raise ConlluError(f"line {lineno}: expected 10 tab-separated fields, got {len(cols)}")
        token_id = cols[0]
        if "-" in token_id:
            logger.warning("line %d: skipping multiword token range %s", lineno, token_id)
            continue
        if "." in token_id:
            logger.warning("line %d: skipping empty node %s", lineno, token_id)
            continue
        rows.append((lineno, cols))

    label = sent_id or (f"line {lines[0][0]}" if lines else "<empty>")
    basic: list[DependencyEdge] = []
    enhanced: list[DependencyEdge] = []
    seen_enhanced: set[tuple[int, int, str]] = set()
    any_explicit_deps = False

    for position, (lineno, cols) in enumerate(rows, start=1):
        try:
            index = int(cols[0])
        except ValueError:
            raise ConlluError(f"line {lineno}: non-integer token id {cols[0]!r}") from None
        if index != position:
            raise ConlluError(f"line {lineno}: token id {index} out of sequence (expected {position})")
        form = cols[1]
        lemma = cols[2] if cols[2] != "_" else form.lower()
        misc = cols[9] if cols[9] != "_" else ""
        tokens.append(Token(index=index, form=form, lemma=lemma, upos=cols[3], xpos=cols[4], misc=misc))

        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluError(f"line {lineno}: non-integer head {cols[6]!r}") from None
        if head < 0 or head > len(rows):
            raise ConlluError(f"line {lineno}: head index {head} out of range 0..{len(rows)}")
        basic_edge = DependencyEdge(governor=head, dependent=index, label=cols[7])
        basic.append(basic_edge)

        deps = cols[8]
        if deps == "_":
            pairs = [(head, cols[7])]
        else:
            any_explicit_deps = True
            pairs = []
            for chunk in deps.split("|"):
                gov_str, sep, rel = chunk.partition(":")
                if not sep or not rel:
                    raise ConlluError(f"line {lineno}: malformed DEPS entry {chunk!r}")
                try:
                    gov = int(gov_str)
                except ValueError:
                    raise ConlluError(f"line {lineno}: non-integer DEPS head {gov_str!r}") from None
                if gov < 0 or gov > len(rows):
                    raise ConlluError(f"line {lineno}: DEPS head {gov} out of range 0..{len(rows)}")
                pairs.append((gov, rel))
        for gov, rel in pairs:
            key = (gov, index, rel)
            if key not in seen_enhanced:
                seen_enhanced.add(key)
                enhanced.append(DependencyEdge(governor=gov, dependent=index, label=rel))

    if not any_explicit_deps:
        enhanced = list(basic)

    try:
        return DependencyGraph(
            sentence_id=label,
            text=text,
            tokens=tuple(tokens),
            basic_edges=tuple(basic),
            enhanced_edges=tuple(enhanced),
        )
    except ConlluError:
        raise
    except ValueError as exc:
        raise ConlluError(str(exc)) from exc


def read_conllu_file(path: str) -> list[DependencyGraph]:
    with open(path, encoding="utf-8") as handle:
        return parse_conllu(handle)


def to_conllu(graphs: Iterable[DependencyGraph]) -> str:
    """Serialize graphs back to CoNLL-U; inverse of :func:`parse_conllu`.

    DEPS is written as ``_`` when a token's enhanced governors are exactly
    its basic edge, and as explicit sorted ``head:rel`` pairs otherwise.
    """
    blocks = []
    for g in graphs:
        lines = []
        if g.sentence_id:
            lines.append(f"# sent_id = {g.sentence_id}")
        if g.text:
            lines.append(f"# text = {g.text}")
        basic_by_dep = {e.dependent: e for e in g.basic_edges}
        enh_by_dep: dict[int, list[DependencyEdge]] = {}
        for e in g.enhanced_edges:
            enh_by_dep.setdefault(e.dependent, []).append(e)
        for tok in g.tokens:
            basic = basic_by_dep[tok.index]
            enh = sorted(enh_by_dep.get(tok.index, []), key=lambda e: (e.governor, e.label))
            if len(enh) == 1 and enh[0].governor == basic.governor and enh[0].label == basic.label:
                deps = "_"
            else:
                deps = "|".join(f"{e.governor}:{e.label}" for e in enh)
            lines.append(
                "\t".join(
                    [
                        str(tok.index),
                        tok.form,
                        tok.lemma or "_",
                        tok.upos or "_",
                        tok.xpos or "_",
                        "_",
                        str(basic.governor),
                        basic.label,
                        deps,
                        tok.misc or "_",
                    ]
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
