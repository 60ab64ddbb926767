"""Pattern matching over dependency graphs.

:func:`find_matches` anchors the pattern head on each candidate token and
satisfies the relation constraints by walking the enhanced edges with
backtracking.  :func:`brute_force_matches` enumerates every assignment of
tokens to pattern nodes and filters; it exists as an independent oracle
for equivalence testing and refuses graphs beyond a small size bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .depgraph import DependencyGraph, Token
from .patterns import Direction, MACRO_RE, NodePattern, PatternAst

BRUTE_FORCE_MAX_TOKENS = 16


@dataclass
class Match:
    """One satisfying assignment: capture name -> token index."""

    bindings: dict[str, int]
    sentence_id: str
    rule_id: int | None = None

    def sort_key(self) -> tuple:
        return tuple(sorted(self.bindings.items()))

    def token(self, graph: DependencyGraph, name: str) -> Token:
        return graph.token(self.bindings[name])


def _node_matches(node: NodePattern, token: Token) -> bool:
    m = node.constraint("form")
    if m is not None and not m.matches(token.form, case_insensitive=True):
        return False
    m = node.constraint("lemma")
    if m is not None and not m.matches(token.lemma, case_insensitive=True):
        return False
    m = node.constraint("pos")
    if m is not None:
        # PTB tags live in xpos; fall back to upos for coarse-only input.
        if not (m.matches(token.xpos, case_insensitive=False) or m.matches(token.upos, case_insensitive=False)):
            return False
    return True


def _reject_macros(pattern: PatternAst) -> None:
    def scan(p: PatternAst) -> None:
        for _, m in p.head.constraints:
            if MACRO_RE.search(m.value):
                raise ValueError(f"pattern contains unexpanded macro in {m.value!r}")
        for rel in p.relations:
            if rel.label is not None and MACRO_RE.search(rel.label.value):
                raise ValueError(f"pattern contains unexpanded macro in {rel.label.value!r}")
            scan(rel.child)

    scan(pattern)


def find_matches(graph: DependencyGraph, pattern: PatternAst) -> list[Match]:
    """All assignments of the (macro-free) pattern to the graph.

    Distinct pattern nodes may bind the same token.  Results are
    deduplicated by binding map and ordered lexicographically by capture
    name then token index.
    """
    _reject_macros(pattern)
    results: dict[tuple, Match] = {}
    for token in graph.tokens:
        for bindings in _match_at(graph, pattern, token, {}):
            key = tuple(sorted(bindings.items()))
            if key not in results:
                results[key] = Match(bindings=dict(bindings), sentence_id=graph.sentence_id)
    return sorted(results.values(), key=Match.sort_key)


def _match_at(
    graph: DependencyGraph, pattern: PatternAst, token: Token, bindings: dict[str, int]
) -> Iterator[dict[str, int]]:
    if not _node_matches(pattern.head, token):
        return
    if pattern.head.capture:
        bindings = {**bindings, pattern.head.capture: token.index}
    yield from _satisfy(graph, pattern.relations, 0, token, bindings)


def _satisfy(
    graph: DependencyGraph,
    relations: tuple,
    i: int,
    anchor: Token,
    bindings: dict[str, int],
) -> Iterator[dict[str, int]]:
    if i == len(relations):
        yield bindings
        return
    rel = relations[i]
    if rel.direction is Direction.GOVERNS:
        edges = graph._by_governor.get(anchor.index, ())
    else:
        edges = graph._by_dependent.get(anchor.index, ())
    for edge in edges:
        if rel.label is not None and not rel.label.matches(edge.label, case_insensitive=False):
            continue
        partner = edge.dependent if rel.direction is Direction.GOVERNS else edge.governor
        if partner == 0:
            continue  # the virtual root is not a matchable token
        for deeper in _match_at(graph, rel.child, graph.token(partner), bindings):
            yield from _satisfy(graph, relations, i + 1, anchor, deeper)


def brute_force_matches(
    graph: DependencyGraph, pattern: PatternAst, max_tokens: int = BRUTE_FORCE_MAX_TOKENS
) -> list[Match]:
    """Oracle: test every |tokens|^|nodes| assignment against the pattern.

    Must agree with :func:`find_matches` on any graph within the size
    bound; intended for tests only.
    """
    _reject_macros(pattern)
    if len(graph.tokens) > max_tokens:
        raise ValueError(
            f"graph {graph.sentence_id} has {len(graph.tokens)} tokens, "
            f"oracle bound is {max_tokens}"
        )

    nodes: list[NodePattern] = []
    edges: list[tuple[int, object, int]] = []  # (parent slot, relation, child slot)

    def collect(p: PatternAst) -> int:
        slot = len(nodes)
        nodes.append(p.head)
        for rel in p.relations:
            child_slot = collect(rel.child)
            edges.append((slot, rel, child_slot))
        return slot

    collect(pattern)

    enhanced = {(e.governor, e.dependent): [] for e in graph.enhanced_edges}
    for e in graph.enhanced_edges:
        enhanced[(e.governor, e.dependent)].append(e.label)

    def assignment_ok(assigned: tuple[Token, ...]) -> bool:
        for node, token in zip(nodes, assigned):
            if not _node_matches(node, token):
                return False
        for parent_slot, rel, child_slot in edges:
            p_tok, c_tok = assigned[parent_slot], assigned[child_slot]
            if rel.direction is Direction.GOVERNS:
                gov, dep = p_tok.index, c_tok.index
            else:
                gov, dep = c_tok.index, p_tok.index
            labels = enhanced.get((gov, dep), ())
            if rel.label is None:
                if not labels:
                    return False
            elif not any(rel.label.matches(lbl, case_insensitive=False) for lbl in labels):
                return False
        return True

    results: dict[tuple, Match] = {}
    for assigned in itertools.product(graph.tokens, repeat=len(nodes)):
        if not assignment_ok(assigned):
            continue
        bindings = {
            node.capture: token.index for node, token in zip(nodes, assigned) if node.capture
        }
        key = tuple(sorted(bindings.items()))
        if key not in results:
            results[key] = Match(bindings=bindings, sentence_id=graph.sentence_id)
    return sorted(results.values(), key=Match.sort_key)
