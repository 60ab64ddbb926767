import random

import pytest

from causalex.depgraph import DependencyEdge, DependencyGraph, Token, parse_conllu
from causalex.matcher import Match, brute_force_matches, find_matches
from causalex.patterns import builtin_lexicons, expand_lexicons, parse_pattern
from causalex.rules import builtin_ruleset

from conftest import GOLD_SIMPLE

RULES = builtin_ruleset()
RULE_PATTERNS = {r.id: r.pattern for r in RULES}


def bindings(matches):
    return [m.bindings for m in matches]


def test_rule1_on_gold_simple():
    g = parse_conllu(GOLD_SIMPLE)[0]
    matches = find_matches(g, RULE_PATTERNS[1])
    assert bindings(matches) == [{"trigger": 2, "cause": 1, "effect": 3}]


def test_unconstrained_node_matches_every_token():
    g = parse_conllu(GOLD_SIMPLE)[0]
    matches = find_matches(g, parse_pattern("{}=x"))
    assert bindings(matches) == [{"x": 1}, {"x": 2}, {"x": 3}, {"x": 4}]


def test_rule3_on_passive_fixture(mini_corpus_by_id):
    g = mini_corpus_by_id["t03:0"]
    matches = find_matches(g, RULE_PATTERNS[3])
    assert len(matches) == 1
    m = matches[0]
    assert m.token(g, "trigger").form == "caused"
    assert m.token(g, "effect").form == "insomnia"
    assert m.token(g, "cause").form == "stress"


def test_rule3_does_not_match_active_voice():
    g = parse_conllu(GOLD_SIMPLE)[0]
    assert find_matches(g, RULE_PATTERNS[3]) == []


def test_macro_pattern_rejected():
    g = parse_conllu(GOLD_SIMPLE)[0]
    with pytest.raises(ValueError, match="unexpanded macro"):
        find_matches(g, parse_pattern("{lemma:/$CLAUSAL_VERB/}"))
    with pytest.raises(ValueError, match="unexpanded macro"):
        find_matches(g, parse_pattern("{} >/nmod:$RESULT_PREP/ {}"))
    with pytest.raises(ValueError, match="unexpanded macro"):
        brute_force_matches(g, parse_pattern("{lemma:/$CLAUSAL_VERB/}"))


def test_governed_by_matches():
    g = parse_conllu(GOLD_SIMPLE)[0]
    matches = find_matches(g, parse_pattern("{}=child <nsubj {}=parent"))
    assert bindings(matches) == [{"child": 1, "parent": 2}]


def test_same_token_may_fill_two_nodes():
    g = parse_conllu(GOLD_SIMPLE)[0]
    # both children of "causes" unify on the same wildcard constraints
    matches = find_matches(g, parse_pattern("{}=a >nsubj {} >nsubj {}"))
    assert bindings(matches) == [{"a": 2}]


def test_multiple_witness_edges_yield_one_match():
    tokens = (Token(1, "a", "a"), Token(2, "b", "b"))
    basic = (DependencyEdge(0, 1, "root"), DependencyEdge(1, 2, "dep"))
    enhanced = basic + (DependencyEdge(1, 2, "dep:sub"),)
    g = DependencyGraph("w:0", "a b", tokens, basic, enhanced)
    matches = find_matches(g, parse_pattern("{}=x >/dep.*/ {}=y"))
    assert bindings(matches) == [{"x": 1, "y": 2}]


def test_deterministic_order_and_repeatability(mini_corpus_graphs):
    pattern = parse_pattern("{pos:/NN.*/}=n")
    for g in mini_corpus_graphs:
        first = find_matches(g, pattern)
        second = find_matches(g, pattern)
        assert first == second
        keys = [m.sort_key() for m in first]
        assert keys == sorted(keys)


def test_oracle_agrees_on_examples(mini_corpus_by_id):
    g4 = parse_conllu(GOLD_SIMPLE)[0]
    cases = [
        (g4, RULE_PATTERNS[1]),
        (g4, parse_pattern("{}=x")),
        (mini_corpus_by_id["t03:0"], RULE_PATTERNS[3]),
        (g4, RULE_PATTERNS[3]),
    ]
    for graph, pattern in cases:
        assert find_matches(graph, pattern) == brute_force_matches(graph, pattern)


def test_oracle_counts_assignments():
    g = parse_conllu(GOLD_SIMPLE)[0]
    # 2 pattern nodes over 4 tokens: the oracle filters exactly 16 candidates;
    # spot-check by comparing against an explicit double loop
    pattern = parse_pattern("{}=x >nsubj {}=y")
    expected = []
    for x in g.tokens:
        for y in g.tokens:
            if any(e.governor == x.index and e.dependent == y.index and e.label == "nsubj" for e in g.enhanced_edges):
                expected.append({"x": x.index, "y": y.index})
    assert bindings(brute_force_matches(g, pattern)) == expected


def test_empty_graph_has_no_matches():
    g = DependencyGraph("e:0", "", (), (), ())
    pattern = parse_pattern("{}=x")
    assert find_matches(g, pattern) == []
    assert brute_force_matches(g, pattern) == []


def test_oracle_refuses_large_graphs():
    tokens = tuple(Token(i, f"w{i}", f"w{i}") for i in range(1, 18))
    basic = tuple(
        DependencyEdge(0 if i == 1 else 1, i, "root" if i == 1 else "dep") for i in range(1, 18)
    )
    g = DependencyGraph("big:0", "", tokens, basic, basic)
    with pytest.raises(ValueError, match="oracle bound"):
        brute_force_matches(g, parse_pattern("{}=x"))


def test_oracle_equivalence_on_fixtures(mini_corpus_graphs, extra_graphs):
    graphs = list(mini_corpus_graphs) + list(extra_graphs.values())
    for g in graphs:
        for pattern in RULE_PATTERNS.values():
            assert find_matches(g, pattern) == brute_force_matches(g, pattern)


# ---------------------------------------------------------------------------
# fuzz generators (shared with the acceptance suite)

FUZZ_FORMS = ["stress", "insomnia", "causes", "results", "leads", "school", "eye", "and"]
FUZZ_LEMMAS = ["stress", "insomnia", "cause", "result", "lead", "school", "eye", "and"]
FUZZ_XPOS = ["NN", "NNS", "VBZ", "VBG", "VBN", "JJ", "IN", "CC"]
FUZZ_LABELS = ["nsubj", "dobj", "nmod:of", "nmod:agent", "conj", "advmod", "case", "punct"]


def random_graph(rng: random.Random, max_tokens: int = 8) -> DependencyGraph:
    n = rng.randint(1, max_tokens)
    tokens = tuple(
        Token(
            index=i,
            form=rng.choice(FUZZ_FORMS),
            lemma=rng.choice(FUZZ_LEMMAS),
            upos="X",
            xpos=rng.choice(FUZZ_XPOS),
        )
        for i in range(1, n + 1)
    )
    order = list(range(1, n + 1))
    rng.shuffle(order)
    root = order[0]
    basic = [DependencyEdge(0, root, "root")]
    for pos, idx in enumerate(order[1:], start=1):
        head = order[rng.randrange(pos)]  # attach to an already-placed token
        basic.append(DependencyEdge(head, idx, rng.choice(FUZZ_LABELS)))
    enhanced = list(basic)
    seen = {(e.governor, e.dependent, e.label) for e in enhanced}
    for _ in range(rng.randint(0, 2)):  # extra governors: enhanced-only edges
        dep = rng.randint(1, n)
        gov = rng.randint(1, n)
        if gov == dep:
            continue
        edge = (gov, dep, rng.choice(FUZZ_LABELS))
        if edge not in seen:
            seen.add(edge)
            enhanced.append(DependencyEdge(*edge))
    return DependencyGraph("fuzz:0", "", tokens, tuple(basic), tuple(enhanced))


def random_match_pattern(rng: random.Random, max_nodes: int = 3):
    """Random macro-free pattern AST with at most ``max_nodes`` nodes."""
    from causalex.patterns import (
        AttrMatcher,
        Direction,
        NodePattern,
        PatternAst,
        RelationConstraint,
    )

    budget = [rng.randint(1, max_nodes)]
    counter = [0]

    def node() -> NodePattern:
        budget[0] -= 1
        constraints = []
        if rng.random() < 0.5:
            constraints.append(
                ("lemma", AttrMatcher(rng.choice(FUZZ_LEMMAS + ["(cause|lead)"]), is_regex=rng.random() < 0.5))
            )
        if rng.random() < 0.4:
            constraints.append(("pos", AttrMatcher(rng.choice(["VB.*", "NN", "NNS?", "JJ"]), is_regex=True)))
        counter[0] += 1
        capture = f"n{counter[0]}" if rng.random() < 0.8 else None
        return NodePattern(constraints=tuple(constraints), capture=capture)

    def pattern() -> PatternAst:
        head = node()
        relations = []
        while budget[0] > 0 and rng.random() < 0.6:
            direction = rng.choice([Direction.GOVERNS, Direction.GOVERNED_BY])
            label = None
            if rng.random() < 0.8:
                label = AttrMatcher(rng.choice(FUZZ_LABELS + ["nmod:.*", "nsubj|dobj"]), is_regex=rng.random() < 0.5)
            if budget[0] > 1 and rng.random() < 0.3:
                child = pattern()
            else:
                child = PatternAst(head=node())
            relations.append(RelationConstraint(direction=direction, label=label, child=child))
        return PatternAst(head=head, relations=tuple(relations))

    return pattern()


def test_oracle_equivalence_fuzzed():
    rng = random.Random(987654)
    for _ in range(200):
        g = random_graph(rng)
        p = random_match_pattern(rng)
        assert find_matches(g, p) == brute_force_matches(g, p)


def test_matches_never_bind_out_of_range_fuzzed():
    rng = random.Random(13579)
    for _ in range(100):
        g = random_graph(rng)
        p = random_match_pattern(rng)
        for m in find_matches(g, p):
            for idx in m.bindings.values():
                assert 1 <= idx <= len(g.tokens)


def test_removing_relation_never_shrinks_matches_fuzzed():
    from causalex.patterns import PatternAst

    rng = random.Random(24680)
    checked = 0
    while checked < 60:
        g = random_graph(rng)
        p = random_match_pattern(rng)
        if not p.relations:
            continue
        checked += 1
        full = {m.sort_key() for m in find_matches(g, p)}
        for drop in range(len(p.relations)):
            relations = tuple(rel for i, rel in enumerate(p.relations) if i != drop)
            reduced = PatternAst(head=p.head, relations=relations)
            kept_names = set(reduced.capture_names())
            projected = {
                tuple((k, v) for k, v in key if k in kept_names) for key in full
            }
            wider = {
                tuple((k, v) for k, v in m.sort_key()) for m in find_matches(g, reduced)
            }
            assert projected <= wider
