import random

import pytest

from causalex.patterns import (
    Direction,
    LexiconSet,
    PatternError,
    builtin_lexicons,
    expand_lexicons,
    macro_names,
    parse_pattern,
    pretty_print,
)

RULE1_SOURCE = "{lemma:/$CLAUSAL_VERB/;pos:/VB.*/}=trigger >/nsubj/ {}=cause >/dobj|obj/ {}=effect"


def test_minimal_pattern():
    ast = parse_pattern("{}=x")
    assert ast.head.capture == "x"
    assert ast.head.constraints == ()
    assert ast.relations == ()


def test_rule1_shape():
    ast = parse_pattern(RULE1_SOURCE)
    assert ast.head.capture == "trigger"
    assert len(ast.head.constraints) == 2
    assert len(ast.relations) == 2
    assert all(rel.direction is Direction.GOVERNS for rel in ast.relations)
    assert ast.relations[0].label.value == "nsubj"
    assert [rel.child.head.capture for rel in ast.relations] == ["cause", "effect"]


def test_governed_by_direction():
    ast = parse_pattern("{}=a </nsubjpass/ {}=b")
    assert ast.relations[0].direction is Direction.GOVERNED_BY


def test_bare_label_and_wildcard():
    ast = parse_pattern("{} >nsubj {} > {}")
    assert ast.relations[0].label.value == "nsubj"
    assert not ast.relations[0].label.is_regex
    assert ast.relations[1].label is None


def test_nested_child_pattern():
    ast = parse_pattern("{}=a >nsubj ({}=b >dobj {}=c)")
    child = ast.relations[0].child
    assert child.head.capture == "b"
    assert child.relations[0].child.head.capture == "c"
    assert ast.node_count() == 3


def test_unbalanced_brace_offset():
    with pytest.raises(PatternError, match=r"unbalanced '\{' at offset 0"):
        parse_pattern("{lemma:cause")


def test_unterminated_regex():
    with pytest.raises(PatternError, match="unterminated regex"):
        parse_pattern("{lemma:/cause}")


def test_duplicate_capture_name():
    with pytest.raises(PatternError, match="duplicate capture name 'x'"):
        parse_pattern("{}=x >nsubj {}=x")


def test_duplicate_attribute():
    with pytest.raises(PatternError, match="duplicate attribute 'lemma'"):
        parse_pattern("{lemma:a;lemma:b}")


def test_unknown_attribute():
    with pytest.raises(PatternError, match="unknown attribute 'word'"):
        parse_pattern("{word:cause}")


def test_errors_carry_offsets_in_range():
    bad_sources = ["{lemma:cause", "{}=x >nsubj {}=x", "{lemma:a;lemma:b}", "{word:x}", "{} %"]
    for source in bad_sources:
        with pytest.raises(PatternError) as exc_info:
            parse_pattern(source)
        assert 0 <= exc_info.value.offset <= len(source)


def test_expand_clausal_noun():
    ast = parse_pattern("{lemma:/$CLAUSAL_NOUN/}")
    out = expand_lexicons(ast, builtin_lexicons())
    assert out.head.constraint("lemma").value == "(cause|result|reason)"


def test_expand_without_macros_is_identity():
    ast = parse_pattern("{lemma:cause;pos:/VB.*/}=t >nsubj {}=c")
    assert expand_lexicons(ast, builtin_lexicons()) == ast


def test_expand_is_idempotent():
    ast = parse_pattern(RULE1_SOURCE)
    once = expand_lexicons(ast, builtin_lexicons())
    twice = expand_lexicons(once, builtin_lexicons())
    assert once == twice


def test_expand_unknown_macro():
    ast = parse_pattern("{lemma:/$UNKNOWN/}")
    with pytest.raises(ValueError, match="unknown lexicon: UNKNOWN"):
        expand_lexicons(ast, builtin_lexicons())


def test_expand_label_macros():
    ast = parse_pattern("{} >/nmod:$RESULT_PREP/ {}")
    out = expand_lexicons(ast, builtin_lexicons())
    assert out.relations[0].label.value == "nmod:(in|to|from)"


def test_expand_macro_in_literal_becomes_regex():
    ast = parse_pattern("{lemma:$CLAUSAL_NOUN}")
    out = expand_lexicons(ast, builtin_lexicons())
    matcher = out.head.constraint("lemma")
    assert matcher.is_regex
    assert matcher.matches("reason", case_insensitive=True)
    assert not matcher.matches("reasons", case_insensitive=True)


def test_macro_names_found_everywhere():
    ast = parse_pattern("{lemma:/$CLAUSAL_VERB/} >/nmod:$RESULT_PREP/ {form:/$CLAUSAL_NOUN/}")
    assert macro_names(ast) == {"CLAUSAL_VERB", "RESULT_PREP", "CLAUSAL_NOUN"}


def test_lexicon_set_rejects_bad_entries():
    with pytest.raises(ValueError):
        LexiconSet({"X": ("Cause",)})
    with pytest.raises(ValueError):
        LexiconSet({"X": ()})


def test_pretty_print_fixed_point():
    assert pretty_print(parse_pattern("{}=x")) == "{}=x"


def test_pretty_print_canonicalizes_whitespace():
    assert pretty_print(parse_pattern("{ lemma : cause }")) == "{lemma:cause}"


def test_pretty_print_rule3_expanded():
    source = "{lemma:/$CLAUSAL_VERB/;pos:VBN}=trigger >/nsubjpass/ {}=effect >/nmod:agent/ {}=cause"
    ast = expand_lexicons(parse_pattern(source), builtin_lexicons())
    assert pretty_print(ast) == (
        "{lemma:/(cause|stimulate|make|derive|trigger|result|lead)/;pos:VBN}=trigger "
        ">/nsubjpass/ {}=effect >/nmod:agent/ {}=cause"
    )


def test_attribute_order_is_canonical():
    a = parse_pattern("{pos:VBN;lemma:cause}")
    b = parse_pattern("{lemma:cause;pos:VBN}")
    assert a == b
    assert pretty_print(a) == "{lemma:cause;pos:VBN}"


def test_roundtrip_builtin_rules():
    from causalex.rules import BUILTIN_RULE_SOURCES

    for _, _, source, _ in BUILTIN_RULE_SOURCES:
        ast = parse_pattern(source)
        assert parse_pattern(pretty_print(ast)) == ast
        expanded = expand_lexicons(ast, builtin_lexicons())
        assert parse_pattern(pretty_print(expanded)) == expanded


# ---------------------------------------------------------------------------
# grammar fuzzing


def random_pattern_source(rng: random.Random, max_nodes: int = 4) -> str:
    """Build a random grammar-valid pattern string with noisy whitespace."""
    counter = [0]
    budget = [rng.randint(1, max_nodes)]

    def ws() -> str:
        return " " * rng.randint(0, 2)

    def node() -> str:
        budget[0] -= 1
        attrs = []
        keys = rng.sample(["form", "lemma", "pos"], k=rng.randint(0, 3))
        for key in sorted(keys):
            if rng.random() < 0.5:
                value = "/" + rng.choice(["VB.*", "NN|NNS", "cause", "a[bc]+", "x"]) + "/"
            else:
                value = rng.choice(["cause", "insomnia", "VBZ", "w1"])
            attrs.append(f"{key}{ws()}:{ws()}{value}")
        out = "{" + ws() + (";" + ws()).join(attrs) + ws() + "}"
        if rng.random() < 0.7:
            counter[0] += 1
            out += f"={rng.choice('abcdefg')}{counter[0]}"
        return out

    def relation() -> str:
        direction = rng.choice("><")
        label = rng.choice(["", "nsubj", "dobj", "/nmod:(of|to)/", "/conj.*/", "nmod:agent"])
        child = node()
        if budget[0] > 0 and rng.random() < 0.3:
            child = "(" + pattern() + ")"
        return f"{direction}{label}{ws()}{child}"

    def pattern() -> str:
        parts = [node()]
        while budget[0] > 0 and rng.random() < 0.5:
            parts.append(relation())
        return ws().join(p + ws() for p in parts).strip()

    return pattern()


def test_roundtrip_fuzzed_patterns():
    rng = random.Random(20240811)
    for _ in range(300):
        source = random_pattern_source(rng)
        ast = parse_pattern(source)
        printed = pretty_print(ast)
        assert parse_pattern(printed) == ast, f"{source!r} -> {printed!r}"
