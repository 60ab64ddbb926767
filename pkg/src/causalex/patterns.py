"""Pattern language for querying dependency graphs.

A pattern is a node description plus a conjunction of labeled relations
to further nodes, in the style of Semgrex::

    {lemma:/$CLAUSAL_VERB/;pos:/VB.*/}=trigger >/nsubj/ {}=cause >/dobj|obj/ {}=effect

Grammar:

    Pattern  := Node Rel*
    Node     := '{' AttrList? '}' ('=' Ident)?  |  '(' Pattern ')'
    AttrList := Attr (';' Attr)*
    Attr     := ('form'|'lemma'|'pos') ':' ( '/' regex '/' | Literal )
    Rel      := ('>' | '<') LabelSpec? Node
    LabelSpec:= '/' regex '/' | BareLabel

``>`` reads "governs": the node on the left is the governor of the node
on the right.  ``<`` is the inverse.  Regexes are anchored to the full
attribute value or edge label.  Lemma and form match case-insensitively,
pos case-sensitively.  ``$NAME`` inside a regex or literal refers to a
named lexicon and expands to an alternation of its entries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache

ATTRIBUTE_KEYS = ("form", "lemma", "pos")
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
MACRO_RE = re.compile(r"\$([A-Za-z_][A-Za-z0-9_]*)")
BARE_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_:.]*")


class PatternError(ValueError):
    """Pattern syntax or semantics error, carrying a source offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class Direction(Enum):
    GOVERNS = ">"
    GOVERNED_BY = "<"


@dataclass(frozen=True)
class AttrMatcher:
    """Anchored matcher for one attribute: a regex or a literal word."""

    value: str
    is_regex: bool

    def matches(self, text: str, case_insensitive: bool) -> bool:
        return _compiled_matcher(self.value, self.is_regex, case_insensitive).fullmatch(text) is not None


@dataclass(frozen=True)
class NodePattern:
    """Constraints on a single token plus an optional capture name.

    Constraints behave as a map keyed by attribute name; they are stored
    in canonical (form, lemma, pos) order so equality ignores the order
    they were written in.
    """

    constraints: tuple[tuple[str, AttrMatcher], ...] = ()
    capture: str | None = None

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.constraints, key=lambda kv: ATTRIBUTE_KEYS.index(kv[0])))
        object.__setattr__(self, "constraints", ordered)

    def constraint(self, key: str) -> AttrMatcher | None:
        for k, m in self.constraints:
            if k == key:
                return m
        return None


@dataclass(frozen=True)
class RelationConstraint:
    direction: Direction
    label: AttrMatcher | None
    child: "PatternAst"


@dataclass(frozen=True)
class PatternAst:
    head: NodePattern
    relations: tuple[RelationConstraint, ...] = ()

    def capture_names(self) -> list[str]:
        names = []
        if self.head.capture:
            names.append(self.head.capture)
        for rel in self.relations:
            names.extend(rel.child.capture_names())
        return names

    def node_count(self) -> int:
        return 1 + sum(rel.child.node_count() for rel in self.relations)


@dataclass
class LexiconSet:
    """Named word lists referenced from patterns via ``$NAME``."""

    entries: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, words in self.entries.items():
            if not words or any(not w or w != w.lower() for w in words):
                raise ValueError(f"lexicon {name}: entries must be non-empty lowercase words")

    def define(self, name: str, words: list[str] | tuple[str, ...]) -> None:
        words = tuple(words)
        if not words or any(not w or w != w.lower() for w in words):
            raise ValueError(f"lexicon {name}: entries must be non-empty lowercase words")
        self.entries[name] = words

    def alternation(self, name: str) -> str:
        if name not in self.entries:
            raise KeyError(name)
        return "(" + "|".join(self.entries[name]) + ")"


def builtin_lexicons() -> LexiconSet:
    """Word lists behind the built-in causal rules."""
    return LexiconSet(
        {
            "CLAUSAL_VERB": ("cause", "stimulate", "make", "derive", "trigger", "result", "lead"),
            "CLAUSAL_NOUN": ("cause", "result", "reason"),
            "RESULT_PREP": ("in", "to", "from"),
        }
    )


@lru_cache(maxsize=1024)
def _compiled_matcher(value: str, is_regex: bool, case_insensitive: bool) -> re.Pattern:
    flags = re.IGNORECASE if case_insensitive else 0
    return re.compile(value if is_regex else re.escape(value), flags)


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.captures_seen: set[str] = set()

    def error(self, message: str, offset: int | None = None) -> PatternError:
        return PatternError(message, self.pos if offset is None else offset)

    def skip_ws(self) -> None:
        while self.pos < len(self.source) and self.source[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.source[self.pos] if self.pos < len(self.source) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def parse(self) -> PatternAst:
        self.skip_ws()
        ast = self.parse_pattern()
        self.skip_ws()
        if self.pos != len(self.source):
            raise self.error(f"unexpected character {self.peek()!r}")
        return ast

    def parse_pattern(self) -> PatternAst:
        head, inner = self.parse_node()
        relations = list(inner)
        self.skip_ws()
        while self.peek() in (">", "<"):
            relations.append(self.parse_relation())
            self.skip_ws()
        return PatternAst(head=head, relations=tuple(relations))

    def parse_node(self) -> tuple[NodePattern, tuple[RelationConstraint, ...]]:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            sub = self.parse_pattern()
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("unbalanced '('")
            self.pos += 1
            return sub.head, sub.relations
        if self.peek() != "{":
            raise self.error("expected '{' or '('")
        open_offset = self.pos
        self.pos += 1
        constraints: list[tuple[str, AttrMatcher]] = []
        self.skip_ws()
        if self.peek() != "}":
            while True:
                constraints.append(self.parse_attr(constraints, open_offset))
                self.skip_ws()
                if self.peek() == ";":
                    self.pos += 1
                    continue
                break
        if self.peek() != "}":
            raise self.error("unbalanced '{'", open_offset)
        self.pos += 1
        capture = None
        if self.peek() == "=":
            self.pos += 1
            name_offset = self.pos
            capture = self.parse_ident()
            if capture in self.captures_seen:
                raise self.error(f"duplicate capture name {capture!r}", name_offset)
            self.captures_seen.add(capture)
        return NodePattern(constraints=tuple(constraints), capture=capture), ()

    def parse_attr(
        self, existing: list[tuple[str, AttrMatcher]], open_offset: int
    ) -> tuple[str, AttrMatcher]:
        self.skip_ws()
        key_offset = self.pos
        m = IDENT_RE.match(self.source, self.pos)
        if not m:
            if self.pos >= len(self.source):
                raise self.error("unbalanced '{'", open_offset)
            raise self.error("expected attribute name")
        key = m.group(0)
        self.pos = m.end()
        if key not in ATTRIBUTE_KEYS:
            raise self.error(f"unknown attribute {key!r}", key_offset)
        if any(k == key for k, _ in existing):
            raise self.error(f"duplicate attribute {key!r}", key_offset)
        self.skip_ws()
        self.expect(":")
        self.skip_ws()
        return key, self.parse_matcher(terminators=";}")

    def parse_matcher(self, terminators: str) -> AttrMatcher:
        if self.peek() == "/":
            return self.parse_regex()
        start = self.pos
        while self.pos < len(self.source) and self.source[self.pos] not in terminators:
            self.pos += 1
        literal = self.source[start : self.pos].strip()
        if not literal:
            raise self.error("empty attribute value", start)
        return AttrMatcher(value=literal, is_regex=False)

    def parse_regex(self) -> AttrMatcher:
        start = self.pos
        self.pos += 1
        chars = []
        while self.pos < len(self.source):
            c = self.source[self.pos]
            if c == "\\" and self.pos + 1 < len(self.source):
                chars.append(c)
                chars.append(self.source[self.pos + 1])
                self.pos += 2
                continue
            if c == "/":
                self.pos += 1
                value = "".join(chars)
                try:
                    re.compile(value)
                except re.error as exc:
                    raise self.error(f"invalid regex ({exc})", start) from None
                return AttrMatcher(value=value, is_regex=True)
            chars.append(c)
            self.pos += 1
        raise self.error("unterminated regex", start)

    def parse_ident(self) -> str:
        m = IDENT_RE.match(self.source, self.pos)
        if not m:
            raise self.error("expected capture name")
        self.pos = m.end()
        return m.group(0)

    def parse_relation(self) -> RelationConstraint:
        direction = Direction.GOVERNS if self.peek() == ">" else Direction.GOVERNED_BY
        self.pos += 1
        self.skip_ws()
        label: AttrMatcher | None = None
        if self.peek() == "/":
            label = self.parse_regex()
        else:
            m = BARE_LABEL_RE.match(self.source, self.pos)
            if m:
                label = AttrMatcher(value=m.group(0), is_regex=False)
                self.pos = m.end()
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            child = self.parse_pattern()
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("unbalanced '('")
            self.pos += 1
        else:
            head, _ = self.parse_node()
            child = PatternAst(head=head)
        return RelationConstraint(direction=direction, label=label, child=child)


def parse_pattern(source: str) -> PatternAst:
    """Parse pattern source into an AST; macros stay symbolic."""
    return _Parser(source).parse()


def macro_names(ast: PatternAst) -> set[str]:
    """All ``$NAME`` lexicon references anywhere in the pattern."""
    names: set[str] = set()

    def visit(p: PatternAst) -> None:
        for _, m in p.head.constraints:
            names.update(MACRO_RE.findall(m.value))
        for rel in p.relations:
            if rel.label is not None:
                names.update(MACRO_RE.findall(rel.label.value))
            visit(rel.child)

    visit(ast)
    return names


def expand_lexicons(ast: PatternAst, lexicons: LexiconSet) -> PatternAst:
    """Replace every ``$NAME`` with an alternation of the lexicon entries.

    Expanding an already-expanded pattern is the identity.  A literal
    matcher containing a macro becomes a regex (the alternation must
    alternate), with the surrounding literal text escaped.
    """

    def expand_matcher(m: AttrMatcher) -> AttrMatcher:
        if not MACRO_RE.search(m.value):
            return m
        if m.is_regex:
            value = MACRO_RE.sub(lambda g: _lookup(lexicons, g.group(1)), m.value)
        else:
            pieces = []
            last = 0
            for g in MACRO_RE.finditer(m.value):
                pieces.append(re.escape(m.value[last : g.start()]))
                pieces.append(_lookup(lexicons, g.group(1)))
                last = g.end()
            pieces.append(re.escape(m.value[last:]))
            value = "".join(pieces)
        try:
            re.compile(value)
        except re.error as exc:
            raise ValueError(f"expansion produced invalid regex {value!r}: {exc}") from None
        return AttrMatcher(value=value, is_regex=True)

    def visit(p: PatternAst) -> PatternAst:
        head = replace(
            p.head,
            constraints=tuple((k, expand_matcher(m)) for k, m in p.head.constraints),
        )
        relations = tuple(
            replace(
                rel,
                label=expand_matcher(rel.label) if rel.label is not None else None,
                child=visit(rel.child),
            )
            for rel in p.relations
        )
        return PatternAst(head=head, relations=relations)

    return visit(ast)


def _lookup(lexicons: LexiconSet, name: str) -> str:
    try:
        return lexicons.alternation(name)
    except KeyError:
        raise ValueError(f"unknown lexicon: {name}") from None


def pretty_print(ast: PatternAst) -> str:
    """Canonical single-line rendering; reparses to an equal AST."""
    return _render_pattern(ast)


def _render_pattern(ast: PatternAst) -> str:
    parts = [_render_node(ast.head)]
    for rel in ast.relations:
        label = ""
        if rel.label is not None:
            label = f"/{rel.label.value}/" if rel.label.is_regex else rel.label.value
        child = _render_pattern(rel.child)
        if rel.child.relations:
            child = f"({child})"
        parts.append(f"{rel.direction.value}{label} {child}")
    return " ".join(parts)


def _render_node(node: NodePattern) -> str:
    attrs = []
    for key in ATTRIBUTE_KEYS:
        m = node.constraint(key)
        if m is not None:
            attrs.append(f"{key}:" + (f"/{m.value}/" if m.is_regex else m.value))
    out = "{" + ";".join(attrs) + "}"
    if node.capture:
        out += f"={node.capture}"
    return out
