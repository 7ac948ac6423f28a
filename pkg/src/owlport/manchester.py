"""Manchester-syntax class expressions: parsing against short forms, rendering back.

Grammar (EL subset):

    expression := conjunct ("and" conjunct)*
    conjunct   := primary | property "some" primary
    primary    := quotedLabel | bareName | "(" expression ")"

Quoted labels use single quotes and may contain spaces. Bare names resolve
through labels first, then IRI local names; a bare token containing "://"
or wrapped in angle brackets is taken as a full IRI. Constructs outside EL
("or", "not", "only", cardinality keywords, "value") raise
UnsupportedConstruct.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AmbiguousEntity, ParseError, UnknownEntity, UnsupportedConstruct
from .model import (
    BOTTOM,
    OWL_NOTHING,
    OWL_THING,
    TOP,
    Bottom,
    ClassExpression,
    Conjunction,
    Existential,
    Named,
    Top,
    conjunction_of,
    local_name,
)
from .shortforms import ShortFormProvider

KEYWORDS = {"and", "some"}
UNSUPPORTED_KEYWORDS = {"or", "not", "only", "min", "max", "exactly", "value"}

_BARE_SAFE = re.compile(r"^[^\s()']+$")


@dataclass(frozen=True)
class _NameNode:
    text: str
    quoted: bool


@dataclass(frozen=True)
class _SomeNode:
    prop: _NameNode
    filler: object


@dataclass(frozen=True)
class _AndNode:
    operands: tuple


def _tokenize(text: str) -> list[tuple[str, str]]:
    """Tokens as (kind, value): kind in {'name', 'quoted', '(', ')'}."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "()":
            tokens.append((ch, ch))
            pos += 1
            continue
        if ch == "'":
            end = text.find("'", pos + 1)
            if end < 0:
                raise ParseError(f"unterminated quoted label starting at offset {pos}")
            tokens.append(("quoted", text[pos + 1 : end]))
            pos = end + 1
            continue
        end = pos
        while end < n and not text[end].isspace() and text[end] not in "()'":
            end += 1
        tokens.append(("name", text[pos:end]))
        pos = end
    return tokens


class _SyntaxParser:
    """First phase: structure only; names are resolved afterwards."""

    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of query")
        self.pos += 1
        return tok

    def parse(self):
        expr = self.expression()
        leftover = self.peek()
        if leftover is not None:
            if leftover[0] == "name" and leftover[1].lower() in UNSUPPORTED_KEYWORDS:
                raise UnsupportedConstruct(leftover[1].lower())
            raise ParseError(f"unexpected token {leftover[1]!r}")
        return expr

    def expression(self):
        operands = [self.conjunct()]
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "name":
                break
            keyword = tok[1].lower()
            if keyword == "and":
                self.pos += 1
                operands.append(self.conjunct())
            elif keyword in UNSUPPORTED_KEYWORDS:
                raise UnsupportedConstruct(keyword)
            else:
                break
        if len(operands) == 1:
            return operands[0]
        return _AndNode(tuple(operands))

    def conjunct(self):
        first = self.primary()
        tok = self.peek()
        if tok is not None and tok[0] == "name" and tok[1].lower() == "some":
            if not isinstance(first, _NameNode):
                raise ParseError("expected a property name before 'some'")
            self.pos += 1
            return _SomeNode(first, self.primary())
        return first

    def primary(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a class expression")
        kind, value = tok
        if kind == "(":
            self.pos += 1
            inner = self.expression()
            closing = self.peek()
            if closing is None or closing[0] != ")":
                raise ParseError("missing closing parenthesis")
            self.pos += 1
            return inner
        if kind == ")":
            raise ParseError("unexpected ')'")
        self.pos += 1
        if kind == "quoted":
            if not value.strip():
                raise ParseError("empty quoted label")
            return _NameNode(value, quoted=True)
        keyword = value.lower()
        if keyword in UNSUPPORTED_KEYWORDS:
            raise UnsupportedConstruct(keyword)
        if keyword in KEYWORDS:
            raise ParseError(f"unexpected keyword {value!r}")
        return _NameNode(value, quoted=False)


def _resolve_class(node: _NameNode, shortforms: ShortFormProvider) -> ClassExpression:
    text = node.text
    if not node.quoted:
        if text == "owl:Thing":
            return TOP
        if text == "owl:Nothing":
            return BOTTOM
        iri = None
        if text.startswith("<") and text.endswith(">") and len(text) > 2:
            iri = text[1:-1]
        elif "://" in text:
            iri = text
        if iri is not None:
            if iri == OWL_THING:
                return TOP
            if iri == OWL_NOTHING:
                return BOTTOM
            if iri in shortforms.classes:
                return Named(iri)
            raise UnknownEntity(text)
    candidates = shortforms.class_candidates(text, quoted=node.quoted)
    if not candidates:
        raise UnknownEntity(text)
    if len(candidates) > 1:
        raise AmbiguousEntity(text, sorted(candidates))
    return Named(next(iter(candidates)))


def _resolve_property(node: _NameNode, shortforms: ShortFormProvider) -> str:
    text = node.text
    if not node.quoted:
        iri = None
        if text.startswith("<") and text.endswith(">") and len(text) > 2:
            iri = text[1:-1]
        elif "://" in text:
            iri = text
        if iri is not None:
            if iri in shortforms.properties:
                return iri
            raise UnknownEntity(text)
    candidates = shortforms.property_candidates(text, quoted=node.quoted)
    if not candidates:
        raise UnknownEntity(text)
    if len(candidates) > 1:
        raise AmbiguousEntity(text, sorted(candidates))
    return next(iter(candidates))


def _resolve(node, shortforms: ShortFormProvider) -> ClassExpression:
    if isinstance(node, _NameNode):
        return _resolve_class(node, shortforms)
    if isinstance(node, _SomeNode):
        prop = _resolve_property(node.prop, shortforms)
        return Existential(prop, _resolve(node.filler, shortforms))
    if isinstance(node, _AndNode):
        return conjunction_of(_resolve(op, shortforms) for op in node.operands)
    raise AssertionError(f"unexpected node {node!r}")  # pragma: no cover


def parse_manchester(text: str, shortforms: ShortFormProvider) -> ClassExpression:
    """Parse a Manchester-syntax query string into a canonical ClassExpression.

    Raises ParseError for malformed syntax, UnknownEntity / AmbiguousEntity
    for name resolution failures and UnsupportedConstruct for keywords
    outside the EL subset. Syntax is checked before any name is resolved.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty query")
    tree = _SyntaxParser(tokens).parse()
    return _resolve(tree, shortforms)


def _short_token(label: str) -> str:
    if _BARE_SAFE.match(label) and label.lower() not in KEYWORDS | UNSUPPORTED_KEYWORDS:
        return label
    return f"'{label}'"


def render_manchester(expr: ClassExpression, shortforms: ShortFormProvider) -> str:
    """Render an expression with labels, quoting those that need it.

    parse_manchester(render_manchester(e)) == e whenever every entity has an
    unambiguous short form (an apostrophe inside a label cannot be quoted and
    would break the round trip; ontology curation avoids such labels).
    """

    def class_token(iri: str) -> str:
        label = shortforms.label_of.get(iri)
        if label:
            return _short_token(label)
        return local_name(iri) if iri in shortforms.classes else f"<{iri}>"

    def property_token(iri: str) -> str:
        label = shortforms.property_label_of.get(iri)
        if label:
            return _short_token(label)
        return local_name(iri) if iri in shortforms.properties else f"<{iri}>"

    def primary(e: ClassExpression) -> str:
        if isinstance(e, (Conjunction, Existential)):
            return "(" + render(e) + ")"
        return atom(e)

    def atom(e: ClassExpression) -> str:
        if isinstance(e, Named):
            return class_token(e.iri)
        if isinstance(e, Top):
            return f"<{OWL_THING}>"
        if isinstance(e, Bottom):
            return f"<{OWL_NOTHING}>"
        raise TypeError(f"not a class expression: {e!r}")

    def conjunct(e: ClassExpression) -> str:
        if isinstance(e, Existential):
            return f"{property_token(e.property)} some {primary(e.filler)}"
        return primary(e)

    def render(e: ClassExpression) -> str:
        if isinstance(e, Conjunction):
            return " and ".join(conjunct(op) for op in e.operands)
        return conjunct(e)

    return render(expr)
