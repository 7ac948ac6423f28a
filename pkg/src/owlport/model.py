"""Core model: IRIs, class expressions, axioms and parsed ontologies."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

Iri = str

OWL_THING = "http://www.w3.org/2002/07/owl#Thing"
OWL_NOTHING = "http://www.w3.org/2002/07/owl#Nothing"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
DEFINITION_PROPERTY = "http://purl.obolibrary.org/obo/IAO_0000115"

# Namespace reserved for classes introduced during normalization and query
# injection; nothing in this namespace may leak into query answers.
FRESH_NAMESPACE = "urn:owlport:fresh#"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")


def is_absolute_iri(value: str) -> bool:
    if not value:
        return False
    return "://" in value or bool(_SCHEME_RE.match(value))


def is_fresh(iri: Iri) -> bool:
    return iri.startswith(FRESH_NAMESPACE)


def local_name(iri: Iri) -> str:
    """Display fallback: the fragment after the last '#', else after the last '/'.

    Underscores are kept, so .../GO_0008150 yields "GO_0008150".
    """
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    if "/" in iri:
        return iri.rsplit("/", 1)[1]
    return iri


class ClassExpression:
    """Base of the expression language: named class, conjunction, existential."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Named(ClassExpression):
    iri: Iri


@dataclass(frozen=True, slots=True)
class Conjunction(ClassExpression):
    operands: tuple[ClassExpression, ...]  # canonical order, deduplicated, len >= 2


@dataclass(frozen=True, slots=True)
class Existential(ClassExpression):
    property: Iri
    filler: ClassExpression


@dataclass(frozen=True, slots=True)
class Top(ClassExpression):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(ClassExpression):
    pass


TOP = Top()
BOTTOM = Bottom()


def expr_key(expr: ClassExpression) -> str:
    """Stable serialization used for canonical ordering and deduplication."""
    if isinstance(expr, Named):
        return f"<{expr.iri}>"
    if isinstance(expr, Conjunction):
        return "And(" + " ".join(expr_key(o) for o in expr.operands) + ")"
    if isinstance(expr, Existential):
        return f"Some(<{expr.property}> {expr_key(expr.filler)})"
    if isinstance(expr, Top):
        return "Top"
    if isinstance(expr, Bottom):
        return "Bottom"
    raise TypeError(f"not a class expression: {expr!r}")


def conjunction_of(operands) -> ClassExpression:
    """Build a canonical conjunction: flattened, deduplicated, sorted.

    Collapses to the single operand when only one distinct operand remains.
    """
    flat: list[ClassExpression] = []
    for op in operands:
        if isinstance(op, Conjunction):
            flat.extend(op.operands)
        else:
            flat.append(op)
    if not flat:
        raise ValueError("conjunction needs at least one operand")
    seen: dict[str, ClassExpression] = {}
    for op in flat:
        seen.setdefault(expr_key(op), op)
    ordered = [seen[k] for k in sorted(seen)]
    if len(ordered) == 1:
        return ordered[0]
    return Conjunction(tuple(ordered))


def named_classes_in(expr: ClassExpression) -> set[Iri]:
    if isinstance(expr, Named):
        return {expr.iri}
    if isinstance(expr, Conjunction):
        out: set[Iri] = set()
        for op in expr.operands:
            out |= named_classes_in(op)
        return out
    if isinstance(expr, Existential):
        return named_classes_in(expr.filler)
    return set()


def properties_in(expr: ClassExpression) -> set[Iri]:
    if isinstance(expr, Existential):
        return {expr.property} | properties_in(expr.filler)
    if isinstance(expr, Conjunction):
        out: set[Iri] = set()
        for op in expr.operands:
            out |= properties_in(op)
        return out
    return set()


class Axiom:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class SubClassOf(Axiom):
    sub: ClassExpression
    sup: ClassExpression


@dataclass(frozen=True, slots=True)
class EquivalentClasses(Axiom):
    exprs: tuple[ClassExpression, ...]  # len >= 2


@dataclass(frozen=True, slots=True)
class SubPropertyOf(Axiom):
    sub: Iri
    sup: Iri


@dataclass(frozen=True, slots=True)
class PropertyChain(Axiom):
    first: Iri
    second: Iri
    sup: Iri


@dataclass(frozen=True, slots=True)
class TransitiveProperty(Axiom):
    property: Iri


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One skipped construct inside an otherwise valid document."""

    construct: str
    line: int
    detail: str


@dataclass
class Ontology:
    document_uri: Iri
    axioms: list[Axiom] = field(default_factory=list)
    labels: dict[Iri, str] = field(default_factory=dict)
    definitions: dict[Iri, str] = field(default_factory=dict)
    imports: list[Iri] = field(default_factory=list)
    property_labels: dict[Iri, str] = field(default_factory=dict)
    classes: set[Iri] = field(default_factory=set)
    properties: set[Iri] = field(default_factory=set)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def display_label(self, iri: Iri) -> str:
        return self.labels.get(iri) or self.property_labels.get(iri) or local_name(iri)

    def definition_of(self, iri: Iri) -> str:
        return self.definitions.get(iri, "")

    def axiom_set(self) -> frozenset:
        return frozenset(self.axioms)
