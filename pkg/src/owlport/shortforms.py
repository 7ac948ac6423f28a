"""Label/IRI mappings used by the Manchester parser and result rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Ontology, local_name


def normalize_label(text: str) -> str:
    """Lowercase and collapse internal whitespace."""
    return " ".join(text.lower().split())


def _freeze(mapping: dict[str, set[str]]) -> dict[str, frozenset[str]]:
    return {key: frozenset(value) for key, value in mapping.items()}


@dataclass(frozen=True)
class ShortFormProvider:
    by_label: dict[str, frozenset[str]]
    property_by_label: dict[str, frozenset[str]]
    class_local: dict[str, frozenset[str]]
    property_local: dict[str, frozenset[str]]
    label_of: dict[str, str] = field(default_factory=dict)
    property_label_of: dict[str, str] = field(default_factory=dict)
    classes: frozenset[str] = frozenset()
    properties: frozenset[str] = frozenset()

    @classmethod
    def from_ontology(cls, ontology: Ontology) -> "ShortFormProvider":
        by_label: dict[str, set[str]] = {}
        for iri, label in ontology.labels.items():
            by_label.setdefault(normalize_label(label), set()).add(iri)
        property_by_label: dict[str, set[str]] = {}
        for iri, label in ontology.property_labels.items():
            property_by_label.setdefault(normalize_label(label), set()).add(iri)
        class_local: dict[str, set[str]] = {}
        for iri in ontology.classes:
            class_local.setdefault(local_name(iri), set()).add(iri)
        property_local: dict[str, set[str]] = {}
        for iri in ontology.properties:
            property_local.setdefault(local_name(iri), set()).add(iri)
        return cls(
            by_label=_freeze(by_label),
            property_by_label=_freeze(property_by_label),
            class_local=_freeze(class_local),
            property_local=_freeze(property_local),
            label_of=dict(ontology.labels),
            property_label_of=dict(ontology.property_labels),
            classes=frozenset(ontology.classes),
            properties=frozenset(ontology.properties),
        )

    def class_candidates(self, name: str, quoted: bool = False) -> frozenset[str]:
        """Classes a query token may denote: label lookup, then local names."""
        hits = self.by_label.get(normalize_label(name), frozenset())
        if hits or quoted:
            return hits
        return self.class_local.get(name, frozenset())

    def property_candidates(self, name: str, quoted: bool = False) -> frozenset[str]:
        hits = self.property_by_label.get(normalize_label(name), frozenset())
        if hits or quoted:
            return hits
        return self.property_local.get(name, frozenset())

    def class_short(self, iri: str) -> str:
        return self.label_of.get(iri) or local_name(iri)

    def property_short(self, iri: str) -> str:
        return self.property_label_of.get(iri) or local_name(iri)
