"""Typed ontology queries producing ClassRecords, plus their JSON wire form."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import AmbiguousEntity, ParseError, UnknownEntity, UnsupportedConstruct
from .manchester import parse_manchester


class QueryType(enum.Enum):
    SUBCLASS = "subclass"
    SUPERCLASS = "superclass"
    EQUIVALENT = "equivalent"

    @classmethod
    def parse(cls, text: str | None) -> "QueryType":
        """Parse a user-supplied type string; empty or missing means subclass."""
        if not text:
            return cls.SUBCLASS
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown query type {text!r}") from None


@dataclass(frozen=True)
class ClassRecord:
    ontology_uri: str
    class_iri: str
    label: str
    definition: str


def record_to_dict(record: ClassRecord) -> dict:
    return {
        "ontologyURI": record.ontology_uri,
        "classIRI": record.class_iri,
        "label": record.label,
        "definition": record.definition,
    }


def records_to_json(records) -> str:
    """Canonical JSON used verbatim by both the HTTP service and the CLI."""
    return json.dumps([record_to_dict(r) for r in records], indent=2, ensure_ascii=False) + "\n"


def _query_one(text: str, qtype: QueryType, entry) -> list[ClassRecord]:
    expr = parse_manchester(text, entry.shortforms)
    classification = entry.reasoner.query_classify(expr)
    if qtype is QueryType.SUBCLASS:
        iris = classification.equivalents | classification.subclasses
    elif qtype is QueryType.SUPERCLASS:
        iris = classification.equivalents | classification.superclasses
    else:
        iris = classification.equivalents
    ontology = entry.ontology
    return [
        ClassRecord(
            ontology_uri=ontology.document_uri,
            class_iri=iri,
            label=ontology.display_label(iri),
            definition=ontology.definition_of(iri),
        )
        for iri in sorted(iris)
    ]


def execute_query(text: str, qtype: QueryType, ontology: str | None, repository) -> list[ClassRecord]:
    """Run one typed query against one ontology or the whole repository.

    Sub- and superclass answers include the classes equivalent to the query
    expression: a class defined equivalent to the queried conjunction is a
    subclass of it in the entailed (non-strict) sense, and retrieving it is
    the point of the exercise. With `ontology=None` every loaded ontology is
    queried in load order (per-ontology resolution failures skipped, since a
    label need not exist everywhere); otherwise failures raise the typed
    error and a missing ontology is fetched and classified on the fly.
    """
    if ontology:
        entry = repository.ensure_ontology(ontology)
        return _query_one(text, qtype, entry)
    records: list[ClassRecord] = []
    for entry in repository.entries():
        try:
            records.extend(_query_one(text, qtype, entry))
        except (ParseError, UnknownEntity, AmbiguousEntity, UnsupportedConstruct):
            continue
    return records
