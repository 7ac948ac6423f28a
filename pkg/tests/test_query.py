import json

import pytest

from owlport.errors import OntologyUnavailable, UnknownEntity
from owlport.query import ClassRecord, QueryType, execute_query, record_to_dict, records_to_json

OBO = "http://purl.obolibrary.org/obo/"
HP = "http://example.org/hp_mini.owl"
GO = "http://example.org/go_mini.owl"


def iris(records):
    return [r.class_iri for r in records]


def test_query_type_parse_defaults_to_subclass():
    assert QueryType.parse(None) is QueryType.SUBCLASS
    assert QueryType.parse("") is QueryType.SUBCLASS
    assert QueryType.parse("Superclass") is QueryType.SUPERCLASS
    assert QueryType.parse(" EQUIVALENT ") is QueryType.EQUIVALENT
    with pytest.raises(ValueError):
        QueryType.parse("sideways")


def test_record_json_keys_are_exact():
    record = ClassRecord(ontology_uri="o", class_iri="c", label="l", definition="d")
    assert record_to_dict(record) == {"ontologyURI": "o", "classIRI": "c", "label": "l", "definition": "d"}


def test_records_json_shape():
    text = records_to_json([ClassRecord("o", "c", "l", "d")])
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == [{"ontologyURI": "o", "classIRI": "c", "label": "l", "definition": "d"}]


def test_subclass_query_includes_equivalent_defined_class(demo_manager):
    records = execute_query("'ventricular septal defect'", QueryType.SUBCLASS, HP, demo_manager)
    assert iris(records) == [
        OBO + "HP_0001629",
        OBO + "HP_0001636",
        OBO + "HP_0011623",
        OBO + "HP_0011682",
    ]
    by_iri = {r.class_iri: r for r in records}
    tof = by_iri[OBO + "HP_0001636"]
    assert tof.label == "Tetralogy of Fallot"
    assert tof.ontology_uri == HP
    assert tof.definition.startswith("A congenital cardiac malformation")


def test_superclass_query(demo_manager):
    records = execute_query("'ventricular septal defect'", QueryType.SUPERCLASS, HP, demo_manager)
    assert iris(records) == [
        OBO + "HP_0000118",
        OBO + "HP_0001626",
        OBO + "HP_0001627",
        OBO + "HP_0001629",
    ]


def test_equivalent_query(demo_manager):
    conjunction = "'ventricular septal defect' and 'overriding aorta' and 'pulmonic stenosis' and 'right ventricular hypertrophy'"
    records = execute_query(conjunction, QueryType.EQUIVALENT, HP, demo_manager)
    assert iris(records) == [OBO + "HP_0001636"]


def test_existential_query_uses_transitivity(demo_manager):
    records = execute_query("part_of some 'apoptotic process'", QueryType.SUBCLASS, GO, demo_manager)
    assert iris(records) == [OBO + "GO_0006309", OBO + "GO_0097194"]


def test_all_ontologies_skips_unresolvable_labels(demo_manager):
    # the GO label resolves in go_mini only; hp_mini is silently skipped
    records = execute_query("'apoptotic process'", QueryType.SUBCLASS, None, demo_manager)
    assert {r.ontology_uri for r in records} == {GO}


def test_single_ontology_resolution_failure_raises(demo_manager):
    with pytest.raises(UnknownEntity):
        execute_query("'apoptotic process'", QueryType.SUBCLASS, HP, demo_manager)


def test_missing_definition_renders_empty_string(demo_manager):
    records = execute_query("'muscular ventricular septal defect'", QueryType.SUBCLASS, HP, demo_manager)
    assert records[0].definition == ""


def test_label_falls_back_to_local_name(demo_manager):
    records = execute_query("GO_0008150", QueryType.EQUIVALENT, GO, demo_manager)
    assert records[0].label == "biological_process"


def test_unknown_ontology_is_fetched_on_demand():
    from conftest import build_demo_manager

    manager = build_demo_manager()
    assert manager.get("http://example.org/nbo_mini.owl") is None
    records = execute_query("'behavior process'", QueryType.SUPERCLASS, "http://example.org/nbo_mini.owl", manager)
    assert iris(records) == ["http://example.org/nbo#BehaviorProcess"]
    assert manager.get("http://example.org/nbo_mini.owl") is not None


def test_unreachable_ontology_raises_unavailable():
    from conftest import build_demo_manager

    manager = build_demo_manager()
    with pytest.raises(OntologyUnavailable):
        execute_query("owl:Thing", QueryType.SUBCLASS, "http://example.org/really_not_there.owl", manager)
