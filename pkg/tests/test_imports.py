import pytest

from owlport.errors import ImportFetchError
from owlport.functional import parse_ontology_document
from owlport.imports import dict_fetcher, make_fetcher, resolve_imports

NS = "http://example.org/anatomy#"


def fetch_and_parse(uri, fetcher):
    return parse_ontology_document(fetcher(uri), uri)


def test_transitive_closure_unions_axioms_once(fixture_fetcher):
    base = fetch_and_parse("http://example.org/imports/base.owl", fixture_fetcher)
    merged = resolve_imports(base, fixture_fetcher)
    subs = {(a.sub.iri, a.sup.iri) for a in merged.axioms}
    assert subs == {
        (NS + "Ventricle", NS + "HeartChamber"),
        (NS + "HeartChamber", NS + "AnatomicalStructure"),
    }
    assert set(merged.imports) == {
        "http://example.org/imports/mid.owl",
        "http://example.org/imports/leaf.owl",
    }
    assert merged.labels[NS + "AnatomicalStructure"] == "anatomical structure"
    assert len(merged.axioms) == len(set(merged.axioms))


def test_cycle_terminates_with_each_document_once(fixture_fetcher):
    a = fetch_and_parse("http://example.org/imports/cycle_a.owl", fixture_fetcher)
    merged = resolve_imports(a, fixture_fetcher)
    assert len(merged.axioms) == 2


def test_missing_import_raises_with_iri(fixture_fetcher):
    broken = fetch_and_parse("http://example.org/imports/broken_import.owl", fixture_fetcher)
    with pytest.raises(ImportFetchError) as err:
        resolve_imports(broken, fixture_fetcher)
    assert "no_such_document" in str(err.value)


def test_unparseable_import_raises(fixture_fetcher):
    docs = {
        "http://x.example/root.owl": "Ontology(<http://x.example/root.owl>\nImport(<http://x.example/bad.owl>)\n)",
        "http://x.example/bad.owl": "this is not an ontology",
    }
    root = fetch_and_parse("http://x.example/root.owl", dict_fetcher(docs))
    with pytest.raises(ImportFetchError):
        resolve_imports(root, dict_fetcher(docs))


def test_resolution_is_idempotent(fixture_fetcher):
    base = fetch_and_parse("http://example.org/imports/base.owl", fixture_fetcher)
    once = resolve_imports(base, fixture_fetcher)
    twice = resolve_imports(once, fixture_fetcher)
    assert twice.axiom_set() == once.axiom_set()
    assert twice.labels == once.labels


def test_importing_document_wins_label_conflicts():
    docs = {
        "http://x.example/a.owl": (
            "Prefix(ex:=<http://x.example/ns#>)\n"
            "Ontology(<http://x.example/a.owl>\n"
            "Import(<http://x.example/b.owl>)\n"
            'AnnotationAssertion(rdfs:label ex:X "top label")\n)'
        ),
        "http://x.example/b.owl": (
            "Prefix(ex:=<http://x.example/ns#>)\n"
            "Ontology(<http://x.example/b.owl>\n"
            'AnnotationAssertion(rdfs:label ex:X "imported label")\n'
            'AnnotationAssertion(rdfs:label ex:Y "only here")\n)'
        ),
    }
    fetcher = dict_fetcher(docs)
    merged = resolve_imports(fetch_and_parse("http://x.example/a.owl", fetcher), fetcher)
    assert merged.labels["http://x.example/ns#X"] == "top label"
    assert merged.labels["http://x.example/ns#Y"] == "only here"


def test_input_ontology_is_not_mutated(fixture_fetcher):
    base = fetch_and_parse("http://example.org/imports/base.owl", fixture_fetcher)
    axioms_before = list(base.axioms)
    resolve_imports(base, fixture_fetcher)
    assert base.axioms == axioms_before
    assert base.imports == ["http://example.org/imports/mid.owl"]


def test_file_fetcher_reads_fixture_paths(fixtures_dir):
    fetcher = make_fetcher()
    text = fetcher(str(fixtures_dir / "hp_mini.ofn"))
    assert "HP_0001636" in text


def test_fetch_failure_message_names_target():
    fetcher = make_fetcher()
    with pytest.raises(Exception) as err:
        fetcher("/nonexistent/law/of/the/excluded/middle.ofn")
    assert "excluded" in str(err.value)
