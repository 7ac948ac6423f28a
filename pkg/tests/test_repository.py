import threading

import pytest

from owlport.errors import ConfigError, OntologyUnavailable, RepositoryLoadError
from owlport.imports import make_fetcher
from owlport.repository import (
    DEFAULT_LISTEN,
    RepositoryConfig,
    RepositoryManager,
    build_entry,
    load_config_file,
    parse_config,
    parse_listen_address,
)

from conftest import FIXTURES, FIXTURE_MAPPINGS, GO_URI, HP_URI, NBO_URI, build_demo_manager

UNFETCHABLE_URI = "http://example.org/unfetchable.owl"
LOCAL_FETCHER = make_fetcher(
    mappings={**FIXTURE_MAPPINGS, UNFETCHABLE_URI: str(FIXTURES / "no_such_file.ofn")}
)


def test_parse_config_collects_uris_and_settings(tmp_path):
    text = (
        "# comment\n"
        "\n"
        "http://example.org/a.owl\n"
        "http://example.org/b.owl\n"
        "map http://example.org/a.owl local/a.ofn\n"
        "corpus = corpus_dir\n"
        "listen = 0.0.0.0:9000\n"
        "fetch_timeout = 12\n"
        "max_fetch_bytes = 1000\n"
    )
    config = parse_config(text, base_dir=tmp_path)
    assert config.ontology_uris == ["http://example.org/a.owl", "http://example.org/b.owl"]
    assert config.mappings["http://example.org/a.owl"] == str(tmp_path / "local" / "a.ofn")
    assert config.corpus_path == str(tmp_path / "corpus_dir")
    assert config.listen_address == "0.0.0.0:9000"
    assert config.fetch_timeout == 12.0
    assert config.max_fetch_bytes == 1000


def test_parse_config_defaults():
    config = parse_config("", base_dir=".")
    assert config.ontology_uris == []
    assert config.listen_address == DEFAULT_LISTEN
    assert config.corpus_path is None


def test_absolute_map_targets_kept_verbatim(tmp_path):
    config = parse_config("map http://a/ http://mirror/a.owl\n", base_dir=tmp_path)
    assert config.mappings["http://a/"] == "http://mirror/a.owl"


def test_malformed_map_line_rejected(tmp_path):
    with pytest.raises(ConfigError, match="map"):
        parse_config("map http://a/\n", base_dir=tmp_path)


def test_unknown_setting_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown setting"):
        parse_config("color = red\n", base_dir=tmp_path)


def test_non_numeric_timeout_rejected(tmp_path):
    with pytest.raises(ConfigError, match="fetch_timeout"):
        parse_config("fetch_timeout = soon\n", base_dir=tmp_path)


def test_load_config_file_resolves_relative_to_its_directory(tmp_path):
    path = tmp_path / "sub" / "repo.cfg"
    path.parent.mkdir()
    path.write_text("corpus = docs\n", "utf-8")
    config = load_config_file(path)
    assert config.corpus_path == str(tmp_path / "sub" / "docs")


def test_parse_listen_address():
    assert parse_listen_address("127.0.0.1:8007") == ("127.0.0.1", 8007)
    assert parse_listen_address("0.0.0.0:80") == ("0.0.0.0", 80)


@pytest.mark.parametrize("value", ["8007", "host:", "host:port", ":9"])
def test_bad_listen_address_rejected(value):
    with pytest.raises(ConfigError):
        parse_listen_address(value)


def test_build_entry_assembles_the_pipeline(fixture_fetcher):
    entry = build_entry(HP_URI, fixture_fetcher)
    assert entry.uri == HP_URI
    assert entry.class_count == 10
    assert entry.reasoner.entails(
        "http://purl.obolibrary.org/obo/HP_0001636", "http://purl.obolibrary.org/obo/HP_0001629"
    )
    assert entry.shortforms.class_short("http://purl.obolibrary.org/obo/HP_0001636") == "Tetralogy of Fallot"


def test_build_entry_wraps_fetch_failures():
    def failing(uri):
        raise OSError("connection refused")

    with pytest.raises(OntologyUnavailable, match="connection refused"):
        build_entry("http://example.org/missing.owl", failing)


def test_manager_loads_all_configured_ontologies(demo_manager):
    repo = demo_manager.snapshot
    assert {e.uri for e in repo.entries()} == {HP_URI, GO_URI}
    assert repo.load_errors == ()
    assert repo.literature_index is not None
    assert len(repo.literature_index.documents) == 50


def test_trie_spans_classes_and_properties(demo_manager):
    repo = demo_manager.snapshot
    labels = {s.label for s in repo.trie.complete("part")}
    assert "part of" in labels
    kinds = {s.kind for s in repo.trie.complete("part of")}
    assert kinds == {"property"}
    assert repo.trie.complete("tetralogy")[0].kind == "class"


def test_get_unknown_ontology_returns_none(demo_manager):
    assert demo_manager.snapshot.get("http://example.org/not-loaded.owl") is None


def test_partial_load_records_errors():
    config = RepositoryConfig(ontology_uris=[HP_URI, UNFETCHABLE_URI])
    manager = RepositoryManager(config, fetcher=LOCAL_FETCHER)
    repo = manager.snapshot
    assert {e.uri for e in repo.entries()} == {HP_URI}
    assert len(repo.load_errors) == 1
    uri, message = repo.load_errors[0]
    assert uri == UNFETCHABLE_URI
    assert message


def test_all_failures_abort_startup():
    config = RepositoryConfig(ontology_uris=[UNFETCHABLE_URI])
    with pytest.raises(RepositoryLoadError):
        RepositoryManager(config, fetcher=LOCAL_FETCHER)


def test_empty_configuration_loads_no_ontologies():
    manager = RepositoryManager(RepositoryConfig(), fetcher=LOCAL_FETCHER)
    assert manager.snapshot.entries() == []


def test_ensure_ontology_returns_existing_entry_untouched():
    manager = build_demo_manager()
    before = manager.snapshot
    entry = manager.ensure_ontology(HP_URI)
    assert entry is before.get(HP_URI)
    assert manager.snapshot is before


def test_ensure_ontology_fetches_unknown_uri_on_demand():
    manager = build_demo_manager()
    before = manager.snapshot
    entry = manager.ensure_ontology(NBO_URI)
    assert entry.class_count > 0
    after = manager.snapshot
    assert after is not before
    assert {e.uri for e in after.entries()} == {HP_URI, GO_URI, NBO_URI}
    # the old snapshot is still a consistent view of the pre-add state
    assert {e.uri for e in before.entries()} == {HP_URI, GO_URI}


def test_add_ontology_extends_the_trie_and_keeps_corpus():
    manager = build_demo_manager()
    assert manager.snapshot.trie.complete("grooming") == []
    manager.add_ontology(NBO_URI)
    repo = manager.snapshot
    assert repo.trie.complete("grooming")[0].ontology_uri == NBO_URI
    assert repo.trie.complete("tetralogy")  # previous entries still indexed
    assert repo.literature_index is not None


def test_add_unfetchable_ontology_raises_and_leaves_state():
    manager = RepositoryManager(load_config_file(FIXTURES / "demo.cfg"), fetcher=LOCAL_FETCHER)
    before = manager.snapshot
    with pytest.raises(OntologyUnavailable):
        manager.add_ontology(UNFETCHABLE_URI)
    assert manager.snapshot is before


def test_concurrent_ensure_produces_one_entry():
    manager = build_demo_manager()
    results = []

    def worker():
        results.append(manager.ensure_ontology(NBO_URI))

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(results) == 6
    assert len({e.uri for e in manager.snapshot.entries()}) == 3


def test_demo_config_file_parses(tmp_path):
    config = load_config_file(FIXTURES / "demo.cfg")
    assert config.ontology_uris == [HP_URI, GO_URI]
    assert config.mappings[NBO_URI].endswith("nbo_mini.ofn")
    assert config.corpus_path == str(FIXTURES / "corpus")
    assert config.listen_address == "127.0.0.1:8007"
