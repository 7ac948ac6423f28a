"""Repository of classified ontologies with atomic snapshot replacement.

A snapshot is immutable: entries, the completion trie and the literature
index never change after construction. Adding or refreshing an ontology
builds a whole new snapshot and publishes it with a single reference swap,
so concurrent readers always see either the old or the new repository,
never a partially-classified one.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, OntologyUnavailable, RepositoryLoadError
from .functional import parse_ontology_document
from .imports import DEFAULT_MAX_BYTES, DEFAULT_TIMEOUT, Fetcher, make_fetcher, resolve_imports
from .literature import InvertedIndex, index_corpus, load_corpus
from .model import Ontology
from .normalize import NormalizedAxiomSet, normalize
from .reasoner import Reasoner
from .shortforms import ShortFormProvider
from .trie import LabelTrie

DEFAULT_LISTEN = "127.0.0.1:8007"


@dataclass
class RepositoryConfig:
    ontology_uris: list[str] = field(default_factory=list)
    corpus_path: str | None = None
    listen_address: str = DEFAULT_LISTEN
    fetch_timeout: float = DEFAULT_TIMEOUT
    max_fetch_bytes: int = DEFAULT_MAX_BYTES
    mappings: dict[str, str] = field(default_factory=dict)


_CONFIG_KEYS = {"listen", "corpus", "fetch_timeout", "max_fetch_bytes"}


def parse_config(text: str, base_dir: str | Path | None = None) -> RepositoryConfig:
    """Line-oriented config: one ontology URI per line, plus settings.

        # comment
        http://purl.obolibrary.org/obo/hp.owl
        map http://purl.obolibrary.org/obo/hp.owl fixtures/hp_mini.ofn
        corpus = corpus/
        listen = 127.0.0.1:8007
        fetch_timeout = 30

    Relative paths resolve against the config file's directory.
    """
    base = Path(base_dir) if base_dir is not None else None

    def resolved(target: str) -> str:
        if base is not None and "://" not in target and not target.startswith("file:"):
            return str((base / target).resolve())
        return target

    config = RepositoryConfig()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("map "):
            parts = line.split(None, 2)
            if len(parts) != 3:
                raise ConfigError(f"line {line_number}: expected 'map <uri> <target>'")
            config.mappings[parts[1]] = resolved(parts[2])
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in _CONFIG_KEYS:
                if key == "listen":
                    config.listen_address = value
                elif key == "corpus":
                    config.corpus_path = resolved(value)
                elif key == "fetch_timeout":
                    try:
                        config.fetch_timeout = float(value)
                    except ValueError:
                        raise ConfigError(f"line {line_number}: fetch_timeout must be a number") from None
                elif key == "max_fetch_bytes":
                    try:
                        config.max_fetch_bytes = int(value)
                    except ValueError:
                        raise ConfigError(f"line {line_number}: max_fetch_bytes must be an integer") from None
                continue
            if " " not in key:
                raise ConfigError(f"line {line_number}: unknown setting {key!r}")
        config.ontology_uris.append(resolved(line))
    return config


def load_config_file(path: str | Path) -> RepositoryConfig:
    p = Path(path)
    return parse_config(p.read_text("utf-8"), base_dir=p.parent)


def parse_listen_address(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise ConfigError(f"listen address must be host:port, got {listen!r}")
    return host, int(port)


@dataclass(frozen=True)
class OntologyEntry:
    uri: str
    ontology: Ontology
    normalized: NormalizedAxiomSet
    reasoner: Reasoner
    shortforms: ShortFormProvider

    @property
    def class_count(self) -> int:
        return len(self.ontology.classes)


@dataclass(frozen=True)
class Repository:
    """One immutable snapshot of the classified repository."""

    entry_map: dict[str, OntologyEntry]
    trie: LabelTrie
    literature_index: InvertedIndex | None
    load_errors: tuple[tuple[str, str], ...] = ()

    def entries(self) -> list[OntologyEntry]:
        return list(self.entry_map.values())

    def get(self, uri: str) -> OntologyEntry | None:
        return self.entry_map.get(uri)


def build_entry(uri: str, fetcher: Fetcher) -> OntologyEntry:
    try:
        text = fetcher(uri)
    except Exception as exc:
        raise OntologyUnavailable(uri, str(exc)) from exc
    ontology = parse_ontology_document(text, uri)
    ontology = resolve_imports(ontology, fetcher)
    normalized = normalize(ontology)
    return OntologyEntry(
        uri=uri,
        ontology=ontology,
        normalized=normalized,
        reasoner=Reasoner(normalized),
        shortforms=ShortFormProvider.from_ontology(ontology),
    )


def _build_trie(entries) -> LabelTrie:
    trie = LabelTrie()
    for entry in entries:
        for iri, label in entry.ontology.labels.items():
            trie.insert(label, iri, entry.uri, "class")
        for iri, label in entry.ontology.property_labels.items():
            trie.insert(label, iri, entry.uri, "property")
    return trie


class RepositoryManager:
    """Mutable holder publishing immutable snapshots.

    Exposes the repository duck type the query engine expects: entries()
    over the current snapshot plus ensure_ontology() which fetches,
    classifies and publishes unknown ontologies on demand.
    """

    def __init__(self, config: RepositoryConfig, fetcher: Fetcher | None = None):
        self.config = config
        self.fetcher = fetcher or make_fetcher(
            mappings=config.mappings,
            timeout=config.fetch_timeout,
            max_bytes=config.max_fetch_bytes,
        )
        self._write_lock = threading.Lock()
        entries: dict[str, OntologyEntry] = {}
        errors: list[tuple[str, str]] = []
        for uri in config.ontology_uris:
            try:
                entries[uri] = build_entry(uri, self.fetcher)
            except Exception as exc:
                errors.append((uri, str(exc)))
        if config.ontology_uris and not entries:
            raise RepositoryLoadError(
                "no configured ontology could be loaded: "
                + "; ".join(f"<{uri}>: {msg}" for uri, msg in errors)
            )
        literature_index = None
        if config.corpus_path:
            literature_index = index_corpus(load_corpus(config.corpus_path))
        self._snapshot = Repository(
            entry_map=entries,
            trie=_build_trie(entries.values()),
            literature_index=literature_index,
            load_errors=tuple(errors),
        )

    @property
    def snapshot(self) -> Repository:
        return self._snapshot

    def entries(self) -> list[OntologyEntry]:
        return self._snapshot.entries()

    def get(self, uri: str) -> OntologyEntry | None:
        return self._snapshot.get(uri)

    def ensure_ontology(self, uri: str) -> OntologyEntry:
        """Return the entry for `uri`, fetching and classifying it if unknown.

        On failure the current snapshot is left untouched and
        OntologyUnavailable is raised.
        """
        entry = self._snapshot.get(uri)
        if entry is not None:
            return entry
        return self.add_ontology(uri)

    def add_ontology(self, uri: str) -> OntologyEntry:
        """Fetch, classify and atomically publish (or refresh) one ontology."""
        try:
            entry = build_entry(uri, self.fetcher)
        except OntologyUnavailable:
            raise
        except Exception as exc:
            raise OntologyUnavailable(uri, str(exc)) from exc
        with self._write_lock:
            old = self._snapshot
            entry_map = dict(old.entry_map)
            entry_map[uri] = entry
            self._snapshot = Repository(
                entry_map=entry_map,
                trie=_build_trie(entry_map.values()),
                literature_index=old.literature_index,
                load_errors=old.load_errors,
            )
        return entry


def load_repository(config: RepositoryConfig, fetcher: Fetcher | None = None) -> RepositoryManager:
    """Fetch, parse, resolve, classify and index every configured ontology.

    Individual load failures are recorded on the snapshot and the remaining
    ontologies serve; only a fully-failed load is fatal.
    """
    if not config.ontology_uris:
        raise RepositoryLoadError("configuration lists no ontology URIs")
    return RepositoryManager(config, fetcher)
