"""Document fetching and import-closure resolution."""

from __future__ import annotations

import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path
from typing import Callable

from .errors import ImportFetchError
from .functional import parse_ontology_document
from .model import Ontology

DEFAULT_TIMEOUT = 30.0
DEFAULT_MAX_BYTES = 64 * 1024 * 1024

Fetcher = Callable[[str], str]


class FetchFailure(Exception):
    """A document could not be retrieved; the message states why."""


def _read_capped(stream, max_bytes: int, uri: str) -> bytes:
    data = stream.read(max_bytes + 1)
    if len(data) > max_bytes:
        raise FetchFailure(f"{uri}: response exceeds {max_bytes} bytes")
    return data


def make_fetcher(
    mappings: dict[str, str] | None = None,
    timeout: float = DEFAULT_TIMEOUT,
    max_bytes: int = DEFAULT_MAX_BYTES,
) -> Fetcher:
    """Build a fetcher resolving `file:` URLs, `http(s):` URLs and plain paths.

    `mappings` redirects exact URIs to substitute URIs or local paths before
    dispatch, which keeps remote-looking ontology URIs resolvable offline.
    """
    mappings = dict(mappings or {})

    def fetch(uri: str) -> str:
        target = mappings.get(uri, uri)
        try:
            if target.startswith("file:"):
                parsed = urllib.parse.urlsplit(target)
                path = urllib.request.url2pathname(parsed.path)
                data = _read_capped(open(path, "rb"), max_bytes, uri)
            elif target.startswith(("http://", "https://")):
                request = urllib.request.Request(target, headers={"User-Agent": "owlport"})
                with urllib.request.urlopen(request, timeout=timeout) as response:
                    data = _read_capped(response, max_bytes, uri)
            else:
                data = _read_capped(open(Path(target), "rb"), max_bytes, uri)
        except FetchFailure:
            raise
        except (OSError, urllib.error.URLError, ValueError) as exc:
            raise FetchFailure(f"{uri}: {exc}") from exc
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FetchFailure(f"{uri}: not valid UTF-8 ({exc})") from exc

    return fetch


def dict_fetcher(documents: dict[str, str]) -> Fetcher:
    """In-memory fetcher for tests and programmatic use."""

    def fetch(uri: str) -> str:
        try:
            return documents[uri]
        except KeyError:
            raise FetchFailure(f"{uri}: no such document") from None

    return fetch


def resolve_imports(ontology: Ontology, fetcher: Fetcher) -> Ontology:
    """Merge the transitive import closure into a new Ontology.

    Every document is visited once (cycles terminate); axioms are
    deduplicated by value, annotation maps merge with the importing document
    taking precedence. Raises ImportFetchError if any import cannot be
    retrieved or parsed; the input ontology is never partially mutated.
    """
    merged = Ontology(
        document_uri=ontology.document_uri,
        axioms=list(ontology.axioms),
        labels=dict(ontology.labels),
        definitions=dict(ontology.definitions),
        property_labels=dict(ontology.property_labels),
        classes=set(ontology.classes),
        properties=set(ontology.properties),
        diagnostics=list(ontology.diagnostics),
    )
    seen_axioms = set(merged.axioms)
    visited = {ontology.document_uri}
    closure: list[str] = []
    queue = list(ontology.imports)
    while queue:
        iri = queue.pop(0)
        if iri in visited:
            continue
        visited.add(iri)
        try:
            text = fetcher(iri)
        except FetchFailure as exc:
            raise ImportFetchError(iri, str(exc)) from exc
        except Exception as exc:  # fetcher abstraction may raise anything
            raise ImportFetchError(iri, str(exc)) from exc
        try:
            child = parse_ontology_document(text, iri)
        except Exception as exc:
            raise ImportFetchError(iri, f"parse failure: {exc}") from exc
        closure.append(iri)
        for axiom in child.axioms:
            if axiom not in seen_axioms:
                seen_axioms.add(axiom)
                merged.axioms.append(axiom)
        for key, value in child.labels.items():
            merged.labels.setdefault(key, value)
        for key, value in child.definitions.items():
            merged.definitions.setdefault(key, value)
        for key, value in child.property_labels.items():
            merged.property_labels.setdefault(key, value)
        merged.classes |= child.classes
        merged.properties |= child.properties
        merged.diagnostics.extend(child.diagnostics)
        queue.extend(child.imports)
    merged.imports = closure
    return merged
