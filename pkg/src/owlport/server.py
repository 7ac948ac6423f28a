"""HTTP/JSON facade over a classified ontology repository.

Endpoints (all under /service, UTF-8 JSON unless noted):

    GET  /service/ontologies                      loaded ontologies
    GET  /service/runquery?query=&type=&ontology= typed Manchester query
    GET  /service/complete?prefix=&limit=         label completion
    GET  /service/literature?query=&query=&...    conjunctive semantic search
    POST /service/expand?prefixForm=&endpoint=    SPARQL directive expansion
    POST /service/ontology?url=                   admit/refresh an ontology

runquery is total: any request carrying a query parameter answers HTTP 200
with a JSON array, empty on any query failure (bad syntax, unknown term,
unreachable ontology). Responses carry permissive CORS headers so the web
console can be served from a different origin.
"""

from __future__ import annotations

import json
import logging
import urllib.error
import urllib.parse
import urllib.request
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import EmptyPrefix, EmptyQuery, OntologyUnavailable, OwlportError
from .literature import build_label_query, hits_to_json, search
from .query import QueryType, execute_query, records_to_json
from .repository import RepositoryManager, parse_listen_address
from .sparql import ExpansionOptions, expand, make_repository_executor
from .trie import Suggestion

LISTEN_ENV_VAR = "OWLPORT_LISTEN"

log = logging.getLogger("owlport.server")


def suggestion_to_dict(suggestion: Suggestion) -> dict:
    return {
        "label": suggestion.label,
        "iri": suggestion.iri,
        "ontologyURI": suggestion.ontology_uri,
        "kind": suggestion.kind,
    }


def suggestions_to_json(suggestions) -> str:
    return json.dumps([suggestion_to_dict(s) for s in suggestions], indent=2, ensure_ascii=False) + "\n"


def ontologies_to_json(manager: RepositoryManager) -> str:
    listing = [
        {"ontologyURI": entry.uri, "classCount": entry.class_count}
        for entry in manager.entries()
    ]
    return json.dumps(listing, indent=2, ensure_ascii=False) + "\n"


def _parse_bool(value: str | None) -> bool:
    return value is not None and value.strip().lower() in {"1", "true", "yes", "on"}


class ServiceServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], manager: RepositoryManager):
        super().__init__(address, ServiceHandler)
        self.manager = manager


class ServiceHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: ServiceServer

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt, *args):
        log.info("%s " + fmt, self.address_string(), *args)

    def _send(self, status: int, body: str, content_type: str = "application/json; charset=utf-8"):
        payload = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _send_plain(self, status: int, message: str):
        self._send(status, message + "\n", content_type="text/plain; charset=utf-8")

    def _param(self, params: dict, name: str) -> str | None:
        values = params.get(name)
        return values[0] if values else None

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length > 0 else b""

    # -- dispatch ---------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        url = urllib.parse.urlsplit(self.path)
        params = urllib.parse.parse_qs(url.query, keep_blank_values=True)
        try:
            if url.path == "/service/ontologies":
                self._send(200, ontologies_to_json(self.server.manager))
            elif url.path == "/service/runquery":
                self._handle_runquery(params)
            elif url.path == "/service/complete":
                self._handle_complete(params)
            elif url.path == "/service/literature":
                self._handle_literature(params)
            else:
                self._send_plain(404, "not found")
        except Exception:
            log.exception("unhandled error serving %s", self.path)
            self._send_plain(500, "internal error")

    def do_POST(self):
        url = urllib.parse.urlsplit(self.path)
        params = urllib.parse.parse_qs(url.query, keep_blank_values=True)
        try:
            if url.path == "/service/expand":
                self._handle_expand(params)
            elif url.path == "/service/ontology":
                self._handle_add_ontology(params)
            else:
                self._send_plain(404, "not found")
        except Exception:
            log.exception("unhandled error serving %s", self.path)
            self._send_plain(500, "internal error")

    # -- handlers ---------------------------------------------------------

    def _handle_runquery(self, params):
        query = self._param(params, "query")
        if query is None:
            self._send_plain(400, "missing required parameter: query")
            return
        ontology = self._param(params, "ontology")
        if ontology in ("", "<>"):
            ontology = None
        try:
            qtype = QueryType.parse(self._param(params, "type"))
            records = execute_query(query, qtype, ontology, self.server.manager)
            body = records_to_json(records)
        except (OwlportError, ValueError) as exc:
            log.info("runquery %r answered empty: %s", query, exc)
            body = records_to_json([])
        self._send(200, body)

    def _handle_complete(self, params):
        prefix = self._param(params, "prefix")
        if prefix is None:
            self._send_plain(400, "missing required parameter: prefix")
            return
        limit = None
        raw_limit = self._param(params, "limit")
        if raw_limit:
            try:
                limit = int(raw_limit)
            except ValueError:
                self._send_plain(400, "limit must be an integer")
                return
            if limit <= 0:
                self._send_plain(400, "limit must be positive")
                return
        try:
            suggestions = self.server.manager.snapshot.trie.complete(prefix, limit)
        except EmptyPrefix:
            self._send_plain(400, "prefix must be non-empty")
            return
        self._send(200, suggestions_to_json(suggestions))

    def _handle_literature(self, params):
        queries = params.get("query") or []
        queries = [q for q in queries if q.strip()]
        if not queries:
            self._send_plain(400, "missing required parameter: query")
            return
        index = self.server.manager.snapshot.literature_index
        if index is None:
            self._send(200, hits_to_json([]))
            return
        ontology = self._param(params, "ontology")
        if ontology in ("", "<>"):
            ontology = None
        limit = None
        raw_limit = self._param(params, "limit")
        if raw_limit:
            try:
                limit = int(raw_limit)
            except ValueError:
                self._send_plain(400, "limit must be an integer")
                return
        label_queries = []
        try:
            for text in queries:
                records = execute_query(text, QueryType.SUBCLASS, ontology, self.server.manager)
                label_queries.append(build_label_query(records))
            hits = search(index, label_queries, limit)
        except (OwlportError, ValueError, EmptyQuery) as exc:
            log.info("literature query answered empty: %s", exc)
            hits = []
        self._send(200, hits_to_json(hits))

    def _handle_expand(self, params):
        try:
            text = self._read_body().decode("utf-8")
        except UnicodeDecodeError:
            self._send_plain(400, "request body must be UTF-8 text")
            return
        options = ExpansionOptions(prefix_form=_parse_bool(self._param(params, "prefixForm")))
        executor = make_repository_executor(self.server.manager)
        try:
            expanded = expand(text, executor, options)
        except OwlportError as exc:
            self._send_plain(400, str(exc))
            return
        endpoint = self._param(params, "endpoint")
        if endpoint:
            self._forward_sparql(endpoint, expanded)
            return
        self._send(200, expanded, content_type="application/sparql-query; charset=utf-8")

    def _forward_sparql(self, endpoint: str, expanded: str):
        """Send the expanded query to a real SPARQL endpoint, pass the answer through."""
        query_string = urllib.parse.urlencode({"query": expanded})
        request = urllib.request.Request(
            endpoint + ("&" if "?" in endpoint else "?") + query_string,
            headers={"Accept": "application/sparql-results+json, */*"},
        )
        try:
            with urllib.request.urlopen(request, timeout=self.server.manager.config.fetch_timeout) as response:
                body = response.read()
                content_type = response.headers.get("Content-Type", "application/octet-stream")
        except (urllib.error.URLError, OSError) as exc:
            self._send_plain(502, f"forwarding to {endpoint} failed: {exc}")
            return
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _handle_add_ontology(self, params):
        url = self._param(params, "url")
        if not url:
            self._send_plain(400, "missing required parameter: url")
            return
        try:
            entry = self.server.manager.add_ontology(url)
        except OntologyUnavailable as exc:
            log.warning("ontology admission failed: %s", exc)
            body = json.dumps({"status": "error", "message": str(exc)}, ensure_ascii=False) + "\n"
            self._send(502, body)
            return
        body = json.dumps(
            {"status": "ok", "ontologyURI": entry.uri, "classCount": entry.class_count},
            ensure_ascii=False,
        ) + "\n"
        self._send(200, body)


def make_server(manager: RepositoryManager, listen: str) -> ServiceServer:
    host, port = parse_listen_address(listen)
    return ServiceServer((host, port), manager)
