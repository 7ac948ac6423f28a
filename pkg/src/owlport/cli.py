"""Operator command line.

Subcommands:

    serve     --config <file>                       run the HTTP service
    classify  <ontology> [--taxonomy-out F] [--report-unsat]
    query     <ontology> --type <t> "<expression>"  print JSON class records
    complete  <prefix>                              print completion suggestions
    expand    [--prefix-form] [--endpoint URL] <sparql-file>
    index     --corpus <path> --out <file>          build a literature index
    search    --index <file> "<expression>" [...]   conjunctive literature search

Exit status: 0 success, 1 operational error (load, parse, query or network
failure), 2 usage error. `query` failures still print an empty JSON array on
stdout so shell pipelines always receive well-formed JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import urllib.parse
import urllib.request

from .errors import OwlportError
from .literature import (
    build_label_query,
    hits_to_json,
    index_corpus,
    index_from_json,
    index_to_json,
    load_corpus,
    search,
)
from .query import QueryType, execute_query, records_to_json
from .repository import (
    RepositoryConfig,
    RepositoryManager,
    build_entry,
    load_config_file,
    load_repository,
)
from .imports import make_fetcher
from .reasoner import Taxonomy
from .server import LISTEN_ENV_VAR, make_server, suggestions_to_json
from .sparql import ExpansionOptions, expand, make_repository_executor, make_service_executor


def _add_source_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", metavar="FILE", help="repository configuration file")
    parser.add_argument(
        "--ontology",
        metavar="URI",
        action="append",
        default=[],
        help="ontology document URI or path (repeatable)",
    )
    parser.add_argument(
        "--map",
        metavar=("URI", "TARGET"),
        nargs=2,
        action="append",
        default=[],
        help="fetch URI from a local file or mirror instead (repeatable)",
    )


def _build_config(args) -> RepositoryConfig:
    if args.config:
        config = load_config_file(args.config)
    else:
        config = RepositoryConfig()
    config.ontology_uris.extend(args.ontology)
    for uri, target in args.map:
        config.mappings[uri] = target
    return config


def _build_manager(args) -> RepositoryManager:
    return RepositoryManager(_build_config(args))


def _parse_type(parser: argparse.ArgumentParser, text: str | None) -> QueryType:
    try:
        return QueryType.parse(text)
    except ValueError as exc:
        parser.error(str(exc))


def taxonomy_to_json(taxonomy: Taxonomy) -> str:
    """Serialized class hierarchy: equivalence-class nodes plus parent edges."""
    index_of = {node: i for i, node in enumerate(taxonomy.nodes)}
    payload = {
        "unsatisfiable": sorted(taxonomy.unsatisfiable),
        "nodes": [
            {
                "classes": list(node),
                "parents": sorted(index_of[p] for p in taxonomy.direct_super.get(node, ())),
            }
            for node in taxonomy.nodes
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -- subcommands ------------------------------------------------------------


def cmd_serve(args, parser) -> int:
    try:
        config = load_config_file(args.config)
        listen = args.listen or os.environ.get(LISTEN_ENV_VAR) or config.listen_address
        manager = load_repository(config)
    except (OwlportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for uri, message in manager.snapshot.load_errors:
        print(f"warning: could not load <{uri}>: {message}", file=sys.stderr)
    server = make_server(manager, listen)
    host, port = server.server_address[:2]
    print(f"serving {len(manager.entries())} ontologies on http://{host}:{port}/service", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_classify(args, parser) -> int:
    fetcher = make_fetcher(mappings={uri: target for uri, target in args.map})
    try:
        entry = build_entry(args.ontology, fetcher)
    except OwlportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    taxonomy = entry.reasoner.taxonomy()
    unsat = sorted(taxonomy.unsatisfiable)
    print(
        f"classified <{entry.uri}>: {len(entry.ontology.classes)} classes, "
        f"{len(entry.ontology.axioms)} axioms, {len(unsat)} unsatisfiable"
    )
    if args.report_unsat:
        for iri in unsat:
            label = entry.ontology.labels.get(iri)
            print(f"unsatisfiable: {iri}" + (f" ({label})" if label else ""))
    if args.taxonomy_out:
        try:
            with open(args.taxonomy_out, "w", encoding="utf-8") as handle:
                handle.write(taxonomy_to_json(taxonomy))
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return 0


def cmd_query(args, parser) -> int:
    qtype = _parse_type(parser, args.type)
    ontology = args.ontology_ref
    if ontology in ("all", "<>"):
        ontology = None
    try:
        manager = _build_manager(args)
        records = execute_query(args.expression, qtype, ontology, manager)
        sys.stdout.write(records_to_json(records))
        return 0
    except OwlportError as exc:
        sys.stdout.write(records_to_json([]))
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cmd_complete(args, parser) -> int:
    try:
        manager = _build_manager(args)
        suggestions = manager.snapshot.trie.complete(args.prefix, args.limit)
    except OwlportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(suggestions_to_json(suggestions))
    return 0


def cmd_expand(args, parser) -> int:
    try:
        if args.sparql_file == "-":
            text = sys.stdin.read()
        else:
            with open(args.sparql_file, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.service:
        executor = make_service_executor(args.service)
    else:
        try:
            manager = _build_manager(args)
        except OwlportError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

        def executor(directive):
            if not manager.entries() and directive.ontology_uri is None:
                raise RuntimeError("no ontology source configured; pass --ontology, --config or --service")
            return make_repository_executor(manager)(directive)

    options = ExpansionOptions(prefix_form=args.prefix_form)
    try:
        expanded = expand(text, executor, options)
    except OwlportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.endpoint:
        query_string = urllib.parse.urlencode({"query": expanded})
        url = args.endpoint + ("&" if "?" in args.endpoint else "?") + query_string
        request = urllib.request.Request(url, headers={"Accept": "application/sparql-results+json, */*"})
        try:
            with urllib.request.urlopen(request, timeout=30) as response:
                sys.stdout.buffer.write(response.read())
        except OSError as exc:
            print(f"error: forwarding to {args.endpoint} failed: {exc}", file=sys.stderr)
            return 1
        return 0

    sys.stdout.write(expanded)
    return 0


def cmd_index(args, parser) -> int:
    try:
        documents = load_corpus(args.corpus)
        index = index_corpus(documents)
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(index_to_json(index))
    except (OwlportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"indexed {len(documents)} documents into {args.out}", file=sys.stderr)
    return 0


def cmd_search(args, parser) -> int:
    try:
        with open(args.index, "r", encoding="utf-8") as handle:
            index = index_from_json(handle.read())
    except (OwlportError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        manager = _build_manager(args)
        label_queries = []
        for text in args.expressions:
            records = execute_query(text, QueryType.SUBCLASS, None, manager)
            label_queries.append(build_label_query(records))
        hits = search(index, label_queries, args.limit)
    except OwlportError as exc:
        sys.stdout.write(hits_to_json([]))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(hits_to_json(hits))
    return 0


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="owlport",
        description="Ontology-based data access: classify, query, complete, expand, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", required=True, metavar="FILE")
    p.add_argument("--listen", metavar="HOST:PORT", help=f"overrides config and ${LISTEN_ENV_VAR}")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("classify", help="classify one ontology document")
    p.add_argument("ontology", help="ontology document URI or path")
    p.add_argument("--taxonomy-out", metavar="FILE", help="write the class hierarchy as JSON")
    p.add_argument("--report-unsat", action="store_true", help="list unsatisfiable classes")
    p.add_argument("--map", metavar=("URI", "TARGET"), nargs=2, action="append", default=[])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("query", help="run a Manchester class expression query")
    p.add_argument("ontology_ref", metavar="ontology", help="ontology URI or path ('all' with --config)")
    p.add_argument("expression", help="Manchester OWL class expression")
    p.add_argument("--type", default="subclass", help="subclass (default), superclass or equivalent")
    _add_source_flags(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("complete", help="label completion suggestions")
    p.add_argument("prefix")
    p.add_argument("--limit", type=int)
    _add_source_flags(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("expand", help="expand OWL directives inside a SPARQL query")
    p.add_argument("sparql_file", help="SPARQL file, or - for stdin")
    p.add_argument("--prefix-form", action="store_true", help="emit CURIEs and PREFIX declarations")
    p.add_argument("--endpoint", metavar="URL", help="send the expanded query here, print the response")
    p.add_argument("--service", metavar="URL", help="execute OWL directives against a remote service")
    _add_source_flags(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("index", help="index a document corpus")
    p.add_argument("--corpus", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="semantic literature search over an index")
    p.add_argument("--index", required=True, metavar="FILE")
    p.add_argument("expressions", nargs="+", metavar="expression")
    p.add_argument("--limit", type=int)
    _add_source_flags(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
