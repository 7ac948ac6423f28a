"""Extended-SPARQL expansion: locate `OWL ... { ... }` directives, run the
embedded ontology queries, and splice the resulting IRIs back in.

Directive grammar:

    OWL [querytype] <service URI> [<ontology URI>] { manchester query }

The query type defaults to subclass; `<>` (or an absent second URI) means
every ontology in the repository. A directive is recognized only inside the
two constructs the rewrite targets: the body of a `VALUES ?var { ... }`
block, or the parenthesized list of a `FILTER ( ?var IN ( ... ) )`
expression. Everything outside directive spans is preserved verbatim.
"""

from __future__ import annotations

import re
import urllib.parse
import urllib.request
from dataclasses import dataclass, field

from .errors import ExecutorError, MalformedDirective, NoSeparator
from .query import QueryType

VALUES_EMBEDDING = "values"
FILTER_IN_EMBEDDING = "filter_in"

_PNAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")
_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_IRIREF_AT = re.compile(r"<[^<>\"{}|^`\\\s]*>")
_VAR_RE = re.compile(r"[?$][A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class OwlDirective:
    query_type: QueryType
    service_uri: str
    ontology_uri: str | None  # None means all ontologies
    owl_query_text: str
    span: tuple[int, int]
    embedding: str  # VALUES_EMBEDDING or FILTER_IN_EMBEDDING
    variable: str
    filter_span: tuple[int, int] | None = None  # span of "?var IN ( ... )"


@dataclass
class ExpansionOptions:
    prefix_form: bool = False
    prefix_overrides: dict[str, str] = field(default_factory=dict)


def _code_mask(text: str) -> list[bool]:
    """True where a character is plain SPARQL code (not string/comment/IRI)."""
    mask = [True] * len(text)
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            j = text.find("\n", i)
            if j < 0:
                j = n
            for k in range(i, j):
                mask[k] = False
            i = j
        elif ch in "'\"":
            if text.startswith(ch * 3, i):
                quote = ch * 3
                j = i + 3
                while j < n and not text.startswith(quote, j):
                    j += 2 if text[j] == "\\" else 1
                j = min(j + 3, n)
            else:
                j = i + 1
                while j < n and text[j] != ch and text[j] != "\n":
                    j += 2 if text[j] == "\\" else 1
                j = min(j + 1, n)
            for k in range(i, j):
                mask[k] = False
            i = j
        elif ch == "<":
            m = _IRIREF_AT.match(text, i)
            if m:
                for k in range(i, m.end()):
                    mask[k] = False
                i = m.end()
            else:
                i += 1
        else:
            i += 1
    return mask


class _Scanner:
    """Forward/backward token steps over the masked text."""

    def __init__(self, text: str, mask: list[bool]):
        self.text = text
        self.mask = mask

    def next_token(self, pos: int):
        """(kind, value, start, end) with kind in {'word','iriref','{','}','(' ,')'} or None."""
        pos = self._skip_noncode(pos)
        if pos >= len(self.text):
            return None
        ch = self.text[pos]
        if not self.mask[pos]:
            m = _IRIREF_AT.match(self.text, pos)
            if m:
                return ("iriref", m.group()[1:-1], pos, m.end())
            return None
        if ch in "{}()":
            return (ch, ch, pos, pos + 1)
        m = _WORD_RE.match(self.text, pos)
        if m:
            return ("word", m.group(), pos, m.end())
        m = _VAR_RE.match(self.text, pos)
        if m:
            return ("var", m.group(), pos, m.end())
        return ("other", ch, pos, pos + 1)

    def _skip_noncode(self, pos: int) -> int:
        n = len(self.text)
        while pos < n:
            if self.mask[pos]:
                if self.text[pos].isspace():
                    pos += 1
                    continue
                return pos
            if self.text[pos] == "<":
                return pos  # IRI refs are masked but meaningful here
            pos += 1
        return pos

    def prev_token(self, pos: int):
        """Token ending at or before `pos`, skipping whitespace and comments."""
        i = pos - 1
        while i >= 0:
            if self.mask[i] and not self.text[i].isspace():
                break
            if not self.mask[i] and self.text[i] == ">":
                break
            i -= 1
        if i < 0:
            return None
        ch = self.text[i]
        if ch in "{}()":
            return (ch, ch, i, i + 1)
        end = i + 1
        start = i
        while start > 0 and self.mask[start - 1] and (self.text[start - 1].isalnum() or self.text[start - 1] in "_"):
            start -= 1
        if start > 0 and self.text[start - 1] in "?$":
            return ("var", self.text[start - 1 : end], start - 1, end)
        value = self.text[start:end]
        if _WORD_RE.fullmatch(value):
            return ("word", value, start, end)
        return ("other", ch, i, end)


def _classify_embedding(scanner: _Scanner, start: int, end: int):
    """Detect the enclosing VALUES block or FILTER-IN list around a directive."""
    before = scanner.prev_token(start)
    if before is not None and before[0] == "{":
        var_tok = scanner.prev_token(before[2])
        if var_tok is not None and var_tok[0] == "var":
            kw = scanner.prev_token(var_tok[2])
            if kw is not None and kw[0] == "word" and kw[1].upper() == "VALUES":
                return (VALUES_EMBEDDING, var_tok[1], None)
    if before is not None and before[0] == "(":
        in_tok = scanner.prev_token(before[2])
        if in_tok is not None and in_tok[0] == "word" and in_tok[1].upper() == "IN":
            var_tok = scanner.prev_token(in_tok[2])
            if var_tok is not None and var_tok[0] == "var":
                closing = scanner.next_token(end)
                if closing is None or closing[0] != ")":
                    raise MalformedDirective((start, end), "FILTER IN list around the directive is not closed")
                return (FILTER_IN_EMBEDDING, var_tok[1], (var_tok[2], closing[3]))
    raise MalformedDirective(
        (start, end), "directive must be the body of a VALUES block or of a FILTER ( ?var IN ( ... ) )"
    )


def scan_owl_blocks(sparql_text: str) -> list[OwlDirective]:
    """Locate every OWL directive; braces in strings, comments and IRIs are inert."""
    mask = _code_mask(sparql_text)
    scanner = _Scanner(sparql_text, mask)
    directives: list[OwlDirective] = []
    for match in re.finditer(r"\bOWL\b", sparql_text):
        start = match.start()
        if not mask[start]:
            continue
        after = match.end()
        if after < len(sparql_text) and sparql_text[after] == ":":
            continue  # prefixed name like OWL:foo, not a directive
        if start > 0 and sparql_text[start - 1] in ":?$":
            continue  # prefixed-name local part or a variable named ?OWL
        pos = match.end()
        query_type = QueryType.SUBCLASS
        tok = scanner.next_token(pos)
        if tok is not None and tok[0] == "word":
            try:
                query_type = QueryType.parse(tok[1])
            except ValueError:
                raise MalformedDirective((start, tok[3]), f"unknown query type {tok[1]!r}") from None
            pos = tok[3]
            tok = scanner.next_token(pos)
        iris: list[str] = []
        while tok is not None and tok[0] == "iriref" and len(iris) < 2:
            iris.append(tok[1])
            pos = tok[3]
            tok = scanner.next_token(pos)
        if not iris:
            raise MalformedDirective((start, pos), "missing service URI")
        if tok is None or tok[0] != "{":
            raise MalformedDirective((start, pos), "missing braces around the OWL query")
        open_brace = tok[2]
        depth = 1
        i = open_brace + 1
        n = len(sparql_text)
        while i < n and depth:
            if mask[i]:
                if sparql_text[i] == "{":
                    depth += 1
                elif sparql_text[i] == "}":
                    depth -= 1
                    if depth == 0:
                        break
            i += 1
        if depth:
            raise MalformedDirective((start, n), "missing closing brace")
        close_brace = i
        owl_query = sparql_text[open_brace + 1 : close_brace].strip()
        span = (start, close_brace + 1)
        embedding, variable, filter_span = _classify_embedding(scanner, start, span[1])
        service_uri = iris[0]
        ontology_uri: str | None = iris[1] if len(iris) > 1 else None
        if ontology_uri == "":
            ontology_uri = None
        directives.append(
            OwlDirective(
                query_type=query_type,
                service_uri=service_uri,
                ontology_uri=ontology_uri,
                owl_query_text=owl_query,
                span=span,
                embedding=embedding,
                variable=variable,
                filter_span=filter_span,
            )
        )
    return directives


def to_curie(iri: str) -> tuple[str, str, str]:
    """(prefix_name, curie, namespace) using the OBO underscore convention.

    `http://purl.obolibrary.org/obo/GO_0008150` splits at the underscore into
    namespace `...GO_` and local `0008150`; otherwise the last '/' or '#'
    separates. namespace + local always reassembles the input IRI.
    """
    sep = max(iri.rfind("/"), iri.rfind("#"))
    segment = iri[sep + 1 :] if sep >= 0 else ""
    if sep >= 0 and "_" in segment:
        underscore = iri.rfind("_")
        namespace = iri[: underscore + 1]
        name = iri[sep + 1 : underscore]
        local = iri[underscore + 1 :]
    elif sep > 0 and segment:
        namespace = iri[: sep + 1]
        prev = namespace[:-1]
        prev_sep = max(prev.rfind("/"), prev.rfind("#"))
        name = prev[prev_sep + 1 :]
        local = segment
    else:
        raise NoSeparator(iri)
    name = re.sub(r"[^A-Za-z0-9_\-]", "", name)
    if not _PNAME_RE.match(name or ""):
        name = "ns" + (name or "")
        if not _PNAME_RE.match(name):
            name = "ns"
    return (name, f"{name}:{local}", namespace)


def find_prefix_declarations(sparql_text: str) -> dict[str, str]:
    """Prefixes declared in the input (last binding wins, as in SPARQL)."""
    mask = _code_mask(sparql_text)
    declared: dict[str, str] = {}
    for match in re.finditer(r"(?i)\bPREFIX\b\s*([A-Za-z0-9_\-]*):\s*(<[^<>\s]*>)", sparql_text):
        if not mask[match.start()]:
            continue
        declared[match.group(1)] = match.group(2)[1:-1]
    return declared


def expand(sparql_text: str, executor, options: ExpansionOptions | None = None) -> str:
    """Replace every OWL directive with its resolved term list.

    `executor(directive)` returns the class IRIs, in query-engine result
    order. VALUES embeddings get whitespace-separated terms, FILTER-IN
    embeddings comma-separated ones; an empty resultset empties the VALUES
    block or replaces the whole `?var IN (...)` with `false`. With
    prefix_form set, IRIs are compacted to CURIEs and missing PREFIX
    declarations are prepended; a prefix already declared in the input is
    left alone, so redefining e.g. GO: rewrites the emitted URIs.
    """
    options = options or ExpansionOptions()
    directives = scan_owl_blocks(sparql_text)
    if not directives:
        return sparql_text
    declared = find_prefix_declarations(sparql_text)
    pending: dict[str, str] = dict(options.prefix_overrides)

    def term_for(iri: str) -> str:
        if not options.prefix_form:
            return f"<{iri}>"
        try:
            name, curie, namespace = to_curie(iri)
        except NoSeparator:
            return f"<{iri}>"
        if name in declared:
            return curie
        if name in pending:
            return curie if pending[name] == namespace else f"<{iri}>"
        pending[name] = namespace
        return curie

    replacements: list[tuple[int, int, str]] = []
    for directive in directives:
        try:
            iris = list(executor(directive))
        except Exception as exc:
            raise ExecutorError(directive, exc) from exc
        terms = [term_for(iri) for iri in iris]
        if directive.embedding == VALUES_EMBEDDING:
            start, end = directive.span
            replacements.append((start, end, " ".join(terms)))
        else:
            if terms:
                start, end = directive.span
                replacements.append((start, end, ", ".join(terms)))
            else:
                start, end = directive.filter_span  # type: ignore[misc]
                replacements.append((start, end, "false"))

    out = sparql_text
    for start, end, replacement in sorted(replacements, reverse=True):
        out = out[:start] + replacement + out[end:]
    if pending:
        header = "".join(f"PREFIX {name}: <{pending[name]}>\n" for name in sorted(pending))
        out = header + out
    return out


def make_repository_executor(repository):
    """Executor answering directives from an in-process repository."""
    from .query import execute_query

    def run(directive: OwlDirective) -> list[str]:
        records = execute_query(
            directive.owl_query_text,
            directive.query_type,
            directive.ontology_uri,
            repository,
        )
        return [record.class_iri for record in records]

    return run


def make_service_executor(base_url: str, timeout: float = 30.0):
    """Executor proxying directives to a remote query service over HTTP."""
    import json

    def run(directive: OwlDirective) -> list[str]:
        params = {"query": directive.owl_query_text, "type": directive.query_type.value}
        if directive.ontology_uri:
            params["ontology"] = directive.ontology_uri
        url = base_url.rstrip("/") + "/service/runquery?" + urllib.parse.urlencode(params)
        with urllib.request.urlopen(url, timeout=timeout) as response:
            records = json.loads(response.read().decode("utf-8"))
        return [record["classIRI"] for record in records]

    return run
