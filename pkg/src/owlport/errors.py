"""Exception types shared across the package."""

from __future__ import annotations


class OwlportError(Exception):
    """Base class for all owlport errors."""


class OntologySyntaxError(OwlportError):
    """Lexical or grammatical failure in an ontology document."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ImportFetchError(OwlportError):
    def __init__(self, iri: str, cause: str = ""):
        detail = f"cannot fetch import <{iri}>"
        if cause:
            detail += f": {cause}"
        super().__init__(detail)
        self.iri = iri
        self.cause = cause


class OntologyUnavailable(OwlportError):
    def __init__(self, uri: str, cause: str = ""):
        detail = f"ontology <{uri}> is not available"
        if cause:
            detail += f": {cause}"
        super().__init__(detail)
        self.uri = uri
        self.cause = cause


class ParseError(OwlportError):
    """Malformed Manchester-syntax query text."""


class UnknownEntity(OwlportError):
    def __init__(self, name: str):
        super().__init__(f"no class or property matches {name!r}")
        self.name = name


class AmbiguousEntity(OwlportError):
    def __init__(self, name: str, candidates):
        cands = sorted(candidates)
        super().__init__(f"{name!r} matches more than one entity: {', '.join(cands)}")
        self.name = name
        self.candidates = cands


class UnsupportedConstruct(OwlportError):
    def __init__(self, keyword: str):
        super().__init__(f"construct {keyword!r} is outside the supported query language")
        self.keyword = keyword


class EmptyPrefix(OwlportError):
    """Completion prefix normalizes to the empty string."""


class DuplicateDocId(OwlportError):
    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id {doc_id!r}")
        self.doc_id = doc_id


class EmptyQuery(OwlportError):
    """No label survived analysis; the literature query would match nothing."""


class CorpusFormatError(OwlportError):
    """A corpus document file does not follow the keyed text format."""


class MalformedDirective(OwlportError):
    def __init__(self, span: tuple[int, int], reason: str):
        super().__init__(f"malformed OWL directive at {span[0]}..{span[1]}: {reason}")
        self.span = span
        self.reason = reason


class ExecutorError(OwlportError):
    def __init__(self, directive, cause: Exception):
        super().__init__(f"directive execution failed: {cause}")
        self.directive = directive
        self.cause = cause


class NoSeparator(OwlportError):
    def __init__(self, iri: str):
        super().__init__(f"<{iri}> has no namespace/local-part split point")
        self.iri = iri


class RepositoryLoadError(OwlportError):
    """No configured ontology could be loaded; the service cannot start."""


class ConfigError(OwlportError):
    """Invalid repository configuration file."""
