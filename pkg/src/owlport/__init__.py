"""Ontology-based data access over OWL EL: reasoning-backed queries, term
completion, semantic literature search and SPARQL resultset expansion."""

from .errors import OwlportError
from .functional import parse_ontology_document
from .imports import make_fetcher, resolve_imports
from .manchester import parse_manchester, render_manchester
from .model import Ontology
from .normalize import normalize
from .query import ClassRecord, QueryType, execute_query, records_to_json
from .reasoner import Reasoner, build_taxonomy, saturate
from .repository import RepositoryConfig, RepositoryManager, load_config_file, load_repository
from .sparql import ExpansionOptions, expand, scan_owl_blocks, to_curie
from .trie import LabelTrie

__version__ = "0.1.0"

__all__ = [
    "ClassRecord",
    "ExpansionOptions",
    "LabelTrie",
    "Ontology",
    "OwlportError",
    "QueryType",
    "Reasoner",
    "RepositoryConfig",
    "RepositoryManager",
    "__version__",
    "build_taxonomy",
    "execute_query",
    "expand",
    "load_config_file",
    "load_repository",
    "make_fetcher",
    "normalize",
    "parse_manchester",
    "parse_ontology_document",
    "records_to_json",
    "render_manchester",
    "resolve_imports",
    "saturate",
    "scan_owl_blocks",
    "to_curie",
]
