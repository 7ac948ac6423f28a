"""Parser and serializer for ontology documents in a functional-style syntax.

Supported constructs: Prefix, Ontology, Import, Declaration, SubClassOf,
EquivalentClasses, SubObjectPropertyOf (including ObjectPropertyChain of
length 2), TransitiveObjectProperty, AnnotationAssertion, and the class
expression constructors ObjectIntersectionOf / ObjectSomeValuesFrom.
Recognized constructs outside this set (unions, complements, universals,
cardinality restrictions, disjointness and property characteristics other
than transitivity) are skipped with a diagnostic; unknown constructs are a
syntax error.
"""

from __future__ import annotations

import re

from .errors import OntologySyntaxError
from .model import (
    BOTTOM,
    DEFINITION_PROPERTY,
    OWL_NOTHING,
    OWL_THING,
    RDFS_LABEL,
    TOP,
    Axiom,
    ClassExpression,
    Conjunction,
    Diagnostic,
    EquivalentClasses,
    Existential,
    Named,
    Ontology,
    PropertyChain,
    SubClassOf,
    SubPropertyOf,
    Top,
    TransitiveProperty,
    conjunction_of,
    named_classes_in,
    properties_in,
)

BUILTIN_PREFIXES = {
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

# Class expression constructors outside the supported subset. Hitting one of
# these skips the enclosing axiom with a diagnostic.
UNSUPPORTED_EXPRESSIONS = {
    "ObjectUnionOf",
    "ObjectComplementOf",
    "ObjectAllValuesFrom",
    "ObjectMinCardinality",
    "ObjectMaxCardinality",
    "ObjectExactCardinality",
    "ObjectOneOf",
    "ObjectHasValue",
    "ObjectHasSelf",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
    "DataHasValue",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
}

# Axiom heads that are recognized but carry no EL content here; the whole
# axiom is skipped with a diagnostic.
UNSUPPORTED_AXIOMS = {
    "DisjointClasses",
    "DisjointUnion",
    "ObjectPropertyDomain",
    "ObjectPropertyRange",
    "InverseObjectProperties",
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "EquivalentObjectProperties",
    "DisjointObjectProperties",
    "SubDataPropertyOf",
    "EquivalentDataProperties",
    "DisjointDataProperties",
    "DataPropertyDomain",
    "DataPropertyRange",
    "FunctionalDataProperty",
    "ClassAssertion",
    "ObjectPropertyAssertion",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "SameIndividual",
    "DifferentIndividuals",
    "DatatypeDefinition",
    "HasKey",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<iriref><[^<>"{}|^`\\\s]*>)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<pname>(?:[A-Za-z_][A-Za-z0-9_.\-]*)?:[A-Za-z0-9_.\-]*)
    | (?P<ident>[A-Za-z][A-Za-z0-9]*)
    | (?P<lang>@[A-Za-z][A-Za-z0-9\-]*)
    | (?P<caret>\^\^)
    | (?P<eq>=)
    | (?P<lparen>\()
    | (?P<rparen>\))
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind: str, value: str, line: int, column: int):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column

    def __repr__(self):  # pragma: no cover
        return f"_Token({self.kind}, {self.value!r}, {self.line}:{self.column})"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise OntologySyntaxError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    return tokens


def _unescape(literal: str) -> str:
    # literal includes the surrounding double quotes
    body = literal[1:-1]
    return body.replace('\\"', '"').replace("\\\\", "\\")


class _Unsupported(Exception):
    """Internal signal: an unsupported construct inside an axiom."""

    def __init__(self, keyword: str, line: int):
        self.keyword = keyword
        self.line = line


class _Parser:
    def __init__(self, text: str, document_uri: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes = dict(BUILTIN_PREFIXES)
        self.ontology = Ontology(document_uri=document_uri)
        self.declared_classes: set[str] = set()
        self.declared_properties: set[str] = set()
        self.pending_labels: list[tuple[str, str]] = []
        self.pending_definitions: list[tuple[str, str]] = []

    # --- token plumbing ---

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expected: str) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.column + len(last.value) if last else 1
            raise OntologySyntaxError(line, col, f"unexpected end of input, expected {expected}")
        self.pos += 1
        return tok

    def _expect(self, kind: str, expected: str) -> _Token:
        tok = self._next(expected)
        if tok.kind != kind:
            raise OntologySyntaxError(tok.line, tok.column, f"expected {expected}, found {tok.value!r}")
        return tok

    def _error(self, tok: _Token, message: str):
        raise OntologySyntaxError(tok.line, tok.column, message)

    # --- entity references ---

    def _resolve(self, tok: _Token) -> str:
        if tok.kind == "iriref":
            return tok.value[1:-1]
        if tok.kind == "pname":
            prefix, _, local = tok.value.partition(":")
            ns = self.prefixes.get(prefix)
            if ns is None:
                self._error(tok, f"undeclared prefix {prefix!r}")
            return ns + local
        self._error(tok, f"expected IRI, found {tok.value!r}")
        raise AssertionError  # unreachable

    def _iri(self, expected: str = "IRI") -> str:
        tok = self._next(expected)
        return self._resolve(tok)

    # --- structure skipping ---

    def _skip_balanced(self):
        """Consume a parenthesized group, assuming '(' is next."""
        self._expect("lparen", "'('")
        depth = 1
        while depth:
            tok = self._next("')'")
            if tok.kind == "lparen":
                depth += 1
            elif tok.kind == "rparen":
                depth -= 1

    def _skip_to_close(self, depth: int):
        """Consume tokens until `depth` closing parens have been matched."""
        while depth:
            tok = self._next("')'")
            if tok.kind == "lparen":
                depth += 1
            elif tok.kind == "rparen":
                depth -= 1

    # --- grammar ---

    def parse(self) -> Ontology:
        while True:
            tok = self._peek()
            if tok is None:
                self._error(_Token("ident", "", 1, 1), "empty document, expected Ontology(...)")
            if tok.kind == "ident" and tok.value == "Prefix":
                self._parse_prefix()
            elif tok.kind == "ident" and tok.value == "Ontology":
                self._parse_ontology()
                break
            else:
                self._error(tok, f"expected Prefix or Ontology, found {tok.value!r}")
        trailing = self._peek()
        if trailing is not None:
            self._error(trailing, f"unexpected content after Ontology block: {trailing.value!r}")
        self._finalize()
        return self.ontology

    def _parse_prefix(self):
        self._next("Prefix")
        self._expect("lparen", "'('")
        name_tok = self._expect("pname", "prefix name like 'go:'")
        prefix, _, local = name_tok.value.partition(":")
        if local:
            self._error(name_tok, "prefix declaration must end with ':'")
        self._expect("eq", "'='")
        iri_tok = self._expect("iriref", "IRI")
        self._expect("rparen", "')'")
        self.prefixes[prefix] = iri_tok.value[1:-1]

    def _parse_ontology(self):
        self._next("Ontology")
        self._expect("lparen", "'('")
        # optional ontology IRI and version IRI; informational only
        while True:
            tok = self._peek()
            if tok is not None and tok.kind == "iriref":
                self.pos += 1
            else:
                break
        while True:
            tok = self._peek()
            if tok is None:
                self._error(self.tokens[-1], "unterminated Ontology block")
            if tok.kind == "rparen":
                self.pos += 1
                return
            if tok.kind != "ident":
                self._error(tok, f"expected axiom, found {tok.value!r}")
            self._parse_item(tok)

    def _parse_item(self, head: _Token):
        name = head.value
        self.pos += 1
        if name == "Import":
            self._expect("lparen", "'('")
            self.ontology.imports.append(self._iri("imported ontology IRI"))
            self._expect("rparen", "')'")
        elif name == "Declaration":
            self._parse_declaration()
        elif name == "SubClassOf":
            self._parse_axiom_body(head, self._parse_subclassof)
        elif name == "EquivalentClasses":
            self._parse_axiom_body(head, self._parse_equivalentclasses)
        elif name == "SubObjectPropertyOf":
            self._parse_subobjectpropertyof(head)
        elif name == "TransitiveObjectProperty":
            self._expect("lparen", "'('")
            prop = self._iri("object property IRI")
            self._expect("rparen", "')'")
            self.ontology.axioms.append(TransitiveProperty(prop))
            self.declared_properties.add(prop)
        elif name == "AnnotationAssertion":
            self._parse_annotation_assertion()
        elif name == "Annotation":
            # ontology-level annotation, no logical content
            self._skip_balanced()
        elif name in UNSUPPORTED_AXIOMS:
            self.ontology.diagnostics.append(
                Diagnostic(construct=name, line=head.line, detail="axiom outside the supported subset, skipped")
            )
            self._skip_balanced()
        else:
            self._error(head, f"unknown construct {name!r}")

    def _parse_axiom_body(self, head: _Token, body):
        """Parse one axiom, downgrading unsupported sub-constructs to a diagnostic."""
        self._expect("lparen", "'('")
        start = self.pos
        try:
            axiom = body()
            self._expect("rparen", "')'")
        except _Unsupported as u:
            self.pos = start
            self._skip_to_close(1)
            self.ontology.diagnostics.append(
                Diagnostic(construct=u.keyword, line=u.line, detail=f"{head.value} axiom skipped")
            )
            return
        self.ontology.axioms.append(axiom)

    def _parse_subclassof(self) -> Axiom:
        sub = self._parse_class_expression()
        sup = self._parse_class_expression()
        return SubClassOf(sub, sup)

    def _parse_equivalentclasses(self) -> Axiom:
        exprs = [self._parse_class_expression(), self._parse_class_expression()]
        while True:
            tok = self._peek()
            if tok is None or tok.kind == "rparen":
                break
            exprs.append(self._parse_class_expression())
        return EquivalentClasses(tuple(exprs))

    def _parse_subobjectpropertyof(self, head: _Token):
        self._expect("lparen", "'('")
        tok = self._peek()
        if tok is not None and tok.kind == "ident" and tok.value == "ObjectPropertyChain":
            self.pos += 1
            self._expect("lparen", "'('")
            chain = []
            while True:
                t = self._peek()
                if t is None or t.kind == "rparen":
                    break
                chain.append(self._iri("object property IRI"))
            self._expect("rparen", "')'")
            sup = self._iri("object property IRI")
            self._expect("rparen", "')'")
            if len(chain) != 2:
                self.ontology.diagnostics.append(
                    Diagnostic(
                        construct="ObjectPropertyChain",
                        line=head.line,
                        detail=f"only chains of length 2 are supported, found {len(chain)}; axiom skipped",
                    )
                )
                return
            self.ontology.axioms.append(PropertyChain(chain[0], chain[1], sup))
            self.declared_properties.update(chain)
            self.declared_properties.add(sup)
        else:
            sub = self._iri("object property IRI")
            sup = self._iri("object property IRI")
            self._expect("rparen", "')'")
            self.ontology.axioms.append(SubPropertyOf(sub, sup))
            self.declared_properties.update((sub, sup))

    def _parse_declaration(self):
        self._expect("lparen", "'('")
        kind = self._expect("ident", "entity kind")
        self._expect("lparen", "'('")
        iri = self._iri("entity IRI")
        self._expect("rparen", "')'")
        self._expect("rparen", "')'")
        if kind.value == "Class":
            if iri not in (OWL_THING, OWL_NOTHING):
                self.declared_classes.add(iri)
        elif kind.value == "ObjectProperty":
            self.declared_properties.add(iri)
        elif kind.value in ("AnnotationProperty", "Datatype", "DataProperty", "NamedIndividual"):
            pass  # no logical content in this subset
        else:
            self._error(kind, f"unknown entity kind {kind.value!r}")

    def _parse_annotation_assertion(self):
        self._expect("lparen", "'('")
        prop = self._iri("annotation property IRI")
        subject = self._iri("annotation subject IRI")
        tok = self._next("annotation value")
        value: str | None = None
        if tok.kind == "string":
            value = _unescape(tok.value)
            nxt = self._peek()
            if nxt is not None and nxt.kind == "lang":
                self.pos += 1
            elif nxt is not None and nxt.kind == "caret":
                self.pos += 1
                self._iri("datatype IRI")
        elif tok.kind in ("iriref", "pname"):
            value = None  # IRI-valued annotation, not a display string
        else:
            self._error(tok, f"expected literal or IRI, found {tok.value!r}")
        self._expect("rparen", "')'")
        if value is None:
            return
        if prop == RDFS_LABEL:
            self.pending_labels.append((subject, value))
        elif prop == DEFINITION_PROPERTY:
            self.pending_definitions.append((subject, value))

    def _parse_class_expression(self) -> ClassExpression:
        tok = self._next("class expression")
        if tok.kind in ("iriref", "pname"):
            iri = self._resolve(tok)
            if iri == OWL_THING:
                return TOP
            if iri == OWL_NOTHING:
                return BOTTOM
            return Named(iri)
        if tok.kind != "ident":
            self._error(tok, f"expected class expression, found {tok.value!r}")
        if tok.value == "ObjectIntersectionOf":
            self._expect("lparen", "'('")
            ops = [self._parse_class_expression(), self._parse_class_expression()]
            while True:
                nxt = self._peek()
                if nxt is None or nxt.kind == "rparen":
                    break
                ops.append(self._parse_class_expression())
            self._expect("rparen", "')'")
            return conjunction_of(ops)
        if tok.value == "ObjectSomeValuesFrom":
            self._expect("lparen", "'('")
            prop = self._iri("object property IRI")
            self.declared_properties.add(prop)
            filler = self._parse_class_expression()
            self._expect("rparen", "')'")
            return Existential(prop, filler)
        if tok.value in UNSUPPORTED_EXPRESSIONS:
            raise _Unsupported(tok.value, tok.line)
        self._error(tok, f"unknown class expression constructor {tok.value!r}")
        raise AssertionError  # unreachable

    def _finalize(self):
        ont = self.ontology
        ont.classes |= self.declared_classes
        ont.properties |= self.declared_properties
        for axiom in ont.axioms:
            if isinstance(axiom, SubClassOf):
                ont.classes |= named_classes_in(axiom.sub) | named_classes_in(axiom.sup)
                ont.properties |= properties_in(axiom.sub) | properties_in(axiom.sup)
            elif isinstance(axiom, EquivalentClasses):
                for e in axiom.exprs:
                    ont.classes |= named_classes_in(e)
                    ont.properties |= properties_in(e)
        for subject, text in self.pending_labels:
            if subject in ont.properties and subject not in ont.classes:
                ont.property_labels.setdefault(subject, text)
            else:
                ont.labels.setdefault(subject, text)
        for subject, text in self.pending_definitions:
            ont.definitions.setdefault(subject, text)


def parse_ontology_document(text: str, document_uri: str) -> Ontology:
    """Parse one ontology document. Imports are recorded but not resolved.

    Raises OntologySyntaxError (with line and column) on lexical or
    structural failure; never returns a partial parse in that case.
    """
    return _Parser(text, document_uri).parse()


# --- serialization ---


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def serialize_expression(expr: ClassExpression) -> str:
    if isinstance(expr, Named):
        return f"<{expr.iri}>"
    if isinstance(expr, Conjunction):
        return "ObjectIntersectionOf(" + " ".join(serialize_expression(o) for o in expr.operands) + ")"
    if isinstance(expr, Existential):
        return f"ObjectSomeValuesFrom(<{expr.property}> {serialize_expression(expr.filler)})"
    if isinstance(expr, Top):
        return f"<{OWL_THING}>"
    return f"<{OWL_NOTHING}>"


def serialize_axiom(axiom: Axiom) -> str:
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({serialize_expression(axiom.sub)} {serialize_expression(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return "EquivalentClasses(" + " ".join(serialize_expression(e) for e in axiom.exprs) + ")"
    if isinstance(axiom, SubPropertyOf):
        return f"SubObjectPropertyOf(<{axiom.sub}> <{axiom.sup}>)"
    if isinstance(axiom, PropertyChain):
        return (
            f"SubObjectPropertyOf(ObjectPropertyChain(<{axiom.first}> <{axiom.second}>) <{axiom.sup}>)"
        )
    if isinstance(axiom, TransitiveProperty):
        return f"TransitiveObjectProperty(<{axiom.property}>)"
    raise TypeError(f"not an axiom: {axiom!r}")


def serialize_ontology(ontology: Ontology) -> str:
    """Render an Ontology back to the functional-style syntax.

    Reparsing the output yields the same axioms, annotation maps and import
    list (full IRIs throughout; prefix declarations are not reconstructed).
    """
    lines = [f"Ontology(<{ontology.document_uri}>"]
    for imp in ontology.imports:
        lines.append(f"Import(<{imp}>)")
    for iri in sorted(ontology.classes):
        lines.append(f"Declaration(Class(<{iri}>))")
    for iri in sorted(ontology.properties):
        lines.append(f"Declaration(ObjectProperty(<{iri}>))")
    for axiom in ontology.axioms:
        lines.append(serialize_axiom(axiom))
    for subject in sorted(ontology.labels):
        lines.append(f'AnnotationAssertion(<{RDFS_LABEL}> <{subject}> "{_escape(ontology.labels[subject])}")')
    for subject in sorted(ontology.property_labels):
        lines.append(
            f'AnnotationAssertion(<{RDFS_LABEL}> <{subject}> "{_escape(ontology.property_labels[subject])}")'
        )
    for subject in sorted(ontology.definitions):
        lines.append(
            f'AnnotationAssertion(<{DEFINITION_PROPERTY}> <{subject}> "{_escape(ontology.definitions[subject])}")'
        )
    lines.append(")")
    return "\n".join(lines) + "\n"
