"""Normalization of EL axioms into the four reasoner normal forms.

Normal forms over named classes A, B (original or fresh), Top and Bottom:

    nf1  A ⊑ B                 stored as (A, B)
    nf2  A1 ⊓ A2 ⊑ B           stored as (A1, A2, B)
    nf3  A ⊑ ∃r.B              stored as (A, r, B)
    nf4  ∃r.A ⊑ B              stored as (r, A, B)

plus role axioms: role_hierarchy (r ⊑ s) and role_chains (r ∘ s ⊑ t);
TransitiveProperty(r) contributes the chain (r, r, r). Complex expressions
are decomposed through fresh classes in a reserved namespace with a
deterministic counter, so repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    FRESH_NAMESPACE,
    OWL_NOTHING,
    OWL_THING,
    Axiom,
    Bottom,
    ClassExpression,
    Conjunction,
    EquivalentClasses,
    Existential,
    Named,
    Ontology,
    PropertyChain,
    SubClassOf,
    SubPropertyOf,
    Top,
    TransitiveProperty,
    expr_key,
    is_fresh,
    named_classes_in,
    properties_in,
)


@dataclass
class NormalizedAxiomSet:
    nf1: set[tuple[str, str]] = field(default_factory=set)
    nf2: set[tuple[str, str, str]] = field(default_factory=set)
    nf3: set[tuple[str, str, str]] = field(default_factory=set)
    nf4: set[tuple[str, str, str]] = field(default_factory=set)
    role_hierarchy: set[tuple[str, str]] = field(default_factory=set)
    role_chains: set[tuple[str, str, str]] = field(default_factory=set)
    fresh_classes: set[str] = field(default_factory=set)
    signature: set[str] = field(default_factory=set)
    properties: set[str] = field(default_factory=set)
    fresh_counter_end: int = 0


class _Normalizer:
    def __init__(self, counter_start: int):
        self.out = NormalizedAxiomSet()
        self.counter = counter_start
        self.memo: dict[str, str] = {}

    def fresh(self) -> str:
        name = f"{FRESH_NAMESPACE}{self.counter}"
        self.counter += 1
        self.out.fresh_classes.add(name)
        return name

    def atom(self, expr: ClassExpression) -> str:
        """Name for an expression, introducing a fully-defined fresh class if complex."""
        if isinstance(expr, Named):
            return expr.iri
        if isinstance(expr, Top):
            return OWL_THING
        if isinstance(expr, Bottom):
            return OWL_NOTHING
        key = expr_key(expr)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        name = self.fresh()
        self.memo[key] = name
        if isinstance(expr, Conjunction):
            operands = [self.atom(op) for op in expr.operands]
            for op in operands:
                self.out.nf1.add((name, op))
            self.chain_into(operands, name)
        elif isinstance(expr, Existential):
            filler = self.atom(expr.filler)
            self.out.nf3.add((name, expr.property, filler))
            self.out.nf4.add((expr.property, filler, name))
        else:  # pragma: no cover
            raise TypeError(f"not a class expression: {expr!r}")
        return name

    def chain_into(self, operands: list[str], target: str):
        """Emit binary nf2 axioms entailing operand1 ⊓ ... ⊓ operandN ⊑ target."""
        acc = operands[0]
        for op in operands[1:-1]:
            nxt = self.fresh()
            self.out.nf2.add((acc, op, nxt))
            acc = nxt
        self.out.nf2.add((acc, operands[-1], target))

    def sub_atom(self, expr: ClassExpression) -> str:
        """Name standing for `expr` on the left of a subsumption.

        Conjunctions get a one-directional fresh name (conj ⊑ name), which is
        all the left side needs; existentials fall back to full naming.
        """
        if isinstance(expr, Conjunction):
            target = self.fresh()
            self.chain_into([self.atom(op) for op in expr.operands], target)
            return target
        return self.atom(expr)

    def emit_sub(self, sub: ClassExpression, sup: ClassExpression):
        if isinstance(sup, Conjunction):
            for op in sup.operands:
                self.emit_sub(sub, op)
            return
        if isinstance(sup, Existential):
            source = self.sub_atom(sub)
            self.out.nf3.add((source, sup.property, self.atom(sup.filler)))
            return
        target = self.atom(sup)
        if isinstance(sub, Conjunction):
            self.chain_into([self.atom(op) for op in sub.operands], target)
        elif isinstance(sub, Existential):
            self.out.nf4.add((sub.property, self.atom(sub.filler), target))
        else:
            self.out.nf1.add((self.atom(sub), target))

    def add_axiom(self, axiom: Axiom):
        if isinstance(axiom, SubClassOf):
            self.emit_sub(axiom.sub, axiom.sup)
        elif isinstance(axiom, EquivalentClasses):
            exprs = axiom.exprs
            for left, right in zip(exprs, exprs[1:]):
                self.emit_sub(left, right)
                self.emit_sub(right, left)
        elif isinstance(axiom, SubPropertyOf):
            self.out.role_hierarchy.add((axiom.sub, axiom.sup))
            self.out.properties.update((axiom.sub, axiom.sup))
        elif isinstance(axiom, PropertyChain):
            self.out.role_chains.add((axiom.first, axiom.second, axiom.sup))
            self.out.properties.update((axiom.first, axiom.second, axiom.sup))
        elif isinstance(axiom, TransitiveProperty):
            self.out.role_chains.add((axiom.property, axiom.property, axiom.property))
            self.out.properties.add(axiom.property)
        else:  # pragma: no cover
            raise TypeError(f"not an axiom: {axiom!r}")


def normalize_axioms(axioms, counter_start: int = 0) -> NormalizedAxiomSet:
    """Normalize a bare axiom list; the signature is what the axioms mention."""
    normalizer = _Normalizer(counter_start)
    for axiom in axioms:
        normalizer.add_axiom(axiom)
        if isinstance(axiom, SubClassOf):
            exprs: tuple[ClassExpression, ...] = (axiom.sub, axiom.sup)
        elif isinstance(axiom, EquivalentClasses):
            exprs = axiom.exprs
        else:
            exprs = ()
        for expr in exprs:
            normalizer.out.signature |= {n for n in named_classes_in(expr) if not is_fresh(n)}
            normalizer.out.properties |= properties_in(expr)
    normalizer.out.fresh_counter_end = normalizer.counter
    return normalizer.out


def normalize(ontology: Ontology, counter_start: int = 0) -> NormalizedAxiomSet:
    """Normalize a parsed (and import-resolved) ontology."""
    result = normalize_axioms(ontology.axioms, counter_start)
    result.signature |= ontology.classes
    result.properties |= ontology.properties
    return result
