"""EL classification by completion-rule saturation.

The engine maintains S(A), the set of named classes subsuming A, and R(r),
the derived existential links, and applies the standard completion rules to
a fixpoint:

    R1   X ∈ S(A), X ⊑ Y                          ⇒  Y ∈ S(A)
    R2   X1, X2 ∈ S(A), X1 ⊓ X2 ⊑ Y               ⇒  Y ∈ S(A)
    R3   X ∈ S(A), X ⊑ ∃r.Y                       ⇒  (A, Y) ∈ R(r)
    R4   (A, B) ∈ R(r), X ∈ S(B), ∃r.X ⊑ Y        ⇒  Y ∈ S(A)
    R5   (A, B) ∈ R(r), r ⊑ s                     ⇒  (A, B) ∈ R(s)
    R6   (A, B) ∈ R(r), (B, C) ∈ R(s), r ∘ s ⊑ t  ⇒  (A, C) ∈ R(t)
    R⊥   (A, B) ∈ R(r), Bottom ∈ S(B)             ⇒  Bottom ∈ S(A)

The fixpoint is unique, so the outcome is independent of rule-application
order. Entailment over named classes is then: A ⊑ B iff B ∈ S(A) or
Bottom ∈ S(A).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable

from .errors import UnknownEntity
from .model import (
    FRESH_NAMESPACE,
    OWL_NOTHING,
    OWL_THING,
    ClassExpression,
    EquivalentClasses,
    Named,
    is_fresh,
    named_classes_in,
    properties_in,
)
from .normalize import NormalizedAxiomSet, normalize_axioms

QUERY_CLASS = FRESH_NAMESPACE + "query"


@dataclass(frozen=True)
class SaturationState:
    """Immutable fixpoint: subsumer sets and existential links."""

    subsumers: dict[str, frozenset[str]]
    links: dict[str, frozenset[tuple[str, str]]]


@dataclass(frozen=True)
class QueryClassification:
    equivalents: frozenset[str]
    subclasses: frozenset[str]  # strict: equivalents excluded
    superclasses: frozenset[str]  # strict: equivalents excluded


Node = tuple[str, ...]


@dataclass(frozen=True)
class Taxonomy:
    """Equivalence classes of satisfiable named classes under direct subsumption.

    direct_super is the transitive reduction of the inferred order; the DAG
    is rooted upward at the node containing Top. Unsatisfiable classes are
    kept apart rather than forming a Bottom node.
    """

    nodes: tuple[Node, ...]
    direct_super: dict[Node, frozenset[Node]]
    direct_sub: dict[Node, frozenset[Node]]
    unsatisfiable: frozenset[str]
    node_of: dict[str, Node]

    @property
    def top_node(self) -> Node:
        return self.node_of[OWL_THING]


class _Engine:
    """Worklist saturation with axioms indexed by left-hand side."""

    def __init__(self, nf: NormalizedAxiomSet, lifo: bool = False):
        self.lifo = lifo
        self.nf1_by_sub: dict[str, list[str]] = defaultdict(list)
        self.nf2_by_left: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.nf3_by_sub: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.nf4_map: dict[tuple[str, str], list[str]] = defaultdict(list)
        self.role_sups: dict[str, list[str]] = defaultdict(list)
        self.chains_first: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.chains_second: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self._index(nf)
        self.S: dict[str, set[str]] = {}
        self.link_set: set[tuple[str, str, str]] = set()
        self.out_by_src: dict[str, dict[str, set[str]]] = {}
        self.in_by_tgt: dict[str, dict[str, set[str]]] = {}
        self.queue: deque = deque()

    def _index(self, nf: NormalizedAxiomSet):
        for a, b in nf.nf1:
            self.nf1_by_sub[a].append(b)
        for a1, a2, b in nf.nf2:
            self.nf2_by_left[a1].append((a2, b))
            if a1 != a2:
                self.nf2_by_left[a2].append((a1, b))
        for a, r, b in nf.nf3:
            self.nf3_by_sub[a].append((r, b))
        for r, a, b in nf.nf4:
            self.nf4_map[(r, a)].append(b)
        for r, s in nf.role_hierarchy:
            if r != s:
                self.role_sups[r].append(s)
        for r, s, t in nf.role_chains:
            self.chains_first[r].append((s, t))
            self.chains_second[s].append((r, t))

    def seed_class(self, cls: str):
        if cls not in self.S:
            self.S[cls] = set()
            self.add_sub(cls, cls)
            self.add_sub(cls, OWL_THING)

    def add_sub(self, a: str, x: str):
        row = self.S[a]
        if x not in row:
            row.add(x)
            self.queue.append((True, a, x))

    def add_link(self, r: str, a: str, b: str):
        key = (r, a, b)
        if key not in self.link_set:
            self.link_set.add(key)
            self.out_by_src.setdefault(a, {}).setdefault(r, set()).add(b)
            self.in_by_tgt.setdefault(b, {}).setdefault(r, set()).add(a)
            self.queue.append((False, r, a, b))

    def run(self):
        pop = self.queue.pop if self.lifo else self.queue.popleft
        while self.queue:
            fact = pop()
            if fact[0]:
                self._process_sub(fact[1], fact[2])
            else:
                self._process_link(fact[1], fact[2], fact[3])

    def _process_sub(self, a: str, x: str):
        for y in self.nf1_by_sub.get(x, ()):
            self.add_sub(a, y)
        row = self.S[a]
        for other, y in self.nf2_by_left.get(x, ()):
            if other in row:
                self.add_sub(a, y)
        for r, y in self.nf3_by_sub.get(x, ()):
            self.add_link(r, a, y)
        incoming = self.in_by_tgt.get(a)
        if incoming:
            if x == OWL_NOTHING:
                for sources in list(incoming.values()):
                    for src in tuple(sources):
                        self.add_sub(src, OWL_NOTHING)
            for r, sources in list(incoming.items()):
                targets = self.nf4_map.get((r, x))
                if targets:
                    for src in tuple(sources):
                        for y in targets:
                            self.add_sub(src, y)

    def _process_link(self, r: str, a: str, b: str):
        row_b = self.S[b]
        for x in tuple(row_b):
            for y in self.nf4_map.get((r, x), ()):
                self.add_sub(a, y)
        for s in self.role_sups.get(r, ()):
            self.add_link(s, a, b)
        chains = self.chains_first.get(r)
        if chains:
            outs = self.out_by_src.get(b)
            if outs:
                for s, t in chains:
                    for c in tuple(outs.get(s, ())):
                        self.add_link(t, a, c)
        chains = self.chains_second.get(r)
        if chains:
            ins = self.in_by_tgt.get(a)
            if ins:
                for q, t in chains:
                    for src in tuple(ins.get(q, ())):
                        self.add_link(t, src, b)
        if OWL_NOTHING in row_b:
            self.add_sub(a, OWL_NOTHING)

    def freeze(self) -> SaturationState:
        links: dict[str, set[tuple[str, str]]] = defaultdict(set)
        for r, a, b in self.link_set:
            links[r].add((a, b))
        return SaturationState(
            subsumers={a: frozenset(row) for a, row in self.S.items()},
            links={r: frozenset(pairs) for r, pairs in links.items()},
        )

    def copy(self) -> "_Engine":
        clone = _Engine.__new__(_Engine)
        clone.lifo = self.lifo
        clone.nf1_by_sub = defaultdict(list, {k: list(v) for k, v in self.nf1_by_sub.items()})
        clone.nf2_by_left = defaultdict(list, {k: list(v) for k, v in self.nf2_by_left.items()})
        clone.nf3_by_sub = defaultdict(list, {k: list(v) for k, v in self.nf3_by_sub.items()})
        clone.nf4_map = defaultdict(list, {k: list(v) for k, v in self.nf4_map.items()})
        clone.role_sups = defaultdict(list, {k: list(v) for k, v in self.role_sups.items()})
        clone.chains_first = defaultdict(list, {k: list(v) for k, v in self.chains_first.items()})
        clone.chains_second = defaultdict(list, {k: list(v) for k, v in self.chains_second.items()})
        clone.S = {a: set(row) for a, row in self.S.items()}
        clone.link_set = set(self.link_set)
        clone.out_by_src = {a: {r: set(bs) for r, bs in m.items()} for a, m in self.out_by_src.items()}
        clone.in_by_tgt = {b: {r: set(As) for r, As in m.items()} for b, m in self.in_by_tgt.items()}
        clone.queue = deque()
        return clone

    def extend(self, delta: NormalizedAxiomSet, new_classes: Iterable[str]):
        """Add axioms to an already-saturated engine and re-seed the worklist.

        Rule instances among pre-existing facts and axioms are already at
        fixpoint, so it suffices to (a) seed rows for new classes and (b)
        replay each new axiom against the existing facts; everything else is
        carried by the worklist.
        """
        self._index(delta)
        for cls in new_classes:
            self.seed_class(cls)
        for x, y in delta.nf1:
            for a, row in list(self.S.items()):
                if x in row:
                    self.add_sub(a, y)
        for x1, x2, y in delta.nf2:
            for a, row in list(self.S.items()):
                if x1 in row and x2 in row:
                    self.add_sub(a, y)
        for x, r, y in delta.nf3:
            for a, row in list(self.S.items()):
                if x in row:
                    self.add_link(r, a, y)
        for r, x, y in delta.nf4:
            for key in [k for k in self.link_set if k[0] == r]:
                if x in self.S[key[2]]:
                    self.add_sub(key[1], y)
        for r, s in delta.role_hierarchy:
            for key in [k for k in self.link_set if k[0] == r]:
                self.add_link(s, key[1], key[2])
        for r, s, t in delta.role_chains:
            for key in [k for k in self.link_set if k[0] == r]:
                outs = self.out_by_src.get(key[2], {})
                for c in tuple(outs.get(s, ())):
                    self.add_link(t, key[1], c)


def saturate(nf: NormalizedAxiomSet, extra_classes: Iterable[str] = (), lifo: bool = False) -> SaturationState:
    """Saturate a normalized axiom set and return the frozen fixpoint."""
    engine = _build_engine(nf, extra_classes, lifo)
    return engine.freeze()


def _domain(nf: NormalizedAxiomSet, extra_classes: Iterable[str]) -> list[str]:
    domain = set(nf.signature) | set(nf.fresh_classes) | set(extra_classes)
    domain.add(OWL_THING)
    domain.add(OWL_NOTHING)
    for a, b in nf.nf1:
        domain.add(a)
        domain.add(b)
    for a1, a2, b in nf.nf2:
        domain.update((a1, a2, b))
    for a, _, b in nf.nf3:
        domain.add(a)
        domain.add(b)
    for _, a, b in nf.nf4:
        domain.add(a)
        domain.add(b)
    return sorted(domain)


def _build_engine(nf: NormalizedAxiomSet, extra_classes: Iterable[str] = (), lifo: bool = False) -> _Engine:
    engine = _Engine(nf, lifo=lifo)
    for cls in _domain(nf, extra_classes):
        engine.seed_class(cls)
    engine.run()
    return engine


def entails(state: SaturationState, sub: str, sup: str) -> bool:
    row = state.subsumers.get(sub)
    if row is None:
        return False
    return sup in row or OWL_NOTHING in row


def unsatisfiable_classes(state: SaturationState, signature: Iterable[str]) -> set[str]:
    return {a for a in signature if OWL_NOTHING in state.subsumers.get(a, frozenset())}


def build_taxonomy(state: SaturationState, signature: Iterable[str]) -> Taxonomy:
    """Group mutually-subsuming classes and transitively reduce the order."""
    named = sorted({a for a in signature if not is_fresh(a)})
    rows = state.subsumers
    default_row = frozenset((OWL_THING,))
    unsat = frozenset(a for a in named if OWL_NOTHING in rows.get(a, default_row))
    sats = [a for a in named if a not in unsat]
    universe = set(sats) | {OWL_THING}

    groups: dict[frozenset, list[str]] = {}
    for cls in [OWL_THING] + sats:
        key = frozenset(rows.get(cls, frozenset((cls, OWL_THING))) & universe)
        groups.setdefault(key, []).append(cls)
    node_of: dict[str, Node] = {}
    key_of_node: dict[Node, frozenset] = {}
    for key, members in groups.items():
        node = tuple(sorted(members))
        key_of_node[node] = key
        for member in members:
            node_of[member] = node

    nodes = sorted(key_of_node)
    strict_up: dict[Node, set[Node]] = {}
    for node in nodes:
        ups = {node_of[s] for s in key_of_node[node] if s in node_of}
        ups.discard(node)
        strict_up[node] = ups

    direct_super: dict[Node, frozenset[Node]] = {}
    for node in nodes:
        ups = strict_up[node]
        indirect: set[Node] = set()
        for up in ups:
            indirect |= strict_up[up]
        direct_super[node] = frozenset(ups - indirect)

    direct_sub: dict[Node, set[Node]] = {node: set() for node in nodes}
    for node, supers in direct_super.items():
        for up in supers:
            direct_sub[up].add(node)

    return Taxonomy(
        nodes=tuple(nodes),
        direct_super=direct_super,
        direct_sub={node: frozenset(subs) for node, subs in direct_sub.items()},
        unsatisfiable=unsat,
        node_of=node_of,
    )


class Reasoner:
    """Classified view over one normalized ontology.

    The base saturation is computed once; query classification extends a
    private copy, so a Reasoner is safe to share across concurrent readers.
    """

    def __init__(self, nf: NormalizedAxiomSet, lifo: bool = False):
        self.nf = nf
        self.signature = frozenset(a for a in nf.signature if not is_fresh(a))
        self._engine = _build_engine(nf, lifo=lifo)
        self.state = self._engine.freeze()
        self._taxonomy: Taxonomy | None = None

    def taxonomy(self) -> Taxonomy:
        if self._taxonomy is None:
            self._taxonomy = build_taxonomy(self.state, self.signature)
        return self._taxonomy

    def entails(self, sub: str, sup: str) -> bool:
        return entails(self.state, sub, sup)

    def unsatisfiable_classes(self) -> set[str]:
        return unsatisfiable_classes(self.state, self.signature)

    def query_classify(self, expr: ClassExpression, include_top_bottom: bool = False) -> QueryClassification:
        """Classify an anonymous expression against the ontology.

        The expression is injected as a fresh class Q with Q ≡ expr and the
        saturation continued on a copy of the base fixpoint. Result sets
        contain only named, non-fresh classes; Top is left out of the
        superclass set and Bottom out of the subclass set unless
        include_top_bottom is set.
        """
        for name in sorted(named_classes_in(expr)):
            if name not in self.signature:
                raise UnknownEntity(name)
        for prop in sorted(properties_in(expr)):
            if prop not in self.nf.properties:
                raise UnknownEntity(prop)

        delta = normalize_axioms(
            [EquivalentClasses((Named(QUERY_CLASS), expr))],
            counter_start=self.nf.fresh_counter_end,
        )
        scratch = self._engine.copy()
        scratch.extend(delta, [QUERY_CLASS, *sorted(delta.fresh_classes)])
        scratch.run()

        S = scratch.S
        q_row = S[QUERY_CLASS]
        q_unsat = OWL_NOTHING in q_row
        subs = set()
        supers = set()
        for cls in self.signature:
            row = S[cls]
            if QUERY_CLASS in row or OWL_NOTHING in row:
                subs.add(cls)
            if cls in q_row or q_unsat:
                supers.add(cls)
        equivalents = subs & supers
        result_subs = subs - equivalents
        result_supers = supers - equivalents
        if include_top_bottom:
            if QUERY_CLASS in S[OWL_THING]:
                equivalents.add(OWL_THING)
            else:
                result_supers.add(OWL_THING)
            if q_unsat:
                equivalents.add(OWL_NOTHING)
            else:
                result_subs.add(OWL_NOTHING)
        return QueryClassification(
            equivalents=frozenset(equivalents),
            subclasses=frozenset(result_subs),
            superclasses=frozenset(result_supers),
        )
