"""Character-level prefix tree over normalized labels for term completion."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyPrefix
from .shortforms import normalize_label


@dataclass(frozen=True)
class Suggestion:
    label: str
    iri: str
    ontology_uri: str
    kind: str  # "class" or "property"


class _Node:
    __slots__ = ("children", "payload")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.payload: set[Suggestion] = set()


class LabelTrie:
    """Trie keyed by characters of the normalized label.

    Terminal payloads keep every (label, iri, ontology, kind) that shares
    the normalized form, so double insertion is idempotent.
    """

    def __init__(self):
        self._root = _Node()
        self._size = 0

    def insert(self, label: str, iri: str, ontology_uri: str, kind: str = "class"):
        normalized = normalize_label(label)
        if not normalized:
            return
        node = self._root
        for ch in normalized:
            child = node.children.get(ch)
            if child is None:
                child = _Node()
                node.children[ch] = child
            node = child
        entry = Suggestion(label=label, iri=iri, ontology_uri=ontology_uri, kind=kind)
        if entry not in node.payload:
            node.payload.add(entry)
            self._size += 1

    def __len__(self) -> int:
        return self._size

    def complete(self, prefix: str, limit: int | None = None) -> list[Suggestion]:
        """All suggestions whose normalized label starts with the prefix.

        Ordered by label length, then label, then ontology URI; truncated
        to `limit` when given. Raises EmptyPrefix if the prefix normalizes
        to the empty string.
        """
        normalized = normalize_label(prefix)
        if not normalized:
            raise EmptyPrefix()
        node = self._root
        for ch in normalized:
            node = node.children.get(ch)
            if node is None:
                return []
        found: list[Suggestion] = []
        stack = [node]
        while stack:
            current = stack.pop()
            found.extend(current.payload)
            stack.extend(current.children.values())
        found.sort(key=lambda s: (len(s.label), s.label, s.ontology_uri, s.kind, s.iri))
        if limit is not None:
            return found[:limit]
        return found
