"""Positional inverted index over a document corpus with phrase retrieval.

The analyzer splits on non-alphanumeric runs, lowercases, and drops the
classic 33-entry English stop-word list. Token positions are numbered over
the kept tokens, so a phrase built from a label matches the same label in
text even when stop words sit between its content words ("tetralogy of
fallot" matches as the consecutive pair tetralogy, fallot).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError, DuplicateDocId, EmptyQuery

STOP_WORDS = frozenset(
    (
        "a an and are as at be but by for if in into is it no not of on or "
        "such that the their then there these they this to was will with"
    ).split()
)

FIELDS = ("title", "abstract", "fulltext")

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize_with_offsets(text: str) -> list[tuple[str, int, int]]:
    """Kept (lowercased) tokens with their character offsets in `text`."""
    out = []
    for match in _TOKEN_RE.finditer(text):
        token = match.group().lower()
        if token not in STOP_WORDS:
            out.append((token, match.start(), match.end()))
    return out


def analyze(text: str) -> list[str]:
    """Lowercased tokens with stop words removed; deterministic."""
    return [token for token, _, _ in tokenize_with_offsets(text)]


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    abstract: str
    fulltext: str = ""
    source_path: str = ""

    def field_text(self, field_name: str) -> str:
        return getattr(self, field_name)


class InvertedIndex:
    """term -> (doc_id, field) -> strictly increasing kept-token positions."""

    def __init__(self):
        self.documents: dict[str, Document] = {}
        self.postings: dict[str, dict[tuple[str, str], list[int]]] = {}
        self._position_sets: dict[str, dict[tuple[str, str], set[int]]] = {}
        self.offsets: dict[tuple[str, str], list[tuple[int, int]]] = {}

    def _add_document(self, doc: Document):
        if doc.doc_id in self.documents:
            raise DuplicateDocId(doc.doc_id)
        self.documents[doc.doc_id] = doc
        for field_name in FIELDS:
            text = doc.field_text(field_name)
            if not text:
                continue
            tokens = tokenize_with_offsets(text)
            key = (doc.doc_id, field_name)
            self.offsets[key] = [(start, end) for _, start, end in tokens]
            for position, (token, _, _) in enumerate(tokens):
                self.postings.setdefault(token, {}).setdefault(key, []).append(position)
                self._position_sets.setdefault(token, {}).setdefault(key, set()).add(position)

    def phrase_occurrences(self, phrase: tuple[str, ...]) -> dict[tuple[str, str], list[int]]:
        """Start positions of consecutive occurrences of `phrase`, per (doc, field)."""
        first = self.postings.get(phrase[0])
        if first is None:
            return {}
        hits: dict[tuple[str, str], list[int]] = {}
        rest = [self._position_sets.get(token) for token in phrase[1:]]
        if any(positions is None for positions in rest):
            return {}
        for key, starts in first.items():
            follow = [positions.get(key) for positions in rest]
            if any(s is None for s in follow):
                continue
            matched = [
                start
                for start in starts
                if all(start + offset + 1 in follow[offset] for offset in range(len(follow)))
            ]
            if matched:
                hits[key] = matched
        return hits


def index_corpus(documents) -> InvertedIndex:
    index = InvertedIndex()
    for doc in documents:
        index._add_document(doc)
    return index


@dataclass(frozen=True)
class LabelQuery:
    """Disjunction of phrases, one per class label."""

    phrases: tuple[tuple[str, ...], ...]
    dropped: tuple[str, ...] = ()


def build_label_query(records) -> LabelQuery:
    """One analyzed phrase per distinct label; all-stop-word labels dropped.

    Accepts ClassRecords or plain label strings. Raises EmptyQuery when
    nothing survives analysis.
    """
    phrases: list[tuple[str, ...]] = []
    seen: set[tuple[str, ...]] = set()
    dropped: list[str] = []
    seen_labels: set[str] = set()
    for item in records:
        label = item if isinstance(item, str) else item.label
        if label in seen_labels:
            continue
        seen_labels.add(label)
        phrase = tuple(analyze(label))
        if not phrase:
            dropped.append(label)
            continue
        if phrase not in seen:
            seen.add(phrase)
            phrases.append(phrase)
    if not phrases:
        raise EmptyQuery("no label survives analysis")
    return LabelQuery(phrases=tuple(phrases), dropped=tuple(dropped))


@dataclass(frozen=True)
class Highlight:
    field: str
    start_token: int
    end_token: int  # exclusive
    start_char: int
    end_char: int
    text: str


@dataclass(frozen=True)
class Hit:
    doc_id: str
    match_count: int
    highlights: tuple[Highlight, ...]
    title: str
    abstract: str


def search(index: InvertedIndex, queries, limit: int | None = None) -> list[Hit]:
    """Documents matching every LabelQuery (any phrase of each, contiguously).

    Hits carry one highlight per phrase occurrence and are ordered by match
    count descending, then doc_id.
    """
    queries = list(queries)
    if not queries:
        return []
    doc_spans: dict[str, set[tuple[str, int, int]]] | None = None
    for query in queries:
        matched: dict[str, set[tuple[str, int, int]]] = {}
        for phrase in query.phrases:
            width = len(phrase)
            for (doc_id, field_name), starts in index.phrase_occurrences(phrase).items():
                spans = matched.setdefault(doc_id, set())
                for start in starts:
                    spans.add((field_name, start, start + width))
        if doc_spans is None:
            doc_spans = matched
        else:
            doc_spans = {
                doc_id: doc_spans[doc_id] | spans
                for doc_id, spans in matched.items()
                if doc_id in doc_spans
            }
        if not doc_spans:
            return []
    assert doc_spans is not None
    hits = []
    for doc_id, spans in doc_spans.items():
        doc = index.documents[doc_id]
        highlights = []
        for field_name, start, end in sorted(spans):
            offsets = index.offsets[(doc_id, field_name)]
            start_char = offsets[start][0]
            end_char = offsets[end - 1][1]
            highlights.append(
                Highlight(
                    field=field_name,
                    start_token=start,
                    end_token=end,
                    start_char=start_char,
                    end_char=end_char,
                    text=doc.field_text(field_name)[start_char:end_char],
                )
            )
        hits.append(
            Hit(
                doc_id=doc_id,
                match_count=len(highlights),
                highlights=tuple(highlights),
                title=doc.title,
                abstract=doc.abstract,
            )
        )
    hits.sort(key=lambda h: (-h.match_count, h.doc_id))
    if limit is not None:
        return hits[:limit]
    return hits


def hit_to_dict(hit: Hit) -> dict:
    return {
        "docId": hit.doc_id,
        "title": hit.title,
        "abstract": hit.abstract,
        "matchCount": hit.match_count,
        "highlights": [
            {
                "field": h.field,
                "startToken": h.start_token,
                "endToken": h.end_token,
                "startChar": h.start_char,
                "endChar": h.end_char,
                "text": h.text,
            }
            for h in hit.highlights
        ],
    }


def hits_to_json(hits) -> str:
    return json.dumps([hit_to_dict(h) for h in hits], indent=2, ensure_ascii=False) + "\n"


# --- corpus files ---
#
# One document per file:
#
#     doc_id: PMID1001
#     title: one line
#     abstract: first line
#       any following line without a known key continues the last field
#     fulltext: optional
#
# A directory corpus is every *.txt file sorted by name, or the files named
# by a `manifest` file (one relative path per line) when present.

_KEYS = ("doc_id", "title", "abstract", "fulltext")


def parse_document_text(text: str, source_path: str = "") -> Document:
    values: dict[str, list[str]] = {}
    current: str | None = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped and current is None:
            continue
        matched_key = None
        for key in _KEYS:
            if stripped.startswith(key + ":"):
                matched_key = key
                break
        if matched_key is not None:
            if matched_key in values:
                raise CorpusFormatError(f"{source_path or '<text>'}:{line_number}: repeated key {matched_key!r}")
            values[matched_key] = [stripped[len(matched_key) + 1 :].strip()]
            current = matched_key
        elif current is not None:
            values[current].append(stripped)
        else:
            raise CorpusFormatError(f"{source_path or '<text>'}:{line_number}: expected 'key: value'")
    if "doc_id" not in values or not values["doc_id"][0]:
        raise CorpusFormatError(f"{source_path or '<text>'}: missing doc_id")

    def joined(key: str) -> str:
        return "\n".join(values.get(key, [""])).strip()

    return Document(
        doc_id=values["doc_id"][0],
        title=joined("title"),
        abstract=joined("abstract"),
        fulltext=joined("fulltext"),
        source_path=source_path,
    )


def load_corpus(path) -> list[Document]:
    root = Path(path)
    if root.is_file():
        return [parse_document_text(root.read_text("utf-8"), str(root))]
    if not root.is_dir():
        raise CorpusFormatError(f"{root}: no such file or directory")
    manifest = root / "manifest"
    if manifest.is_file():
        files = [root / line.strip() for line in manifest.read_text("utf-8").splitlines() if line.strip()]
    else:
        files = sorted(root.glob("*.txt"))
    return [parse_document_text(f.read_text("utf-8"), str(f)) for f in files]


def index_to_json(index: InvertedIndex) -> str:
    docs = [
        {
            "docId": d.doc_id,
            "title": d.title,
            "abstract": d.abstract,
            "fulltext": d.fulltext,
            "sourcePath": d.source_path,
        }
        for d in index.documents.values()
    ]
    return json.dumps({"documents": docs}, indent=2, ensure_ascii=False) + "\n"


def index_from_json(text: str) -> InvertedIndex:
    """Rebuild the postings from the stored documents (indexing is deterministic)."""
    data = json.loads(text)
    return index_corpus(
        Document(
            doc_id=d["docId"],
            title=d.get("title", ""),
            abstract=d.get("abstract", ""),
            fulltext=d.get("fulltext", ""),
            source_path=d.get("sourcePath", ""),
        )
        for d in data["documents"]
    )
