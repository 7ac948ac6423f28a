#!/usr/bin/env python3
"""Regenerate the test corpus deterministically.

Fifty short synthetic articles. A handful of multi-word phrases are planted
in known documents; the words making up those phrases are reserved, so a
phrase can only occur where it was planted. Everything else is seeded filler.

Planted phrase membership (doc numbers are 1-based):

    "tetralogy of fallot"           3, 8, 15 (twice), 22, 31, 40, 47 (fulltext)
    "overriding aorta"              9, 22, 44
    "right ventricular hypertrophy" 5, 12, 31, 44
    "execution phase of apoptosis"  2, 18
    "apoptotic dna fragmentation"   18, 27

Document 50 carries "tetralogy" in its title and "fallot" in its abstract:
token presence without contiguity, so it must never match the phrase.
The word "septal" never occurs anywhere.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from owlport.literature import analyze  # noqa: E402

RESERVED = {
    "tetralogy", "fallot", "septal", "pulmonic", "overriding",
    "hypertrophy", "execution", "apoptosis", "apoptotic", "fragmentation",
    "biological",
}

FILLER = """
patient clinical study cohort randomized trial cardiac heart murmur diagnosis
treatment therapy outcome survival infant neonate adult gene protein expression
pathway signaling receptor kinase caspase mitochondrial membrane nuclear
chromatin cleavage cell tissue biopsy imaging resonance ultrasound pressure
flow valve artery aorta chamber lesion stenosis surgery repair followup
cyanosis oxygen saturation marker association variant genome screening
registry incidence prevalence mortality morbidity catheter shunt conduit
""".split()

assert not (set(FILLER) & RESERVED)

PLANTED = {
    2: {"abstract": ["Morphological changes during the execution phase of apoptosis were quantified."]},
    3: {"abstract": ["Seven infants with tetralogy of Fallot underwent complete repair."]},
    5: {"abstract": ["Electrocardiograms showed marked right ventricular hypertrophy in all subjects."]},
    8: {"title": "Long term outcome after tetralogy of Fallot repair"},
    9: {"abstract": ["Echocardiography demonstrated an overriding aorta in each case."]},
    12: {"abstract": ["Progressive right ventricular hypertrophy developed under pressure overload."]},
    15: {
        "title": "Tetralogy of Fallot in the adult patient",
        "abstract": ["Adults with unrepaired tetralogy of Fallot present unusual management problems."],
    },
    18: {
        "title": "Caspase activity during the execution phase of apoptosis",
        "abstract": ["Internucleosomal cleavage accompanied apoptotic DNA fragmentation in treated cells."],
    },
    22: {"abstract": ["One child with tetralogy of Fallot also displayed a markedly overriding aorta."]},
    27: {"abstract": ["We measured apoptotic DNA fragmentation by gel electrophoresis."]},
    31: {"abstract": ["Cyanotic episodes in tetralogy of Fallot correlate with right ventricular hypertrophy."]},
    40: {"title": "Staged palliation for tetralogy of Fallot in the neonate"},
    44: {"abstract": ["Severe right ventricular hypertrophy with an overriding aorta was noted."]},
    47: {"fulltext": ["The index case was diagnosed with tetralogy of Fallot at three months."]},
    50: {
        "title": "A note on the historical description of cardiac tetralogy",
        "abstract": ["Etienne-Louis Fallot described a cyanotic malformation of the heart in 1888."],
    },
}

FULLTEXT_DOCS = {4, 11, 18, 23, 29, 35, 41, 47}

PHRASES = {
    "tetralogy of fallot": {3, 8, 15, 22, 31, 40, 47},
    "overriding aorta": {9, 22, 44},
    "right ventricular hypertrophy": {5, 12, 31, 44},
    "execution phase of apoptosis": {2, 18},
    "apoptotic dna fragmentation": {18, 27},
    "ventricular septal defect": set(),
}


def filler_sentence(rng: random.Random) -> str:
    words = [rng.choice(FILLER) for _ in range(rng.randint(6, 12))]
    return words[0].capitalize() + " " + " ".join(words[1:]) + "."


def build_document(number: int, rng: random.Random) -> tuple[str, str]:
    doc_id = f"PMID1{number:04d}"
    planted = PLANTED.get(number, {})
    title = planted.get("title") or filler_sentence(rng).rstrip(".")
    abstract_lines = list(planted.get("abstract", []))
    while len(abstract_lines) < rng.randint(2, 4):
        abstract_lines.append(filler_sentence(rng))
    rng.shuffle(abstract_lines)
    lines = [f"doc_id: {doc_id}", f"title: {title}", f"abstract: {abstract_lines[0]}"]
    lines.extend(f"  {line}" for line in abstract_lines[1:])
    fulltext_lines = list(planted.get("fulltext", []))
    if number in FULLTEXT_DOCS:
        while len(fulltext_lines) < 3:
            fulltext_lines.append(filler_sentence(rng))
    if fulltext_lines:
        rng.shuffle(fulltext_lines)
        lines.append(f"fulltext: {fulltext_lines[0]}")
        lines.extend(f"  {line}" for line in fulltext_lines[1:])
    return doc_id, "\n".join(lines) + "\n"


def contains_phrase(tokens: list[str], phrase: list[str]) -> bool:
    n = len(phrase)
    return any(tokens[i : i + n] == phrase for i in range(len(tokens) - n + 1))


def verify(texts: dict[int, str]):
    from owlport.literature import parse_document_text

    for phrase, expected in PHRASES.items():
        phrase_tokens = analyze(phrase)
        found = set()
        for number, text in texts.items():
            doc = parse_document_text(text)
            for field_text in (doc.title, doc.abstract, doc.fulltext):
                if contains_phrase(analyze(field_text), phrase_tokens):
                    found.add(number)
                    break
        if found != expected:
            raise AssertionError(f"phrase {phrase!r}: planted {sorted(expected)}, found {sorted(found)}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests/fixtures/corpus"))
    args = parser.parse_args()

    rng = random.Random(70417)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    texts = {}
    for number in range(1, 51):
        doc_id, text = build_document(number, rng)
        texts[number] = text
        (out / f"{doc_id.lower()}.txt").write_text(text, "utf-8")
    verify(texts)
    print(f"wrote {len(texts)} documents to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
