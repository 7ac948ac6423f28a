"""Benchmark classification on a synthetic chain-heavy ontology.

Builds `chains` subclass chains of `depth` classes each. Every class also
points into its chain via an existential, and each chain closes with one
existential-on-the-left axiom, so saturation has to push role links as well
as plain subsumptions:

    C(i,j)            SubClassOf  C(i,j+1)            (depth-1 per chain)
    C(i,j)            SubClassOf  part_of some C(i,max(j-1,0))   (1 per class)
    part_of some C(i,depth-1) SubClassOf C(i,depth-1)  (1 per chain)

With the defaults (400 chains, depth 25) that is exactly 10,000 classes and
20,000 axioms.

Usage: python3 scripts/perf_classify.py [--chains N] [--depth N]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from owlport.model import Existential, Named, Ontology, SubClassOf
from owlport.normalize import normalize
from owlport.reasoner import Reasoner

NS = "http://example.org/perf#"
PART_OF = NS + "part_of"


def class_iri(chain: int, level: int) -> str:
    return f"{NS}C{chain}_{level}"


def build_chain_ontology(chains: int = 400, depth: int = 25) -> Ontology:
    ontology = Ontology(document_uri=NS[:-1])
    ontology.properties.add(PART_OF)
    for i in range(chains):
        for j in range(depth):
            iri = class_iri(i, j)
            ontology.classes.add(iri)
            if j + 1 < depth:
                ontology.axioms.append(SubClassOf(Named(iri), Named(class_iri(i, j + 1))))
            ontology.axioms.append(
                SubClassOf(Named(iri), Existential(PART_OF, Named(class_iri(i, max(j - 1, 0)))))
            )
        last = Named(class_iri(i, depth - 1))
        ontology.axioms.append(SubClassOf(Existential(PART_OF, last), last))
    return ontology


def classify(ontology: Ontology):
    """Normalize, saturate and build the taxonomy; returns (reasoner, seconds)."""
    started = time.monotonic()
    reasoner = Reasoner(normalize(ontology))
    taxonomy = reasoner.taxonomy()
    elapsed = time.monotonic() - started
    return reasoner, taxonomy, elapsed


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--chains", type=int, default=400)
    parser.add_argument("--depth", type=int, default=25)
    args = parser.parse_args(argv)

    ontology = build_chain_ontology(args.chains, args.depth)
    print(f"built {len(ontology.classes)} classes, {len(ontology.axioms)} axioms")
    reasoner, taxonomy, elapsed = classify(ontology)
    print(f"classified in {elapsed:.2f}s: {len(taxonomy.nodes)} taxonomy nodes")
    # spot check: the bottom of the first chain is under its top
    assert reasoner.entails(class_iri(0, 0), class_iri(0, args.depth - 1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
