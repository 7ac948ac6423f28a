"""Shared hypothesis strategies over the expression and axiom domain."""

from __future__ import annotations

from hypothesis import strategies as st

from owlport.model import (
    BOTTOM,
    TOP,
    EquivalentClasses,
    Existential,
    Named,
    PropertyChain,
    SubClassOf,
    SubPropertyOf,
    TransitiveProperty,
    conjunction_of,
)

CLASS_IRIS = [f"http://t.example/C{i}" for i in range(8)]
PROPERTY_IRIS = [f"http://t.example/r{i}" for i in range(3)]

named = st.sampled_from(CLASS_IRIS).map(Named)
atomic = st.one_of(named, st.just(TOP), st.just(BOTTOM))


def expressions(max_depth: int = 3):
    # conjunction_of keeps expressions canonical, as the parsers do
    return st.recursive(
        atomic,
        lambda inner: st.one_of(
            st.builds(Existential, st.sampled_from(PROPERTY_IRIS), inner),
            st.lists(inner, min_size=2, max_size=3).map(conjunction_of),
        ),
        max_leaves=6,
    )


def class_axioms():
    expr = expressions()
    return st.one_of(
        st.builds(SubClassOf, expr, expr),
        st.lists(expr, min_size=2, max_size=3).map(tuple).map(EquivalentClasses),
    )


def property_axioms():
    prop = st.sampled_from(PROPERTY_IRIS)
    return st.one_of(
        st.builds(SubPropertyOf, prop, prop),
        st.builds(TransitiveProperty, prop),
        st.builds(PropertyChain, prop, prop, prop),
    )


def axiom_lists(max_size: int = 12):
    return st.lists(st.one_of(class_axioms(), property_axioms()), max_size=max_size)
