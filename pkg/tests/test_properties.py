"""Generative property suites.

Pools of names are pre-assigned to entity kinds so generated axioms are
kind-consistent by construction; each suite runs at least 200 cases.
"""

from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import HealthCheck, given, settings

from godp.axioms import (
    AllValuesFrom,
    And,
    Cardinality,
    ClassAssertion,
    Declaration,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    FunctionalProperty,
    InverseFunctionalProperty,
    InverseProperties,
    Named,
    Not,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Or,
    PropertyAssertion,
    SomeValuesFrom,
    SubClassOf,
    SubPropertyOf,
    axioms_equal,
    mentions,
    normalize_axiom,
    referenced_kinds,
)
from godp.emitter import emit_manchester
from godp.expansion import Substitution, apply_substitution, prune_omitted
from godp.frames import desugar_frames
from godp.names import THING, StructuredName, name, stratify_name, substitute_name
from godp.ontology import FlatOntology, combine
from godp.parser import parse_frames

SUITE = settings(
    max_examples=250,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)

CLASS_POOL = ["Ca", "Cb", "Cc", "Cd"]
PROP_POOL = ["pa", "pb", "pc"]
IND_POOL = ["ia", "ib"]
PARAM_POOL = ["X", "Y", "Z"]

class_names = st.sampled_from(CLASS_POOL).map(name)
prop_names = st.sampled_from(PROP_POOL).map(name)
ind_names = st.sampled_from(IND_POOL).map(name)


def _structured(base: str, constituents) -> StructuredName:
    return StructuredName(base, (tuple(constituents),))


param_or_class = st.sampled_from(CLASS_POOL + PARAM_POOL).map(name)
structured_class_names = st.one_of(
    param_or_class,
    st.builds(_structured, st.sampled_from(CLASS_POOL), st.lists(param_or_class, min_size=1, max_size=2)),
)
structured_prop_names = st.one_of(
    prop_names,
    st.builds(_structured, st.sampled_from(PROP_POOL), st.lists(param_or_class, min_size=1, max_size=2)),
)


def class_exprs(cnames=class_names, pnames=prop_names):
    base = st.one_of(cnames.map(Named), st.just(Named(THING)))

    def extend(children):
        return st.one_of(
            st.builds(SomeValuesFrom, pnames, children),
            st.builds(AllValuesFrom, pnames, children),
            st.builds(
                Cardinality,
                pnames,
                st.sampled_from(["min", "max", "exactly"]),
                st.integers(min_value=0, max_value=3),
                children,
            ),
            st.builds(Not, children),
            st.lists(children, min_size=2, max_size=3).map(lambda ops: And(tuple(ops))),
            st.lists(children, min_size=2, max_size=3).map(lambda ops: Or(tuple(ops))),
        )

    return st.recursive(base, extend, max_leaves=6)


def axiom_strategy(cnames=class_names, pnames=prop_names, frameable=False):
    exprs = class_exprs(cnames, pnames)
    named = cnames.map(Named)
    sub_position = named if frameable else exprs
    eq_first = named if frameable else exprs
    return st.one_of(
        st.builds(Declaration, st.just(EntityKind.CLASS), cnames),
        st.builds(Declaration, st.just(EntityKind.OBJECT_PROPERTY), pnames),
        st.builds(Declaration, st.just(EntityKind.INDIVIDUAL), ind_names),
        st.builds(SubClassOf, sub_position, exprs),
        st.builds(EquivalentClasses, eq_first, exprs),
        st.builds(DisjointClasses, eq_first, exprs),
        st.builds(ObjectPropertyDomain, pnames, exprs),
        st.builds(ObjectPropertyRange, pnames, exprs),
        st.builds(InverseProperties, pnames, pnames),
        st.builds(FunctionalProperty, pnames),
        st.builds(InverseFunctionalProperty, pnames),
        st.builds(SubPropertyOf, pnames, pnames),
        st.builds(ClassAssertion, exprs, ind_names),
        st.builds(PropertyAssertion, pnames, ind_names, ind_names),
    )


general_axioms = axiom_strategy()
structured_axioms = axiom_strategy(cnames=structured_class_names, pnames=structured_prop_names)
frameable_axioms = axiom_strategy(frameable=True)


def _flip(expr):
    """Reverse every commutative operand list (an equality-preserving rewrite)."""
    if isinstance(expr, And):
        return And(tuple(_flip(op) for op in reversed(expr.operands)))
    if isinstance(expr, Or):
        return Or(tuple(_flip(op) for op in reversed(expr.operands)))
    if isinstance(expr, Not):
        return Not(_flip(expr.operand))
    if isinstance(expr, SomeValuesFrom):
        return SomeValuesFrom(expr.prop, _flip(expr.filler))
    if isinstance(expr, AllValuesFrom):
        return AllValuesFrom(expr.prop, _flip(expr.filler))
    if isinstance(expr, Cardinality):
        return Cardinality(expr.prop, expr.bound, expr.n, _flip(expr.filler))
    return expr


def _flip_axiom(ax):
    if isinstance(ax, SubClassOf):
        return SubClassOf(_flip(ax.sub), _flip(ax.sup))
    if isinstance(ax, EquivalentClasses):
        return EquivalentClasses(_flip(ax.b), _flip(ax.a))
    if isinstance(ax, DisjointClasses):
        return DisjointClasses(_flip(ax.b), _flip(ax.a))
    if isinstance(ax, ObjectPropertyDomain):
        return ObjectPropertyDomain(ax.prop, _flip(ax.cls))
    if isinstance(ax, ObjectPropertyRange):
        return ObjectPropertyRange(ax.prop, _flip(ax.cls))
    if isinstance(ax, ClassAssertion):
        return ClassAssertion(_flip(ax.cls), ax.individual)
    return ax


class TestNormalizeProperties:
    @SUITE
    @given(general_axioms)
    def test_idempotent(self, ax):
        once = normalize_axiom(ax)
        assert normalize_axiom(once) == once

    @SUITE
    @given(general_axioms)
    def test_reflexive(self, ax):
        assert axioms_equal(ax, ax)

    @SUITE
    @given(general_axioms, general_axioms)
    def test_symmetric(self, a, b):
        assert axioms_equal(a, b) == axioms_equal(b, a)

    @SUITE
    @given(general_axioms)
    def test_transitive_through_commutative_rewrites(self, a):
        b = _flip_axiom(a)
        c = _flip_axiom(b)
        assert axioms_equal(a, b) and axioms_equal(b, c)
        assert axioms_equal(a, c)


class TestSubstitutionProperties:
    @SUITE
    @given(
        structured_axioms,
        st.dictionaries(
            st.sampled_from(PARAM_POOL).map(name),
            st.sampled_from(["Fa", "Fb", "Fc"]).map(name),
            min_size=0,
            max_size=3,
        ),
    )
    def test_mentions_homomorphism(self, ax, mapping):
        s = Substitution(tuple(mapping.items()), frozenset())
        (out,) = apply_substitution([ax], s)
        expected = frozenset(substitute_name(n, mapping) for n in mentions(ax))
        assert mentions(out) == expected


class TestPruningProperties:
    @SUITE
    @given(
        st.lists(structured_axioms, max_size=8),
        st.sets(st.sampled_from(PARAM_POOL).map(name), max_size=3),
        st.sets(st.sampled_from(PARAM_POOL).map(name), max_size=3),
    )
    def test_monotone(self, axioms, omitted_a, omitted_b):
        small, large = (omitted_a, omitted_a | omitted_b)
        keep_small = prune_omitted(axioms, small)
        keep_large = prune_omitted(axioms, large)
        assert set(map(repr, keep_large)) <= set(map(repr, keep_small))

    @SUITE
    @given(st.lists(structured_axioms, max_size=8))
    def test_empty_omitted_identity(self, axioms):
        assert prune_omitted(axioms, frozenset()) == axioms


def _ontology(axioms) -> FlatOntology:
    decls = []
    seen = set()
    for ax in axioms:
        for n, kind in referenced_kinds(ax):
            if n not in seen and n != THING:
                seen.add(n)
                decls.append(Declaration(kind, n))
    return FlatOntology.from_axioms(decls + list(axioms))


ontologies = st.lists(frameable_axioms, max_size=6).map(_ontology)


def norm(o: FlatOntology):
    return o.normalized_set()


class TestCombineProperties:
    @SUITE
    @given(ontologies)
    def test_and_idempotent(self, a):
        assert norm(combine(a, a)) == norm(a)

    @SUITE
    @given(ontologies, ontologies)
    def test_and_commutative(self, a, b):
        assert norm(combine(a, b)) == norm(combine(b, a))

    @SUITE
    @given(ontologies, ontologies, ontologies)
    def test_and_associative(self, a, b, c):
        assert norm(combine(combine(a, b), c)) == norm(combine(a, combine(b, c)))


class TestEmissionProperties:
    @SUITE
    @given(ontologies)
    def test_deterministic(self, o):
        assert emit_manchester(o) == emit_manchester(o)

    @SUITE
    @given(st.lists(frameable_axioms, max_size=6))
    def test_equal_inputs_equal_bytes(self, axioms):
        assert emit_manchester(_ontology(axioms)) == emit_manchester(_ontology(list(axioms)))

    @SUITE
    @given(ontologies)
    def test_roundtrip(self, o):
        text = emit_manchester(o)
        reparsed = desugar_frames(parse_frames(text))
        assert sorted(repr(normalize_axiom(ax)) for ax in reparsed) == sorted(
            repr(normalize_axiom(ax)) for ax in o.axioms
        )


class TestStratifyProperties:
    @SUITE
    @given(structured_class_names)
    def test_pure_function(self, n):
        copy = StructuredName(n.base, n.groups)
        assert stratify_name(n) == stratify_name(copy)

    @SUITE
    @given(structured_class_names)
    def test_fixpoint_on_plain_result(self, n):
        flat = name(stratify_name(n))
        assert stratify_name(flat) == flat.base
