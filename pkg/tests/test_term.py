from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from stringcat import term as T
from stringcat.errors import ConstantNotInDoctrine, TypeMismatch
from stringcat.frontend import parse_object
from stringcat.randterm import TermGen, default_signature
from stringcat.signature import OTensor, RightDual, Var

A, B, C, E = Var('A'), Var('B'), Var('C'), Var('E')


def test_eq1_type(parse, eq1_sig):
    t = parse('M * id[C] ; N ; P', eq1_sig)
    typ = T.infer_type(t, eq1_sig)
    assert (typ.dom, typ.cod) == (OTensor(A, C), E)


def test_unit_then_counit_mismatch(parse, sig):
    with pytest.raises(TypeMismatch):
        T.infer_type(parse('eta[A] ; eps[A]'), sig)


def test_mate_type(parse, sig):
    typ = T.infer_type(parse('mate(f)'), sig)
    assert (typ.dom, typ.cod) == (RightDual(B), RightDual(A))


@pytest.mark.parametrize('text, doctrine, ok', [
    ('sym[A, B]', 'planar-monoidal', False),
    ('sym[A, B]', 'braided-monoidal', True),
    ('trL{X}(id[X * A])', 'right-traced', False),
    ('trL{X}(id[X * A])', 'planar-traced', True),
    ('twist[A]', 'balanced-monoidal', True),
    ('twist[A]', 'braided-monoidal', False),
    ('piv[A]', 'braided-autonomous', False),
    ('copy[A]', 'coproduct', False),
    ('dg(f)', 'planar-monoidal', False),
    ('dg(f)', 'dagger-planar-monoidal', True),
])
def test_check_doctrine(parse, text, doctrine, ok):
    t = parse(text)
    if ok:
        T.check_doctrine(t, doctrine)
    else:
        with pytest.raises(ConstantNotInDoctrine):
            T.check_doctrine(t, doctrine)


@pytest.mark.parametrize('text, pushed', [
    ('dg(f ; dg(f))', 'f ; dg(f)'),
    ('dg(f * g)', 'dg(f) * dg(g)'),
    ('dg(dg(f))', 'f'),
    ('dg(sym[A, B])', "sym'[A, B]"),
    ("dg(alpha[A, B, C])", "alpha'[A, B, C]"),
    ('dg(trR{X}(k))', 'trR{X}(dg(k))'),
])
def test_dagger_pushdown(parse, sig, text, pushed):
    t = T.dagger_pushdown(parse(text))
    assert t == parse(pushed)
    assert T.is_pushed(t)
    assert T.infer_type(t, sig) == T.infer_type(parse(text), sig)


def test_axiom_schema_lists():
    assert [s.name for s in T.axiom_schemas('category')] == \
        ['left-unit', 'right-unit', 'associativity']
    braided = {s.name for s in T.axiom_schemas('braided-monoidal')}
    assert {'hexagon-1', 'hexagon-2', 'pentagon', 'triangle'} <= braided


@pytest.mark.parametrize('doctrine', ['category', 'planar-monoidal', 'braided-monoidal',
                                      'tortile', 'planar-traced', 'biproduct',
                                      'dagger-compact-closed'])
def test_schemas_typecheck(doctrine):
    rng = random.Random(1)
    from stringcat.randterm import random_instance
    for s in T.axiom_schemas(doctrine):
        lhs, rhs, sig = random_instance(s, doctrine, rng, context=False)
        assert T.infer_type(lhs, sig) == T.infer_type(rhs, sig), s.name
        T.check_doctrine(lhs, doctrine)
        T.check_doctrine(rhs, doctrine)


@pytest.mark.parametrize('a, b', [
    ('(A * B) * C', 'A * (B * C)'),
    ('I * A', 'A'),
    ('A * (I * (B * I))', '(A * B) * I'),
    ('I', 'I * I'),
])
def test_structural_isos(sig, a, b):
    x, y = parse_object(a), parse_object(b)
    t = T.structural(x, y)
    typ = T.infer_type(t, sig)
    assert (typ.dom, typ.cod) == (x, y)
    inv = T.inverse_structural(t)
    typ = T.infer_type(inv, sig)
    assert (typ.dom, typ.cod) == (y, x)


def test_chain_inserts_structure(parse, sig):
    t = T.chain(sig, parse('f * id[C]'), parse('id[B * C] * id[I]'))
    typ = T.infer_type(t, sig)
    assert (typ.dom, typ.cod) == (OTensor(A, C), OTensor(OTensor(B, C), T.I))


@pytest.mark.parametrize('doctrine', ['planar-monoidal', 'tortile', 'symmetric-traced',
                                      'traced-biproduct', 'dagger-planar-pivotal'])
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_random_terms_are_well_typed(doctrine, seed):
    sig = default_signature()
    gen = TermGen(sig, doctrine, random.Random(seed))
    t, outs = gen.term(gen.wires())
    T.infer_type(t, sig)
    T.check_doctrine(t, doctrine)
    pushed = T.dagger_pushdown(t)
    assert T.is_pushed(pushed)
    assert T.infer_type(pushed, sig) == T.infer_type(t, sig)
