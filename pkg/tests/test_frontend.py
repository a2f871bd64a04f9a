from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from stringcat import term as T
from stringcat.errors import TermSyntaxError, UnknownGenerator
from stringcat.frontend import parse_term, print_term
from stringcat.randterm import TermGen, default_signature


@pytest.mark.parametrize('text', ['f ; ;', 'f *', 'id[A', 'trR{X}(f', 'sym[A]B', ''])
def test_syntax_errors(parse, text):
    with pytest.raises(TermSyntaxError):
        parse(text)


def test_syntax_error_reports_position(parse):
    with pytest.raises(TermSyntaxError, match='1:5'):
        parse('f ; ;')


def test_unknown_generator(parse):
    with pytest.raises(UnknownGenerator):
        parse('f ; nope')


def test_composition_is_diagrammatic(parse):
    t = parse('f ; id[B]')
    assert t == T.Compose(T.Id(T.Var('B')), T.Gen('f'))


@pytest.mark.parametrize('text', [
    'f ; id[B]',
    "alpha[A, B, C] ; alpha'[A, B, C]",
    'lam[A] * rho[B]',
    'trR{X}(k)',
    "dg(f) ; mate(f)",
    'eta[A] * id[A]',
    'copy[A] ; erase[A] * id[A]',
])
def test_print_parse_round_trip(parse, text):
    t = parse(text)
    assert parse(print_term(t)) == t


@pytest.mark.parametrize('doctrine', ['planar-monoidal', 'symmetric-traced', 'biproduct',
                                      'compact-closed', 'dagger-tortile'])
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_random_terms_round_trip(doctrine, seed):
    sig = default_signature()
    gen = TermGen(sig, doctrine, random.Random(seed))
    t, _ = gen.term(gen.wires())
    assert parse_term(print_term(t), sig) == t
