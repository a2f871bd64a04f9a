from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from stringcat import term as T
from stringcat.compile import compile_term
from stringcat.errors import CarrierMismatch, UnsupportedConstant
from stringcat.frontend import parse_term
from stringcat.models import (RAT, Interpretation, check_soundness, dsum, eval_diagram,
                              eval_term, get_model, matmul, parse_bindings, partial_trace,
                              random_interpretation, rel_trace, show_matrix, sizes_for)
from stringcat.randterm import TermGen, default_signature
from stringcat.signature import OTensor, Var, expand_boundary, make_signature

MAT, REL = get_model('Mat[rat]'), get_model('RelPlus')


def rel(rows):
    return np.array(rows, dtype=bool)


def test_identity_is_identity_matrix(sig):
    interp = Interpretation(sig, {'A': 3})
    out = eval_term(parse_term('id[A]', sig), interp, MAT)
    assert np.array_equal(out, np.eye(3, dtype=int))


def test_eq1_small(parse, eq1_sig):
    # F = P . N . (M * id_C) with 2-dim carriers, against the index sum
    rng = np.random.default_rng(1)
    M, N, P = (rng.integers(0, 4, size=s) for s in [(2, 2), (4, 2), (2, 2)])
    interp = Interpretation(eq1_sig, dict.fromkeys('ABCDE', 2), {'M': M, 'N': N, 'P': P})
    got = eval_term(parse('M * id[C] ; N ; P', eq1_sig), interp, MAT)
    want = np.zeros((4, 2), dtype=int)
    for i in range(2):
        for k in range(2):
            for m in range(2):
                want[i * 2 + k, m] = sum(P[l, m] * N[j * 2 + k, l] * M[i, j]
                                         for j in range(2) for l in range(2))
    assert np.array_equal(got.astype(int), want)


@pytest.mark.parametrize('n', [1, 2, 3])
def test_symmetric_yanking_in_relplus(sig, n):
    interp = Interpretation(sig, {'X': n})
    out = eval_term(parse_term('trR{X}(sym[X, X])', sig), interp, REL)
    assert np.array_equal(out, np.eye(n, dtype=bool))


@pytest.mark.parametrize('r, a, b, x, want', [
    ([[0, 1], [1, 1]], 1, 1, 1, [[1]]),          # a R x R x R b
    ([[1, 0], [0, 0]], 1, 1, 1, [[1]]),          # direct step, n = 0
    ([[0, 1], [0, 0]], 1, 1, 1, [[0]]),          # no path reaches b
])
def test_rel_trace_examples(r, a, b, x, want):
    assert np.array_equal(rel_trace(rel(r), a, b, x), rel(want))


def test_carrier_mismatch(sig):
    with pytest.raises(CarrierMismatch):
        Interpretation(sig, {'A': 2, 'B': 2}, {'f': np.zeros((3, 2), dtype=int)}).check(MAT)


def test_unsupported_constant(sig):
    interp = Interpretation(sig, {'A': 2})
    with pytest.raises(UnsupportedConstant):
        eval_term(parse_term('copy[A]', sig), interp, MAT)


def test_bindings_file(sig):
    text = 'object A = 2\nobject B = 2\nmorphism f = [[1, 2], [3, 4]]\n'
    interp = parse_bindings(text, sig, MAT)
    out = eval_term(parse_term('f ; id[B]', sig), interp, MAT)
    assert show_matrix(out) == '[[1, 2], [3, 4]]'


def test_relation_bindings(sig):
    text = 'object A = 2\nobject B = 2\nmorphism f = {(a1,b2),(a2,b1)}\n'
    out = eval_term(parse_term('f', sig), parse_bindings(text, sig, REL), REL)
    assert np.array_equal(out, rel([[0, 1], [1, 0]]))


@pytest.mark.parametrize('doctrine, model', [
    ('planar-monoidal', 'Mat[rat]'), ('braided-monoidal', 'Mat[rat]'),
    ('compact-closed', 'Mat[rat]'), ('dagger-symmetric-monoidal', 'RelPlus'),
    ('traced-biproduct', 'RelPlus'), ('symmetric-traced', 'Mat[nat]'),
    ('dagger-compact-closed', 'RelTimes'),
])
def test_soundness_smoke(doctrine, model):
    rep = check_soundness(doctrine, model, trials=60, seed=2)
    assert rep.checked > 0


def test_pentagon_and_hexagons_in_mat():
    rep = check_soundness('braided-monoidal', MAT, trials=200, seed=4)
    assert {'pentagon', 'hexagon-1', 'hexagon-2'} <= rep.schemas


def random_term(doctrine, seed, m, then=False):
    sig = default_signature()
    rng = random.Random(seed)
    gen = TermGen(sig, doctrine, rng)
    t, outs = gen.term(gen.wires())
    typ = T.infer_type(t, sig)
    # matrices grow exponentially in the number of wires
    assume(len(expand_boundary(typ.dom)) + len(expand_boundary(typ.cod)) <= 6)
    interp = random_interpretation(rng, sig, m, sizes_for(m))
    if not then:
        return t, sig, interp
    g, _ = gen.term(outs)
    assume(len(expand_boundary(T.infer_type(g, sig).cod)) <= 4)
    g = T.Compose(g, T.structural(T.infer_type(t, sig).cod, T.infer_type(g, sig).dom))
    return t, g, sig, interp


CASES = [('planar-monoidal', MAT), ('compact-closed', MAT), ('tortile', MAT),
         ('symmetric-traced', MAT), ('traced-biproduct', REL), ('dagger-symmetric-traced', REL),
         ('dagger-compact-closed', get_model('RelTimes'))]


@pytest.mark.parametrize('doctrine, m', CASES, ids=[c[0] for c in CASES])
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(seed=st.integers(0, 10**6))
def test_diagram_evaluation_agrees_with_terms(doctrine, m, seed):
    t, sig, interp = random_term(doctrine, seed, m)
    d = compile_term(t, sig, doctrine)
    assert np.array_equal(eval_diagram(d, interp, m), eval_term(t, interp, m))


@pytest.mark.parametrize('doctrine, m', CASES, ids=[c[0] for c in CASES])
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(seed=st.integers(0, 10**6))
def test_eval_is_functorial(doctrine, m, seed):
    f, g, sig, interp = random_term(doctrine, seed, m, then=True)
    ev = lambda t: eval_term(t, interp, m)
    s = m.semiring
    assert np.array_equal(ev(T.Compose(g, f)), matmul(s, ev(f), ev(g)))
    both = dsum(s, ev(f), ev(g)) if m.additive else np.kron(ev(f), ev(g))
    assert np.array_equal(ev(T.Tensor(f, g)), both)


@pytest.mark.parametrize('doctrine, m', [('dagger-symmetric-traced', REL),
                                         ('dagger-compact-closed', MAT)])
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(seed=st.integers(0, 10**6))
def test_dagger_is_transpose(doctrine, m, seed):
    t, sig, interp = random_term(doctrine, seed, m)
    assert np.array_equal(eval_term(T.Dagger(t), interp, m), eval_term(t, interp, m).T)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), a=st.integers(1, 2), b=st.integers(1, 2),
       x=st.integers(1, 2))
def test_matrix_trace_is_partial_trace(seed, a, b, x):
    A, B, X = Var('A'), Var('B'), Var('X')
    sig = make_signature({'A', 'B', 'X'}, {'k': (OTensor(A, X), OTensor(B, X))})
    rng = np.random.default_rng(seed)
    k = rng.integers(0, 3, size=(a * x, b * x))
    interp = Interpretation(sig, {'A': a, 'B': b, 'X': x}, {'k': k})
    got = eval_term(parse_term('trR{X}(k)', sig), interp, MAT)
    want = np.zeros((a, b), dtype=int)
    for i in range(a):
        for j in range(b):
            want[i, j] = sum(k[i * x + y, j * x + y] for y in range(x))
    assert np.array_equal(got.astype(int), want)
    assert np.array_equal(partial_trace(RAT, k.astype(object), a, b, x).astype(int), want)
