from __future__ import annotations

from dataclasses import replace

import pytest

from stringcat.compile import compile_term
from stringcat.diagram import (box_d, close_trace, compose_d, crossing_d, id_d, invariants_of,
                               iso_equal, map_labels, mirror_d, mod2, planar_equal, rotate_d,
                               tensor_d)
from stringcat.equivalence import decide_diagrams
from stringcat.errors import BoundaryMismatch
from stringcat.schemas import snake_right_1, snake_right_2
from stringcat.signature import Var, WireLabel as W

A, B, C, D = W('A'), W('B'), W('C'), W('D')


def D_(parse, sig, text, doctrine='planar-monoidal'):
    return compile_term(parse(text), sig, doctrine)


def test_identity_absorbs():
    f = box_d('f', [A], [B])
    assert iso_equal(compose_d(f, id_d([B])), f)
    assert iso_equal(compose_d(id_d([A]), f), f)


def test_tensor_boundary():
    s, t = box_d('s', [A], [B]), box_d('t', [C], [D])
    st = tensor_d(s, t)
    assert st.inputs == (A, C) and st.outputs == (B, D)


def test_compose_mismatch():
    with pytest.raises(BoundaryMismatch):
        compose_d(box_d('f', [A], [B]), box_d('g', [C], [D]))


def test_interchange_law():
    f, g = box_d('f', [A], [B]), box_d('g', [C], [D])
    f2, g2 = box_d('p', [B], [A]), box_d('q', [D], [C])
    lhs = compose_d(tensor_d(f, g), tensor_d(f2, g2))
    rhs = tensor_d(compose_d(f, f2), compose_d(g, g2))
    assert iso_equal(lhs, rhs) and planar_equal(lhs, rhs)


@pytest.mark.parametrize('text, doctrine', [
    ('f * g ; dg(f) * id[D]', 'dagger-planar-monoidal'),
    ('sym[A, B] ; sym[B, A]', 'dagger-braided-monoidal'),
    ('trR{X}(k)', 'dagger-planar-traced'),
])
def test_mirror_involution(parse, sig, text, doctrine):
    d = D_(parse, sig, text, doctrine)
    assert iso_equal(mirror_d(mirror_d(d)), d)


@pytest.mark.parametrize('text', ['f', 'eta[A] ; id[A^r] * f', 'mate(f) * g'])
def test_rotate_twice_in_pivotal(parse, sig, text):
    d = D_(parse, sig, text, 'planar-pivotal')
    # windings are read modulo 2 in pivotal regimes
    twice = map_labels(rotate_d(rotate_d(d)), mod2)
    assert decide_diagrams(twice, map_labels(d, mod2), 'planar-pivotal').equal


def test_mirror_crossing_is_unitary():
    s = crossing_d(A, B, +1)
    assert decide_diagrams(compose_d(s, mirror_d(s)), id_d([A, B]), 'braided-monoidal').equal


def test_close_trace_zero_wires():
    f = box_d('f', [A], [B])
    assert iso_equal(close_trace(f, 0), f)


def test_close_trace_twice_is_once(parse, sig):
    k = box_d('k', [A, C, D], [B, C, D])
    assert iso_equal(close_trace(close_trace(k, 1), 1), close_trace(k, 2))
    assert planar_equal(close_trace(close_trace(k, 1), 1), close_trace(k, 2))


def test_symmetric_yanking_diagram():
    s = crossing_d(A, A, 0)
    assert iso_equal(close_trace(s, 1), id_d([A]))


def test_close_trace_mismatch():
    with pytest.raises(BoundaryMismatch):
        close_trace(box_d('f', [A], [B]), 1)


def test_iso_equal_reflexive(parse, sig):
    d = D_(parse, sig, 'f * g ; id[B] * dg(g)', 'dagger-planar-monoidal')
    assert iso_equal(d, d) and planar_equal(d, d)


def test_non_spacial_pair(parse, sig):
    lhs = D_(parse, sig, "lam'[A] ; (c * id[A]) ; lam[A] ; f")
    rhs = D_(parse, sig, "f ; rho'[B] ; (id[B] * c) ; rho[B]")
    assert iso_equal(lhs, rhs)
    assert not planar_equal(lhs, rhs)


@pytest.mark.parametrize('snake', [snake_right_1, snake_right_2])
def test_snakes_are_planar_identities(sig, snake):
    d = compile_term(snake(Var('A')), sig, 'planar-autonomous')
    assert planar_equal(d, id_d(d.inputs))


def test_linking_of_double_braiding(parse, sig):
    inv = invariants_of(D_(parse, sig, 'sym[A, B] ; sym[B, A]', 'braided-monoidal'))
    (pair, value), = inv.perPairLinking
    assert value == 1


def test_identity_invariants(parse, sig):
    inv = invariants_of(D_(parse, sig, 'id[A * B]', 'braided-monoidal'))
    assert all(v == 0 for _, v in inv.perPairLinking)
    assert all(v == 0 for _, v in inv.perStrandFraming)


def test_twist_framing(parse, sig):
    inv = invariants_of(D_(parse, sig, 'twist[A]', 'balanced-monoidal'))
    assert [v for _, v in inv.perStrandFraming] == [1]


def test_planar_refines_iso(parse, sig):
    pairs = [("lam'[A] ; (c * id[A]) ; lam[A] ; f", "f ; rho'[B] ; (id[B] * c) ; rho[B]"),
             ('f * g', 'f * id[C] ; id[B] * g'), ('f * c', 'c * f')]
    for a, b in pairs:
        d1, d2 = D_(parse, sig, a), D_(parse, sig, b)
        assert not planar_equal(d1, d2) or iso_equal(d1, d2)


def test_invariants_with_closed_loop(parse, sig):
    # a closed loop beside a boundary strand
    d = D_(parse, sig, 'trR{X}(id[A * X])', 'braided-traced')
    inv = invariants_of(d)
    assert len(inv.boundaryConnection) == 2
