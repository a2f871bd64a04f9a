"""Axiom schemas of every doctrine, as pairs of terms over metavariables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .doctrine import Doctrine, get_doctrine
from .signature import I, ObjectTerm, OTensor, RightDual, Var
from . import term as T

A, B, C, D, E, F, X, Y = (Var(n) for n in 'ABCDEFXY')
f, g, h, k = (T.Gen(n) for n in 'fghk')
Ar, Arr = RightDual(A), RightDual(RightDual(A))


def _t(a, b):
    return OTensor(a, b)


def seq(*ts):
    return T.compose_all(*ts)


@dataclass(frozen=True)
class Schema:
    name: str
    requires: frozenset[str]
    lhs: T.Term
    rhs: T.Term
    morphisms: Mapping[str, tuple[ObjectTerm, ObjectTerm]] = field(default_factory=dict)
    monoidal: bool = True

    @property
    def obj_vars(self) -> tuple[str, ...]:
        from .signature import atoms
        seen: dict[str, None] = {}
        for t in (self.lhs, self.rhs):
            for s in T.subterms(t):
                for o in _objects_in(s):
                    for a in atoms(o):
                        seen[a] = None
        for dom, cod in self.morphisms.values():
            for a in list(atoms(dom)) + list(atoms(cod)):
                seen[a] = None
        return tuple(seen)

    def instantiate(self, objs: Mapping[str, ObjectTerm], prefix: str = ''):
        """Return (lhs, rhs, generator types) with object metavariables
        replaced and generators renamed with `prefix`."""
        env = dict(objs)

        def fo(o):
            return T.subst_objects(o, env)

        def fg(n):
            return T.Gen(prefix + n)
        gens = {prefix + n: (fo(d), fo(c)) for n, (d, c) in self.morphisms.items()}
        return T.map_objects(self.lhs, fo, fg), T.map_objects(self.rhs, fo, fg), gens


def _objects_in(t):
    if isinstance(t, T.Id):
        return (t.obj,)
    if isinstance(t, (T.TrR, T.TrL)):
        return (t.x,)
    if isinstance(t, T.CONSTANTS):
        return tuple(getattr(t, n) for n in ('a', 'b', 'c') if hasattr(t, n))
    return ()


def _s(name, requires, lhs, rhs, monoidal=True, **mors):
    return Schema(name, frozenset(requires), lhs, rhs, mors, monoidal)


def trace_r(x, body):
    return T.TrR(x, body)


def right_trace_pivotal(a: ObjectTerm, f: T.Term) -> T.Term:
    """Right trace of f: a -> a built from the pivotal structure."""
    ar = RightDual(a)
    return seq(T.Eta(ar), T.Tensor(T.Piv(a, inv=True), T.Id(ar)),
               T.Tensor(f, T.Id(ar)), T.Eps(a))


def left_trace_pivotal(a: ObjectTerm, f: T.Term) -> T.Term:
    ar = RightDual(a)
    return seq(T.Eta(a), T.Tensor(T.Id(ar), seq(f, T.Piv(a))), T.Eps(ar))


def _category():
    fAB = dict(f=(A, B))
    return [
        _s('left-unit', (), seq(f, T.Id(B)), f, False, **fAB),
        _s('right-unit', (), seq(T.Id(A), f), f, False, **fAB),
        _s('associativity', (), T.Compose(h, T.Compose(g, f)), T.Compose(T.Compose(h, g), f),
           False, f=(A, B), g=(B, C), h=(C, D)),
    ]


def _monoidal():
    a, l, r = T.Alpha, T.Lambda, T.Rho
    Id = T.Id
    return [
        _s('interchange', (), seq(T.Tensor(f, h), T.Tensor(g, k)),
           T.Tensor(seq(f, g), seq(h, k)), f=(A, B), g=(B, C), h=(D, E), k=(E, F)),
        _s('tensor-identity', (), T.Tensor(Id(A), Id(B)), Id(_t(A, B))),
        _s('alpha-natural', (), seq(T.Tensor(T.Tensor(f, g), h), a(B, D, F)),
           seq(a(A, C, E), T.Tensor(f, T.Tensor(g, h))), f=(A, B), g=(C, D), h=(E, F)),
        _s('lambda-natural', (), seq(l(A), f), seq(T.Tensor(Id(I), f), l(B)), f=(A, B)),
        _s('rho-natural', (), seq(r(A), f), seq(T.Tensor(f, Id(I)), r(B)), f=(A, B)),
        _s('pentagon', (), seq(a(_t(A, B), C, D), a(A, B, _t(C, D))),
           seq(T.Tensor(a(A, B, C), Id(D)), a(A, _t(B, C), D), T.Tensor(Id(A), a(B, C, D)))),
        _s('triangle', (), seq(a(A, I, B), T.Tensor(Id(A), l(B))), T.Tensor(r(A), Id(B))),
        _s('alpha-iso', (), seq(a(A, B, C), a(A, B, C, inv=True)), Id(_t(_t(A, B), C))),
        _s('lambda-iso', (), seq(l(A, inv=True), l(A)), Id(A)),
        _s('rho-iso', (), seq(r(A), r(A, inv=True)), Id(_t(A, I))),
    ]


def spacial_pair(a: ObjectTerm, h_: T.Term) -> tuple[T.Term, T.Term]:
    """rho . (id * h) . rho^-1  and  lambda . (h * id) . lambda^-1."""
    return (seq(T.Rho(a, inv=True), T.Tensor(T.Id(a), h_), T.Rho(a)),
            seq(T.Lambda(a, inv=True), T.Tensor(h_, T.Id(a)), T.Lambda(a)))


def _spacial():
    lhs, rhs = spacial_pair(A, h)
    return [_s('spacial', {'spacial'}, lhs, rhs, h=(I, I))]


def _braided():
    s, a, Id = T.Sym, T.Alpha, T.Id
    return [
        _s('hexagon-1', {'braided'},
           seq(T.Tensor(s(A, B), Id(C)), a(B, A, C), T.Tensor(Id(B), s(A, C))),
           seq(a(A, B, C), s(A, _t(B, C)), a(B, C, A))),
        _s('hexagon-2', {'braided'},
           seq(T.Tensor(s(B, A, inv=True), Id(C)), a(B, A, C), T.Tensor(Id(B), s(C, A, inv=True))),
           seq(a(A, B, C), s(_t(B, C), A, inv=True), a(B, C, A))),
        _s('braiding-natural', {'braided'}, seq(T.Tensor(f, g), s(B, D)),
           seq(s(A, C), T.Tensor(g, f)), f=(A, B), g=(C, D)),
        _s('braiding-iso', {'braided'}, seq(s(A, B), s(A, B, inv=True)), Id(_t(A, B))),
        _s('braiding-iso-2', {'braided'}, seq(s(A, B, inv=True), s(A, B)), Id(_t(B, A))),
    ]


def _twist():
    th, s, Id = T.Twist, T.Sym, T.Id
    return [
        _s('balanced', {'twist'}, th(_t(A, B)),
           seq(s(A, B), T.Tensor(th(B), th(A)), s(B, A))),
        _s('twist-natural', {'twist'}, seq(f, th(B)), seq(th(A), f), f=(A, B)),
        _s('twist-iso', {'twist'}, seq(th(A), th(A, inv=True)), Id(A)),
        _s('twist-unit', {'twist'}, th(I), Id(I)),
    ]


def _symmetric():
    return [_s('symmetry', {'symmetric'}, seq(T.Sym(A, B), T.Sym(B, A)), T.Id(_t(A, B)))]


def snake_right_1(a: ObjectTerm) -> T.Term:
    ar = RightDual(a)
    return seq(T.Rho(a, inv=True), T.Tensor(T.Id(a), T.Eta(a)), T.Alpha(a, ar, a, inv=True),
               T.Tensor(T.Eps(a), T.Id(a)), T.Lambda(a))


def snake_right_2(a: ObjectTerm) -> T.Term:
    ar = RightDual(a)
    return seq(T.Lambda(ar, inv=True), T.Tensor(T.Eta(a), T.Id(ar)), T.Alpha(ar, a, ar),
               T.Tensor(T.Id(ar), T.Eps(a)), T.Rho(ar))


def snake_left_1(a: ObjectTerm) -> T.Term:
    al = a.l
    return seq(T.Lambda(a, inv=True), T.Tensor(T.EtaL(a), T.Id(a)), T.Alpha(a, al, a),
               T.Tensor(T.Id(a), T.EpsL(a)), T.Rho(a))


def snake_left_2(a: ObjectTerm) -> T.Term:
    al = a.l
    return seq(T.Rho(al, inv=True), T.Tensor(T.Id(al), T.EtaL(a)), T.Alpha(al, a, al, inv=True),
               T.Tensor(T.EpsL(a), T.Id(al)), T.Lambda(al))


def _duals():
    return [
        _s('snake-right-1', {'rightDuals'}, snake_right_1(A), T.Id(A)),
        _s('snake-right-2', {'rightDuals'}, snake_right_2(A), T.Id(Ar)),
        _s('snake-left-1', {'leftDuals'}, snake_left_1(A), T.Id(A)),
        _s('snake-left-2', {'leftDuals'}, snake_left_2(A), T.Id(A.l)),
        _s('mate-functorial', {'rightDuals'}, T.Mate(seq(f, g)), seq(T.Mate(g), T.Mate(f)),
           f=(A, B), g=(B, C)),
        _s('mate-identity', {'rightDuals'}, T.Mate(T.Id(A)), T.Id(Ar)),
    ]


def _pivotal():
    p = T.Piv
    return [
        _s('pivot-natural', {'pivotal'}, seq(f, p(B)), seq(p(A), T.Mate(T.Mate(f))), f=(A, B)),
        _s('pivot-iso', {'pivotal'}, seq(p(A), p(A, inv=True)), T.Id(A)),
        _s('pivot-dual', {'pivotal'}, seq(p(Ar), T.Mate(p(A))), T.Id(Ar)),
    ]


def _spherical():
    return [_s('spherical', {'pivotal', 'spherical'}, right_trace_pivotal(A, f),
               left_trace_pivotal(A, f), f=(A, A))]


def _right_trace():
    Id, a, r = T.Id, T.Alpha, T.Rho
    tr = T.TrR
    return [
        _s('tightening', {'rightTrace'},
           tr(X, seq(T.Tensor(h, Id(X)), f, T.Tensor(g, Id(X)))), seq(h, tr(X, f), g),
           f=(_t(A, X), _t(B, X)), g=(B, D), h=(C, A)),
        _s('sliding', {'rightTrace'}, tr(Y, seq(T.Tensor(Id(A), g), f)),
           tr(X, seq(f, T.Tensor(Id(B), g))), f=(_t(A, X), _t(B, Y)), g=(Y, X)),
        _s('vanishing-unit', {'rightTrace'}, tr(I, f), seq(r(A, inv=True), f, r(B)),
           f=(_t(A, I), _t(B, I))),
        _s('vanishing-tensor', {'rightTrace'}, tr(_t(X, Y), f),
           tr(X, tr(Y, seq(a(A, X, Y), f, a(B, X, Y, inv=True)))),
           f=(_t(A, _t(X, Y)), _t(B, _t(X, Y)))),
        _s('strength', {'rightTrace'}, tr(X, seq(a(C, A, X), T.Tensor(g, f), a(D, B, X, inv=True))),
           T.Tensor(g, tr(X, f)), f=(_t(A, X), _t(B, X)), g=(C, D)),
    ]


def _left_trace():
    Id, a, l = T.Id, T.Alpha, T.Lambda
    tr = T.TrL
    return [
        _s('tightening-left', {'leftTrace'},
           tr(X, seq(T.Tensor(Id(X), h), f, T.Tensor(Id(X), g))), seq(h, tr(X, f), g),
           f=(_t(X, A), _t(X, B)), g=(B, D), h=(C, A)),
        _s('sliding-left', {'leftTrace'}, tr(Y, seq(T.Tensor(g, Id(A)), f)),
           tr(X, seq(f, T.Tensor(g, Id(B)))), f=(_t(X, A), _t(Y, B)), g=(Y, X)),
        _s('vanishing-unit-left', {'leftTrace'}, tr(I, f), seq(l(A, inv=True), f, l(B)),
           f=(_t(I, A), _t(I, B))),
        _s('vanishing-tensor-left', {'leftTrace'}, tr(_t(X, Y), f),
           tr(Y, tr(X, seq(a(X, Y, A, inv=True), f, a(X, Y, B)))),
           f=(_t(_t(X, Y), A), _t(_t(X, Y), B))),
        _s('strength-left', {'leftTrace'},
           tr(X, seq(a(X, A, C, inv=True), T.Tensor(f, g), a(X, B, D))),
           T.Tensor(tr(X, f), g), f=(_t(X, A), _t(X, B)), g=(C, D)),
    ]


def left_pivoting_pair(a: ObjectTerm, b: ObjectTerm, f_: T.Term) -> tuple[T.Term, T.Term]:
    """Both sides of left pivoting for f_: I -> a*b."""
    lhs = T.TrR(b, seq(T.Lambda(b), T.Rho(b, inv=True), T.Tensor(T.Id(b), f_),
                       T.Alpha(b, a, b, inv=True)))
    rhs = T.TrL(a, seq(T.Rho(a), T.Lambda(a, inv=True), T.Tensor(f_, T.Id(a)),
                       T.Alpha(a, b, a)))
    return lhs, rhs


def right_pivoting_pair(a: ObjectTerm, b: ObjectTerm, g_: T.Term) -> tuple[T.Term, T.Term]:
    """Both sides of right pivoting for g_: a*b -> I."""
    lhs = T.TrR(b, seq(T.Alpha(b, a, b), T.Tensor(T.Id(b), g_), T.Rho(b), T.Lambda(b, inv=True)))
    rhs = T.TrL(a, seq(T.Alpha(a, b, a, inv=True), T.Tensor(g_, T.Id(a)), T.Lambda(a),
                       T.Rho(a, inv=True)))
    return lhs, rhs


def _planar_trace():
    a = T.Alpha
    lp = left_pivoting_pair(A, B, f)
    rp = right_pivoting_pair(A, B, g)
    return [
        _s('trace-interchange', {'rightTrace', 'leftTrace'}, T.TrR(X, T.TrL(Y, f)),
           T.TrL(Y, T.TrR(X, seq(a(Y, A, X), f, a(Y, B, X, inv=True)))),
           f=(_t(Y, _t(A, X)), _t(Y, _t(B, X)))),
        _s('left-pivoting', {'rightTrace', 'leftTrace'}, *lp, f=(I, _t(A, B))),
        _s('right-pivoting', {'rightTrace', 'leftTrace'}, *rp, g=(_t(A, B), I)),
    ]


def spherical_trace_pair(a: ObjectTerm, f_: T.Term) -> tuple[T.Term, T.Term]:
    return (T.TrL(a, seq(T.Rho(a), f_, T.Rho(a, inv=True))),
            T.TrR(a, seq(T.Lambda(a), f_, T.Lambda(a, inv=True))))


def braided_trace_lhs(a: ObjectTerm, swapped: bool = False) -> T.Term:
    first = T.TrR(a, T.Sym(a, a, inv=not swapped))
    second = T.TrL(a, T.Sym(a, a, inv=swapped))
    return seq(first, second)


def _traced_extra():
    return [
        _s('spherical-trace', {'rightTrace', 'leftTrace', 'spherical'},
           *spherical_trace_pair(A, f), f=(A, A)),
        _s('braided-trace', {'rightTrace', 'leftTrace', 'braided'},
           braided_trace_lhs(A), T.Id(A)),
        _s('yanking', {'rightTrace', 'twist'}, T.TrR(X, T.Sym(X, X)), T.Twist(X)),
        _s('yanking-inverse', {'rightTrace', 'twist'}, T.TrR(X, T.Sym(X, X, inv=True)),
           T.Twist(X, inv=True)),
        _s('symmetric-yanking', {'rightTrace', 'symmetric'}, T.TrR(X, T.Sym(X, X)), T.Id(X)),
    ]


def copy_tensor_lhs(a: ObjectTerm, b: ObjectTerm) -> T.Term:
    al, Id = T.Alpha, T.Id
    return seq(T.Copy(_t(a, b)), al(a, b, _t(a, b)),
               T.Tensor(Id(a), al(b, a, b, inv=True)),
               T.Tensor(Id(a), T.Tensor(T.Sym(b, a), Id(b))),
               T.Tensor(Id(a), al(a, b, b)), al(a, a, _t(b, b), inv=True))


def _products():
    cp, er, Id = T.Copy, T.Erase, T.Id
    req = {'copyErase'}
    return [
        _s('copy-natural', req, seq(f, cp(B)), seq(cp(A), T.Tensor(f, f)), f=(A, B)),
        _s('erase-natural', req, seq(f, er(B)), er(A), f=(A, B)),
        _s('coassociative', req, seq(cp(A), T.Tensor(cp(A), Id(A)), T.Alpha(A, A, A)),
           seq(cp(A), T.Tensor(Id(A), cp(A)))),
        _s('counit-right', req, seq(cp(A), T.Tensor(Id(A), er(A)), T.Rho(A)), Id(A)),
        _s('counit-left', req, seq(cp(A), T.Tensor(er(A), Id(A)), T.Lambda(A)), Id(A)),
        _s('cocommutative', req, seq(cp(A), T.Sym(A, A)), cp(A)),
        _s('copy-unit', req, cp(I), T.Lambda(I, inv=True)),
        _s('copy-tensor', req, copy_tensor_lhs(A, B), T.Tensor(cp(A), cp(B))),
        _s('erase-unit', req, er(I), Id(I)),
        _s('erase-tensor', req, er(_t(A, B)), seq(T.Tensor(er(A), er(B)), T.Lambda(I))),
    ]


def merge_tensor_rhs(a: ObjectTerm, b: ObjectTerm) -> T.Term:
    al, Id = T.Alpha, T.Id
    return seq(al(a, a, _t(b, b)), T.Tensor(Id(a), al(a, b, b, inv=True)),
               T.Tensor(Id(a), T.Tensor(T.Sym(a, b), Id(b))),
               T.Tensor(Id(a), al(b, a, b)), al(a, b, _t(a, b), inv=True), T.Merge(_t(a, b)))


def _coproducts():
    mg, it, Id = T.Merge, T.Init, T.Id
    req = {'mergeInitial'}
    return [
        _s('merge-natural', req, seq(mg(A), f), seq(T.Tensor(f, f), mg(B)), f=(A, B)),
        _s('init-natural', req, seq(it(A), f), it(B), f=(A, B)),
        _s('merge-associative', req, seq(T.Alpha(A, A, A, inv=True), T.Tensor(mg(A), Id(A)), mg(A)),
           seq(T.Tensor(Id(A), mg(A)), mg(A))),
        _s('merge-unit-right', req, seq(T.Rho(A, inv=True), T.Tensor(Id(A), it(A)), mg(A)), Id(A)),
        _s('merge-unit-left', req, seq(T.Lambda(A, inv=True), T.Tensor(it(A), Id(A)), mg(A)), Id(A)),
        _s('merge-commutative', req, seq(T.Sym(A, A), mg(A)), mg(A)),
        _s('merge-unit', req, mg(I), T.Lambda(I)),
        _s('merge-tensor', req, T.Tensor(mg(A), mg(B)), merge_tensor_rhs(A, B)),
        _s('init-unit', req, it(I), Id(I)),
        _s('init-tensor', req, it(_t(A, B)), seq(T.Lambda(I, inv=True), T.Tensor(it(A), it(B)))),
    ]


def _biproducts():
    req = {'copyErase', 'mergeInitial'}
    return [
        _s('proj1-inj1', req, seq(T.inj1(A, B), T.proj1(A, B)), T.Id(A)),
        _s('proj2-inj2', req, seq(T.inj2(A, B), T.proj2(A, B)), T.Id(B)),
        _s('proj1-inj2', req, seq(T.inj2(A, B), T.proj1(A, B)), T.zero(B, A)),
        _s('proj2-inj1', req, seq(T.inj1(A, B), T.proj2(A, B)), T.zero(A, B)),
    ]


def _dagger():
    dg, Id = T.Dagger, T.Id
    req = {'dagger'}
    return [
        _s('dagger-compose', req, dg(seq(f, g)), seq(dg(g), dg(f)), False, f=(A, B), g=(B, C)),
        _s('dagger-identity', req, dg(Id(A)), Id(A), False),
        _s('dagger-involution', req, dg(dg(f)), f, False, f=(A, B)),
    ]


def _dagger_monoidal():
    dg = T.Dagger
    req = {'dagger'}
    return [
        _s('dagger-tensor', req, dg(T.Tensor(f, g)), T.Tensor(dg(f), dg(g)), f=(A, B), g=(C, D)),
        _s('alpha-unitary', req, dg(T.Alpha(A, B, C)), T.Alpha(A, B, C, inv=True)),
        _s('lambda-unitary', req, dg(T.Lambda(A)), T.Lambda(A, inv=True)),
        _s('rho-unitary', req, dg(T.Rho(A)), T.Rho(A, inv=True)),
    ]


def dagger_pivotal_b(a: ObjectTerm) -> T.Term:
    ar, arr = RightDual(a), RightDual(RightDual(a))
    return seq(T.Rho(a, inv=True), T.Tensor(T.Id(a), T.Dagger(T.Eps(ar))),
               T.Alpha(a, ar, arr, inv=True), T.Tensor(T.Eps(a), T.Id(arr)), T.Lambda(arr))


def _dagger_extra():
    dg = T.Dagger
    return [
        _s('braiding-unitary', {'dagger', 'braided'}, dg(T.Sym(A, B)), T.Sym(A, B, inv=True)),
        _s('twist-unitary', {'dagger', 'twist'}, dg(T.Twist(A)), T.Twist(A, inv=True)),
        _s('pivot-unitary', {'dagger', 'pivotal'}, dg(T.Piv(A)), T.Piv(A, inv=True)),
        _s('pivot-from-counits', {'dagger', 'pivotal'}, T.Piv(A), dagger_pivotal_b(A)),
        _s('unit-dagger', {'dagger', 'pivotal'}, dg(T.Eta(A)),
           seq(T.Tensor(T.Id(Ar), T.Piv(A)), T.Eps(Ar))),
        _s('counit-dagger', {'dagger', 'pivotal'}, dg(T.Eps(A)),
           seq(T.Eta(Ar), T.Tensor(T.Piv(A, inv=True), T.Id(Ar)))),
        _s('mate-dagger', {'dagger', 'pivotal'}, dg(T.Mate(f)), T.Mate(dg(f)), f=(A, B)),
        _s('dagger-compact', {'dagger', 'pivotal', 'symmetric'}, T.Eta(A),
           seq(dg(T.Eps(A)), T.Sym(A, Ar))),
        _s('trace-dagger', {'dagger', 'rightTrace'}, dg(T.TrR(X, f)), T.TrR(X, dg(f)),
           f=(_t(A, X), _t(B, X))),
        _s('trace-dagger-left', {'dagger', 'leftTrace'}, dg(T.TrL(X, f)), T.TrL(X, dg(f)),
           f=(_t(X, A), _t(X, B))),
        _s('copy-dagger', {'dagger', 'copyErase', 'mergeInitial'}, dg(T.Copy(A)), T.Merge(A)),
        _s('erase-dagger', {'dagger', 'copyErase', 'mergeInitial'}, dg(T.Erase(A)), T.Init(A)),
        _s('proj-dagger', {'dagger', 'copyErase', 'mergeInitial'}, dg(T.proj1(A, B)),
           T.inj1(A, B)),
    ]


ALL_SCHEMAS: list[Schema] = (
    _category() + _monoidal() + _spacial() + _braided() + _twist() + _symmetric()
    + _duals() + _pivotal() + _spherical() + _right_trace() + _left_trace()
    + _planar_trace() + _traced_extra() + _products() + _coproducts() + _biproducts()
    + _dagger() + _dagger_monoidal() + _dagger_extra()
)


def axiom_schemas(d: Doctrine | str) -> list[Schema]:
    d = get_doctrine(d)
    out = []
    for s in ALL_SCHEMAS:
        if not s.requires <= d.flags:
            continue
        if s.monoidal and not d.monoidal:
            continue
        out.append(s)
    return out
