"""Morphism terms: the AST, the typechecker, dagger pushdown, adjoint mates and
the axiom tables of every doctrine."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Callable, Iterator

from .doctrine import Doctrine, get_doctrine
from .errors import ConstantNotInDoctrine, TypeMismatch, UnknownGenerator
from .signature import (I, LeftDual, ObjectTerm, OTensor, RightDual, Signature, Unit, Var,
                        atoms)


class Term:
    __slots__ = ()

    def __rshift__(self, other: Term) -> Term:
        # diagrammatic order: f >> g is g after f
        return Compose(other, self)

    def __matmul__(self, other: Term) -> Term:
        return Tensor(self, other)

    def __str__(self) -> str:
        from .frontend import print_term
        return print_term(self)


@dataclass(frozen=True, slots=True)
class Gen(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Id(Term):
    obj: ObjectTerm


@dataclass(frozen=True, slots=True)
class Compose(Term):
    after: Term
    before: Term


@dataclass(frozen=True, slots=True)
class Tensor(Term):
    """`left` is drawn below `right`."""
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Alpha(Term):
    a: ObjectTerm
    b: ObjectTerm
    c: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Lambda(Term):
    a: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Rho(Term):
    a: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Sym(Term):
    """sym(a,b): a*b -> b*a; the inverse sym'(a,b): b*a -> a*b."""
    a: ObjectTerm
    b: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Twist(Term):
    a: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Eta(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class Eps(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class EtaL(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class EpsL(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class Piv(Term):
    a: ObjectTerm
    inv: bool = False


@dataclass(frozen=True, slots=True)
class Copy(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class Erase(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class Merge(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class Init(Term):
    a: ObjectTerm


@dataclass(frozen=True, slots=True)
class TrR(Term):
    x: ObjectTerm
    body: Term


@dataclass(frozen=True, slots=True)
class TrL(Term):
    x: ObjectTerm
    body: Term


@dataclass(frozen=True, slots=True)
class Dagger(Term):
    body: Term


@dataclass(frozen=True, slots=True)
class Mate(Term):
    body: Term


CONSTANTS = (Alpha, Lambda, Rho, Sym, Twist, Eta, Eps, EtaL, EpsL, Piv,
             Copy, Erase, Merge, Init)


@dataclass(frozen=True, slots=True)
class MorphismType:
    dom: ObjectTerm
    cod: ObjectTerm

    def __str__(self) -> str:
        return f'{self.dom} -> {self.cod}'


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Compose, Tensor)):
        return (t.after, t.before) if isinstance(t, Compose) else (t.left, t.right)
    if isinstance(t, (TrR, TrL, Dagger, Mate)):
        return (t.body,)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


def map_objects(t: Term, f: Callable[[ObjectTerm], ObjectTerm],
                g: Callable[[str], Term] | None = None) -> Term:
    """Rebuild `t` with every object parameter passed through `f` and every
    generator through `g`."""
    if isinstance(t, Gen):
        return g(t.name) if g else t
    if isinstance(t, Compose):
        return Compose(map_objects(t.after, f, g), map_objects(t.before, f, g))
    if isinstance(t, Tensor):
        return Tensor(map_objects(t.left, f, g), map_objects(t.right, f, g))
    if isinstance(t, (TrR, TrL)):
        return type(t)(f(t.x), map_objects(t.body, f, g))
    if isinstance(t, (Dagger, Mate)):
        return type(t)(map_objects(t.body, f, g))
    kw = {fl.name: f(getattr(t, fl.name)) for fl in fields(t) if fl.name != 'inv'}
    return replace(t, **kw)


def subst_objects(o: ObjectTerm, env: dict[str, ObjectTerm]) -> ObjectTerm:
    if isinstance(o, Var):
        return env.get(o.name, o)
    if isinstance(o, OTensor):
        return OTensor(subst_objects(o.left, env), subst_objects(o.right, env))
    if isinstance(o, RightDual):
        return RightDual(subst_objects(o.inner, env))
    if isinstance(o, LeftDual):
        return LeftDual(subst_objects(o.inner, env))
    return o


# ---------------------------------------------------------------- typing

def constant_type(t: Term) -> MorphismType:
    """Type of a structural constant (no signature needed)."""
    T = OTensor
    if isinstance(t, Id):
        d = c = t.obj
    elif isinstance(t, Alpha):
        d, c = T(T(t.a, t.b), t.c), T(t.a, T(t.b, t.c))
    elif isinstance(t, Lambda):
        d, c = T(I, t.a), t.a
    elif isinstance(t, Rho):
        d, c = T(t.a, I), t.a
    elif isinstance(t, Sym):
        d, c = T(t.a, t.b), T(t.b, t.a)
    elif isinstance(t, Twist):
        d = c = t.a
    elif isinstance(t, Eta):
        d, c = I, T(RightDual(t.a), t.a)
    elif isinstance(t, Eps):
        d, c = T(t.a, RightDual(t.a)), I
    elif isinstance(t, EtaL):
        d, c = I, T(t.a, LeftDual(t.a))
    elif isinstance(t, EpsL):
        d, c = T(LeftDual(t.a), t.a), I
    elif isinstance(t, Piv):
        d, c = t.a, RightDual(RightDual(t.a))
    elif isinstance(t, Copy):
        d, c = t.a, T(t.a, t.a)
    elif isinstance(t, Erase):
        d, c = t.a, I
    elif isinstance(t, Merge):
        d, c = T(t.a, t.a), t.a
    elif isinstance(t, Init):
        d, c = I, t.a
    else:
        raise TypeError(t)
    if getattr(t, 'inv', False):
        d, c = c, d
    return MorphismType(d, c)


def split_trace(obj: ObjectTerm, x: ObjectTerm, right: bool) -> ObjectTerm | None:
    """Find A with obj = A*x (right) or x*A (left); units may be elided."""
    if isinstance(obj, OTensor):
        side, rest = (obj.right, obj.left) if right else (obj.left, obj.right)
        if side == x:
            return rest
    if obj == x:
        return I
    if isinstance(x, Unit):
        return obj
    return None


def infer_type(t: Term, sig: Signature, _path: tuple[str, ...] = ()) -> MorphismType:
    if isinstance(t, Gen):
        if t.name not in sig.morphisms:
            raise UnknownGenerator(t.name)
        return MorphismType(*sig.morphisms[t.name])
    if isinstance(t, Compose):
        tb = infer_type(t.before, sig, _path + ('before',))
        ta = infer_type(t.after, sig, _path + ('after',))
        if tb.cod != ta.dom:
            raise TypeMismatch(_path, tb.cod, ta.dom)
        return MorphismType(tb.dom, ta.cod)
    if isinstance(t, Tensor):
        tl = infer_type(t.left, sig, _path + ('left',))
        tr = infer_type(t.right, sig, _path + ('right',))
        return MorphismType(OTensor(tl.dom, tr.dom), OTensor(tl.cod, tr.cod))
    if isinstance(t, (TrR, TrL)):
        right = isinstance(t, TrR)
        tb = infer_type(t.body, sig, _path + ('body',))
        a = split_trace(tb.dom, t.x, right)
        b = split_trace(tb.cod, t.x, right)
        if a is None:
            raise TypeMismatch(_path, OTensor(Var('?'), t.x) if right else OTensor(t.x, Var('?')), tb.dom)
        if b is None:
            raise TypeMismatch(_path, OTensor(Var('?'), t.x) if right else OTensor(t.x, Var('?')), tb.cod)
        return MorphismType(a, b)
    if isinstance(t, Dagger):
        tb = infer_type(t.body, sig, _path + ('body',))
        return MorphismType(tb.cod, tb.dom)
    if isinstance(t, Mate):
        tb = infer_type(t.body, sig, _path + ('body',))
        return MorphismType(RightDual(tb.cod), RightDual(tb.dom))
    return constant_type(t)


# ---------------------------------------------------------------- doctrines

def required_flag(t: Term) -> str | None:
    return {
        Sym: 'braided', Twist: 'twist', Eta: 'rightDuals', Eps: 'rightDuals',
        EtaL: 'leftDuals', EpsL: 'leftDuals', Piv: 'pivotal', Copy: 'copyErase',
        Erase: 'copyErase', Merge: 'mergeInitial', Init: 'mergeInitial',
        TrR: 'rightTrace', TrL: 'leftTrace', Dagger: 'dagger', Mate: 'rightDuals',
    }.get(type(t))


def constant_name(t: Term) -> str:
    return type(t).__name__ + ("'" if getattr(t, 'inv', False) else '')


def check_doctrine(t: Term, d: Doctrine | str) -> None:
    d = get_doctrine(d)
    for s in subterms(t):
        flag = required_flag(s)
        if flag is not None and not d.has(flag):
            raise ConstantNotInDoctrine(constant_name(s), d.name)
        if not d.monoidal and isinstance(s, (Tensor, Alpha, Lambda, Rho)):
            raise ConstantNotInDoctrine(constant_name(s), d.name)


# ---------------------------------------------------------------- dagger

def dagger_pushdown(t: Term) -> Term:
    """Push every dagger down to the generators."""
    return _push(t, False)


def _push(t: Term, dg: bool) -> Term:
    if isinstance(t, Dagger):
        return _push(t.body, not dg)
    if isinstance(t, Gen):
        return Dagger(t) if dg else t
    if isinstance(t, Compose):
        a, b = _push(t.after, dg), _push(t.before, dg)
        return Compose(b, a) if dg else Compose(a, b)
    if isinstance(t, Tensor):
        return Tensor(_push(t.left, dg), _push(t.right, dg))
    if isinstance(t, (TrR, TrL)):
        return type(t)(t.x, _push(t.body, dg))
    if isinstance(t, Mate):
        # the mate of a dagger is the dagger of the mate in dagger pivotal categories
        return Mate(_push(t.body, dg))
    if not dg or isinstance(t, Id):
        return t
    if isinstance(t, (Alpha, Lambda, Rho, Sym, Twist, Piv)):
        # unitary structure maps
        return replace(t, inv=not t.inv)
    if isinstance(t, Copy):
        return Merge(t.a)
    if isinstance(t, Merge):
        return Copy(t.a)
    if isinstance(t, Erase):
        return Init(t.a)
    if isinstance(t, Init):
        return Erase(t.a)
    if isinstance(t, Eta):
        return eta_dagger(t.a)
    if isinstance(t, Eps):
        return eps_dagger(t.a)
    # the left-dual unit and counit have no right-dual expression; they are
    # kept as mirrored leaves
    return Dagger(t)


def eta_dagger(a: ObjectTerm) -> Term:
    """eta_A^dagger = eps_{A^r} . (id_{A^r} * i_A)"""
    return Compose(Eps(RightDual(a)), Tensor(Id(RightDual(a)), Piv(a)))


def eps_dagger(a: ObjectTerm) -> Term:
    """eps_A^dagger = (i_A^-1 * id_{A^r}) . eta_{A^r}"""
    return Compose(Tensor(Piv(a, inv=True), Id(RightDual(a))), Eta(RightDual(a)))


def is_pushed(t: Term) -> bool:
    return all(not isinstance(s, Dagger) or isinstance(s.body, (Gen, EtaL, EpsL))
               for s in subterms(t))


# ---------------------------------------------------------------- mates

def mate_expansion(f: Term, typ: MorphismType) -> Term:
    """(id_{A^r} * eps_B) . (id_{A^r} * f * id_{B^r}) . (eta_A * id_{B^r}), with
    the unitors and associator that make it typecheck."""
    a, b = typ.dom, typ.cod
    ar, br = RightDual(a), RightDual(b)
    steps = [
        Lambda(br, inv=True),
        Tensor(Eta(a), Id(br)),
        Alpha(ar, a, br),
        Tensor(Id(ar), Tensor(f, Id(br))),
        Tensor(Id(ar), Eps(b)),
        Rho(ar),
    ]
    out = steps[0]
    for s in steps[1:]:
        out = Compose(s, out)
    return out


def adjoint_mate(t: Term, sig: Signature) -> Term:
    """Replace every Mate node by its unit/counit expansion."""
    if isinstance(t, Mate):
        body = adjoint_mate(t.body, sig)
        return mate_expansion(body, infer_type(body, sig))
    if isinstance(t, Compose):
        return Compose(adjoint_mate(t.after, sig), adjoint_mate(t.before, sig))
    if isinstance(t, Tensor):
        return Tensor(adjoint_mate(t.left, sig), adjoint_mate(t.right, sig))
    if isinstance(t, (TrR, TrL)):
        return type(t)(t.x, adjoint_mate(t.body, sig))
    if isinstance(t, Dagger):
        return Dagger(adjoint_mate(t.body, sig))
    return t


def compose_all(*ts: Term) -> Term:
    """compose_all(f, g, h) is f ; g ; h."""
    out = ts[0]
    for t in ts[1:]:
        out = Compose(t, out)
    return out


# ---------------------------------------------------------------- strictness

def _leaves(o: ObjectTerm) -> list[ObjectTerm]:
    if isinstance(o, OTensor):
        return _leaves(o.left) + _leaves(o.right)
    return [] if isinstance(o, Unit) else [o]


def _nested(leaves: list[ObjectTerm]) -> ObjectTerm:
    if not leaves:
        return I
    out = leaves[-1]
    for x in reversed(leaves[:-1]):
        out = OTensor(x, out)
    return out


def _to_nested(o: ObjectTerm) -> Term:
    """o -> the right-nested, unit-free form of o."""
    if not isinstance(o, OTensor):
        return Id(o)
    nl, nr = _nested(_leaves(o.left)), _nested(_leaves(o.right))
    first = Tensor(_to_nested(o.left), _to_nested(o.right))
    if isinstance(nl, Unit):
        return Compose(Lambda(nr), first)
    if isinstance(nr, Unit):
        return Compose(Rho(nl), first)
    return Compose(_merge(nl, nr), first)


def _merge(x: ObjectTerm, y: ObjectTerm) -> Term:
    # x and y right-nested and unit-free: x*y -> nested(leaves(x) + leaves(y))
    if not isinstance(x, OTensor):
        return Id(OTensor(x, y))
    return Compose(Tensor(Id(x.left), _merge(x.right, y)), Alpha(x.left, x.right, y))


def inverse_structural(t: Term) -> Term:
    if isinstance(t, Compose):
        return Compose(inverse_structural(t.before), inverse_structural(t.after))
    if isinstance(t, Tensor):
        return Tensor(inverse_structural(t.left), inverse_structural(t.right))
    if isinstance(t, Id):
        return t
    if isinstance(t, (Alpha, Lambda, Rho)):
        return replace(t, inv=not t.inv)
    raise TypeError(f'not structural: {t!r}')


def structural(a: ObjectTerm, b: ObjectTerm) -> Term:
    """The canonical associator/unitor isomorphism a -> b."""
    if _leaves(a) != _leaves(b):
        raise TypeMismatch(('structural',), a, b)
    if a == b:
        return Id(a)
    return Compose(inverse_structural(_to_nested(b)), _to_nested(a))


def chain(sig: Signature, *ts: Term) -> Term:
    """Compose ts in diagrammatic order, inserting structural isomorphisms
    wherever a codomain and the next domain differ only in bracketing."""
    out = ts[0]
    cod = infer_type(out, sig).cod
    for t in ts[1:]:
        typ = infer_type(t, sig)
        if typ.dom != cod:
            out = Compose(structural(cod, typ.dom), out)
        out = Compose(t, out)
        cod = typ.cod
    return out


# ---------------------------------------------------------------- sugar

def proj1(a: ObjectTerm, b: ObjectTerm) -> Term:
    return Compose(Rho(a), Tensor(Id(a), Erase(b)))


def proj2(a: ObjectTerm, b: ObjectTerm) -> Term:
    return Compose(Lambda(b), Tensor(Erase(a), Id(b)))


def inj1(a: ObjectTerm, b: ObjectTerm) -> Term:
    return Compose(Tensor(Id(a), Init(b)), Rho(a, inv=True))


def inj2(a: ObjectTerm, b: ObjectTerm) -> Term:
    return Compose(Tensor(Init(a), Id(b)), Lambda(b, inv=True))


def pair(f: Term, g: Term, dom: ObjectTerm) -> Term:
    return Compose(Tensor(f, g), Copy(dom))


def copair(f: Term, g: Term, cod: ObjectTerm) -> Term:
    return Compose(Merge(cod), Tensor(f, g))


def zero(a: ObjectTerm, b: ObjectTerm) -> Term:
    """The zero map a -> b of a biproduct category."""
    return Compose(Init(b), Erase(a))


def axiom_schemas(d: Doctrine | str) -> list:
    """The axiom schemas of doctrine `d` (see `stringcat.schemas`)."""
    from .schemas import axiom_schemas as schemas
    return schemas(d)
