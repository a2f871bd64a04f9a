"""Signatures, object terms and boundary expansion.

Object terms are kept exactly as written: no unit erasure and no
reassociation happen at this layer.  Wire lists are bottom-to-top, so index
0 is the lowest wire of a drawing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import DualInMonoidalSignature, NonAtomicSimpleType, UndeclaredObject


class ObjectTerm:
    __slots__ = ()

    def __mul__(self, other: ObjectTerm) -> ObjectTerm:
        return OTensor(self, other)

    @property
    def r(self) -> ObjectTerm:
        return RightDual(self)

    @property
    def l(self) -> ObjectTerm:
        return LeftDual(self)

    def __str__(self) -> str:
        return show_object(self)


@dataclass(frozen=True, slots=True)
class Var(ObjectTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Unit(ObjectTerm):
    pass


@dataclass(frozen=True, slots=True)
class OTensor(ObjectTerm):
    left: ObjectTerm
    right: ObjectTerm


@dataclass(frozen=True, slots=True)
class RightDual(ObjectTerm):
    inner: ObjectTerm


@dataclass(frozen=True, slots=True)
class LeftDual(ObjectTerm):
    inner: ObjectTerm


I = Unit()


@dataclass(frozen=True, slots=True)
class WireLabel:
    """One wire: an object variable plus its winding number.

    Even parity runs left-to-right, odd parity right-to-left."""
    obj: str
    parity: int = 0

    def shift(self, k: int) -> WireLabel:
        return WireLabel(self.obj, self.parity + k)

    def __str__(self) -> str:
        return f'{self.obj}:{self.parity}'


def show_object(t: ObjectTerm) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Unit):
        return 'I'
    if isinstance(t, OTensor):
        right = show_object(t.right)
        if isinstance(t.right, OTensor):
            right = f'({right})'
        return f'{show_object(t.left)} * {right}'
    inner = show_object(t.inner)
    if isinstance(t.inner, OTensor):
        inner = f'({inner})'
    return inner + ('^r' if isinstance(t, RightDual) else '^l')


def atoms(t: ObjectTerm) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, OTensor):
        yield from atoms(t.left)
        yield from atoms(t.right)
    elif isinstance(t, (RightDual, LeftDual)):
        yield from atoms(t.inner)


def has_duals(t: ObjectTerm) -> bool:
    if isinstance(t, (RightDual, LeftDual)):
        return True
    if isinstance(t, OTensor):
        return has_duals(t.left) or has_duals(t.right)
    return False


def expand_boundary(t: ObjectTerm) -> tuple[WireLabel, ...]:
    """Wire list of an object term, bottom wire first."""
    if isinstance(t, Var):
        return (WireLabel(t.name, 0),)
    if isinstance(t, Unit):
        return ()
    if isinstance(t, OTensor):
        return expand_boundary(t.left) + expand_boundary(t.right)
    step = 1 if isinstance(t, RightDual) else -1
    return tuple(w.shift(step) for w in reversed(expand_boundary(t.inner)))


def tensor_all(objs, unit: ObjectTerm = I) -> ObjectTerm:
    """Left-nested tensor of a sequence; the unit when empty."""
    objs = list(objs)
    if not objs:
        return unit
    out = objs[0]
    for o in objs[1:]:
        out = OTensor(out, o)
    return out


def label_object(w: WireLabel) -> ObjectTerm:
    """An object term whose expansion is the single wire `w`."""
    t: ObjectTerm = Var(w.obj)
    for _ in range(abs(w.parity)):
        t = RightDual(t) if w.parity > 0 else LeftDual(t)
    return t


SIMPLE, MONOIDAL, AUTONOMOUS = 'simple', 'monoidal', 'autonomous'


@dataclass(frozen=True)
class Signature:
    kind: str
    objects: frozenset[str]
    morphisms: Mapping[str, tuple[ObjectTerm, ObjectTerm]] = field(default_factory=dict)

    def type_of(self, name: str) -> tuple[ObjectTerm, ObjectTerm]:
        return self.morphisms[name]

    def __hash__(self) -> int:
        return hash((self.kind, self.objects, tuple(sorted(self.morphisms))))


def infer_kind(morphisms: Mapping[str, tuple[ObjectTerm, ObjectTerm]]) -> str:
    types = [t for dc in morphisms.values() for t in dc]
    if any(has_duals(t) for t in types):
        return AUTONOMOUS
    if all(isinstance(t, Var) for t in types):
        return SIMPLE
    return MONOIDAL


def make_signature(objects, morphisms, kind: str | None = None) -> Signature:
    morphisms = dict(morphisms)
    sig = Signature(kind or infer_kind(morphisms), frozenset(objects), morphisms)
    validate_signature(sig)
    return sig


def validate_signature(sig: Signature) -> None:
    for name, (dom, cod) in sig.morphisms.items():
        for t in (dom, cod):
            for a in atoms(t):
                if a not in sig.objects:
                    raise UndeclaredObject(f'{a} (in the type of {name})')
            if sig.kind == SIMPLE and not isinstance(t, Var):
                raise NonAtomicSimpleType(name)
            if sig.kind != AUTONOMOUS and has_duals(t):
                raise DualInMonoidalSignature(name)


def load_signature(text: str) -> Signature:
    """Parse the line-oriented signature file format."""
    from .frontend import parse_object, _Lexer

    objects: list[str] = []
    morphisms: dict[str, tuple[ObjectTerm, ObjectTerm]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(' ')
        if head == 'object':
            objects.extend(n.strip() for n in rest.split(',') if n.strip())
        elif head == 'morphism':
            name, _, typ = rest.partition(':')
            dom, arrow, cod = typ.partition('->')
            if not arrow:
                raise _Lexer(raw, lineno).error(len(raw) - 1, 'expected ->')
            morphisms[name.strip()] = (parse_object(dom, lineno=lineno),
                                       parse_object(cod, lineno=lineno))
        else:
            raise _Lexer(raw, lineno).error(0, f'unknown declaration {head!r}')
    return make_signature(objects, morphisms)


def show_signature(sig: Signature) -> str:
    """The signature in the file format read by load_signature."""
    lines = []
    if sig.objects:
        lines.append('object ' + ', '.join(sorted(sig.objects)))
    for name in sorted(sig.morphisms):
        dom, cod = sig.morphisms[name]
        lines.append(f'morphism {name} : {show_object(dom)} -> {show_object(cod)}')
    return '\n'.join(lines) + '\n'
