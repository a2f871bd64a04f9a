"""Seeded random terms: layered terms over atom wires, and axiom instances
placed in random contexts.  Used by the soundness and fuzz harnesses."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import term as T
from .doctrine import Doctrine, get_doctrine
from .schemas import Schema, axiom_schemas
from .signature import I, ObjectTerm, OTensor, RightDual, Signature, Var, make_signature

P, Q = Var('P'), Var('Q')

DEFAULT_GENERATORS: dict[str, tuple[ObjectTerm, ObjectTerm]] = {
    'f': (P, Q), 'g': (Q, P), 'h': (OTensor(P, Q), Q), 'k': (Q, OTensor(P, Q)),
    'm': (OTensor(P, P), P), 'u': (P, P), 'e': (P, I), 's': (I, I),
}


def default_signature() -> Signature:
    return make_signature({'P', 'Q'}, DEFAULT_GENERATORS)


def _leaves(o: ObjectTerm) -> list[ObjectTerm]:
    if isinstance(o, OTensor):
        return _leaves(o.left) + _leaves(o.right)
    return [] if o == I else [o]


def _obj(ws: list[ObjectTerm]) -> ObjectTerm:
    if not ws:
        return I
    out = ws[-1]
    for w in reversed(ws[:-1]):
        out = OTensor(w, out)
    return out


def _tensor(blocks: list[T.Term]) -> T.Term:
    out = blocks[-1]
    for b in reversed(blocks[:-1]):
        out = T.Tensor(b, out)
    return out


@dataclass
class TermGen:
    """Random well-typed terms of one doctrine over a signature whose
    generators have dual-free types."""
    sig: Signature
    doctrine: Doctrine
    rng: random.Random
    max_trace_depth: int = 1

    def __post_init__(self):
        self.doctrine = get_doctrine(self.doctrine)
        self.atoms = [Var(o) for o in sorted(self.sig.objects)]
        self.gens = [(n, _leaves(d), _leaves(c)) for n, (d, c) in sorted(self.sig.morphisms.items())]
        if not self.doctrine.monoidal:
            self.gens = [g for g in self.gens if len(g[1]) == len(g[2]) == 1]

    def has(self, flag: str) -> bool:
        return self.doctrine.has(flag)

    # one block acting on wires[i:]: (term, number of wires consumed, outputs)
    def block(self, ws: list[ObjectTerm], i: int, depth: int):
        d, rng = self.doctrine, self.rng
        w = ws[i] if i < len(ws) else None
        options = []
        if w is not None:
            options.append(('id', 3))
        for name, dom, cod in self.gens:
            if dom and ws[i:i + len(dom)] == dom:
                options.append((('gen', name), 4))
            elif not dom and d.monoidal:
                options.append((('gen', name), 1))
            if self.has('dagger') and cod and ws[i:i + len(cod)] == cod:
                options.append((('dg', name), 2))
        if w is not None and d.monoidal:
            if i + 1 < len(ws) and self.has('braided'):
                options.append(('sym', 2))
            if self.has('twist'):
                options.append(('twist', 1))
            if self.has('copyErase'):
                options += [('copy', 1), ('erase', 1)]
            if self.has('mergeInitial') and i + 1 < len(ws) and ws[i + 1] == w:
                options.append(('merge', 1))
            if self.has('rightDuals') and i + 1 < len(ws) and ws[i + 1] == RightDual(w):
                options.append(('eps', 1))
            if depth < self.max_trace_depth and (self.has('rightTrace') or self.has('leftTrace')):
                options.append(('trace', 2))
        if d.monoidal:
            if self.has('mergeInitial'):
                options.append(('init', 1))
            if self.has('rightDuals'):
                options.append(('eta', 1))
        kinds, weights = zip(*options)
        kind = rng.choices(kinds, weights)[0]
        if kind == 'id':
            return T.Id(w), 1, [w]
        if isinstance(kind, tuple):
            name, dom, cod = next(g for g in self.gens if g[0] == kind[1])
            if kind[0] == 'dg':
                return T.Dagger(T.Gen(name)), len(cod), dom
            return T.Gen(name), len(dom), cod
        if kind == 'sym':
            a, b = ws[i], ws[i + 1]
            inv = not self.has('symmetric') and rng.random() < 0.5
            return (T.Sym(b, a, inv=True) if inv else T.Sym(a, b)), 2, [b, a]
        if kind == 'twist':
            return T.Twist(w, inv=rng.random() < 0.5), 1, [w]
        if kind == 'copy':
            return T.Copy(w), 1, [w, w]
        if kind == 'erase':
            return T.Erase(w), 1, []
        if kind == 'merge':
            return T.Merge(w), 2, [w]
        if kind == 'init':
            a = rng.choice(self.atoms)
            return T.Init(a), 0, [a]
        if kind == 'eta':
            a = rng.choice(self.atoms)
            return T.Eta(a), 0, [RightDual(a), a]
        if kind == 'eps':
            return T.Eps(w), 2, []
        return self.trace_block(w, depth)

    def trace_block(self, w: ObjectTerm, depth: int):
        rng = self.rng
        right = self.has('rightTrace') and (not self.has('leftTrace') or rng.random() < 0.5)
        for _ in range(10):
            x = rng.choice(self.atoms)
            start = [w, x] if right else [x, w]
            body, outs = self.term(start, layers=2, depth=depth + 1)
            if len(outs) >= 1 and (outs[-1] if right else outs[0]) == x:
                rest = outs[:-1] if right else outs[1:]
                dom, cod = _obj(start), _obj(outs)
                want_dom = OTensor(w, x) if right else OTensor(x, w)
                want_cod = OTensor(_obj(rest), x) if right else OTensor(x, _obj(rest))
                body = T.chain(self.sig, T.structural(want_dom, dom), body,
                               T.structural(cod, want_cod))
                return (T.TrR(x, body) if right else T.TrL(x, body)), 1, rest
        return T.Id(w), 1, [w]

    def layer(self, ws: list[ObjectTerm], depth: int):
        if not self.doctrine.monoidal:
            blk, used, outs = self.block(ws, 0, depth)
            return blk, outs
        blocks, outs, i = [], [], 0
        while i < len(ws) or (not blocks and not ws):
            blk, used, o = self.block(ws, i, depth)
            blocks.append(blk)
            outs += o
            i += used
            if not ws and used == 0:
                break
        if len(ws) == 0 and self.rng.random() < 0.5:
            blocks, outs = [T.Id(I)], []
        return _tensor(blocks), outs

    def term(self, ws: list[ObjectTerm], layers: int = 3, depth: int = 0):
        """A random term from the wires `ws`; returns (term, output wires)."""
        ts, cur = [], list(ws)
        for _ in range(layers):
            t, cur = self.layer(cur, depth)
            ts.append(t)
        if self.doctrine.monoidal:
            first = T.infer_type(ts[0], self.sig).dom
            if first != _obj(ws):
                ts.insert(0, T.structural(_obj(ws), first))
        return T.chain(self.sig, *ts), cur

    def wires(self, lo: int = 1, hi: int = 3) -> list[ObjectTerm]:
        if not self.doctrine.monoidal:
            return [self.rng.choice(self.atoms)]
        return [self.rng.choice(self.atoms) for _ in range(self.rng.randint(lo, hi))]


# ---------------------------------------------------------------- axiom instances

def object_pool(doctrine: Doctrine) -> list[ObjectTerm]:
    if not doctrine.monoidal:
        return [P, Q]
    pool = [P, Q, OTensor(P, Q), I]
    if doctrine.duals:
        pool.append(RightDual(P))
    return pool


def random_instance(schema: Schema, doctrine: Doctrine | str, rng: random.Random,
                    context: bool = True):
    """Instantiate a schema with random objects, optionally inside a random
    context; returns (lhs, rhs, signature)."""
    doctrine = get_doctrine(doctrine)
    pool = object_pool(doctrine)
    objs = {v: rng.choice(pool) for v in schema.obj_vars}
    lhs, rhs, gens = schema.instantiate(objs)
    gens = dict(gens)
    sig = make_signature({'P', 'Q'}, gens)
    if context:
        typ = T.infer_type(lhs, sig)
        if rng.random() < 0.5:
            gens['pre'] = (typ.dom, typ.dom)
            lhs, rhs = T.Compose(lhs, T.Gen('pre')), T.Compose(rhs, T.Gen('pre'))
        if rng.random() < 0.5:
            gens['post'] = (typ.cod, typ.cod)
            lhs, rhs = T.Compose(T.Gen('post'), lhs), T.Compose(T.Gen('post'), rhs)
        if doctrine.monoidal and rng.random() < 0.5:
            side = rng.choice([P, Q])
            if rng.random() < 0.5:
                lhs, rhs = T.Tensor(T.Id(side), lhs), T.Tensor(T.Id(side), rhs)
            else:
                lhs, rhs = T.Tensor(lhs, T.Id(side)), T.Tensor(rhs, T.Id(side))
        sig = make_signature({'P', 'Q'}, gens)
    return lhs, rhs, sig


def instances(doctrine: Doctrine | str, n: int, seed: int = 0, context: bool = True):
    """n seeded random axiom instances of a doctrine: (schema, lhs, rhs, sig)."""
    doctrine = get_doctrine(doctrine)
    rng = random.Random(seed)
    schemas = axiom_schemas(doctrine)
    for i in range(n):
        s = schemas[i % len(schemas)]
        lhs, rhs, sig = random_instance(s, doctrine, rng, context)
        yield s, lhs, rhs, sig
