"""Translation of morphism terms into diagrams.

Unitors and associators vanish, braidings become crossings, twists become
twist nodes (or nothing, in symmetric doctrines where the twist is trivial),
units and counits become bends, copy/merge/erase/init become dots, traces
close loops, the dagger mirrors and the mate rotates.
"""
from __future__ import annotations

from . import term as T
from .diagram import (Diagram, box_d, cap_d, close_trace, compose_d, cup_d, dot_d,
                      id_d, map_labels, mirror_d, mod2, perm_d, rotate_d, tensor_all,
                      tensor_d, twist_d)
from .doctrine import Doctrine, get_doctrine
from .errors import WindingInconsistency
from .signature import ObjectTerm, OTensor, RightDual, Signature, Unit, Var, WireLabel, \
    expand_boundary


def compile_term(t: T.Term, sig: Signature, d: Doctrine | str, check: bool = True) -> Diagram:
    """Compile a well-typed term of doctrine `d` to its diagram."""
    d = get_doctrine(d)
    if check:
        T.infer_type(t, sig)
        T.check_doctrine(t, d)
    return _Compiler(sig, d).run(t)


compile = compile_term


class _Compiler:
    def __init__(self, sig: Signature, d: Doctrine):
        self.sig, self.d = sig, d
        self.pivotal = d.has('pivotal')
        self.symmetric = d.has('symmetric')

    def norm(self, dg: Diagram) -> Diagram:
        return map_labels(dg, mod2) if self.pivotal else dg

    def wires(self, o: ObjectTerm) -> tuple[WireLabel, ...]:
        w = expand_boundary(o)
        return tuple(map(mod2, w)) if self.pivotal else w

    def run(self, t: T.Term) -> Diagram:
        return self.norm(self.go(t))

    def go(self, t: T.Term) -> Diagram:
        if isinstance(t, T.Gen):
            dom, cod = self.sig.morphisms[t.name]
            return box_d(t.name, self.wires(dom), self.wires(cod))
        if isinstance(t, T.Id):
            return id_d(self.wires(t.obj))
        if isinstance(t, T.Compose):
            return compose_d(self.go(t.before), self.go(t.after))
        if isinstance(t, T.Tensor):
            return tensor_d(self.go(t.left), self.go(t.right))
        if isinstance(t, (T.Alpha, T.Lambda, T.Rho, T.Piv)):
            return id_d(self.wires(T.constant_type(t).dom))
        if isinstance(t, T.Sym):
            return self.braid(t.a, t.b, t.inv)
        if isinstance(t, T.Twist):
            if self.symmetric:
                return id_d(self.wires(t.a))
            return self.twist(t.a, -1 if t.inv else 1)
        if isinstance(t, T.Eta):
            xs = self.wires(t.a)
            return nested_bends('cup', [(x.shift(1), x) for x in reversed(xs)], self.pivotal)
        if isinstance(t, T.Eps):
            xs = self.wires(t.a)
            return nested_bends('cap', [(x, x.shift(1)) for x in xs], self.pivotal)
        if isinstance(t, T.EtaL):
            xs = self.wires(t.a)
            return nested_bends('cup', [(x, x.shift(-1)) for x in xs], self.pivotal)
        if isinstance(t, T.EpsL):
            xs = self.wires(t.a)
            return nested_bends('cap', [(x.shift(-1), x) for x in reversed(xs)], self.pivotal)
        if isinstance(t, T.Copy):
            xs = self.wires(t.a)
            k = len(xs)
            dots = tensor_all(dot_d('copy', x) for x in xs)
            target = [i // 2 + (k if i % 2 else 0) for i in range(2 * k)]
            return compose_d(dots, perm_d(dots.outputs, target, 0))
        if isinstance(t, T.Merge):
            xs = self.wires(t.a)
            k = len(xs)
            dots = tensor_all(dot_d('merge', x) for x in xs)
            target = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
            return compose_d(perm_d(xs + xs, target, 0), dots)
        if isinstance(t, T.Erase):
            return tensor_all(dot_d('erase', x) for x in self.wires(t.a))
        if isinstance(t, T.Init):
            return tensor_all(dot_d('init', x) for x in self.wires(t.a))
        if isinstance(t, T.TrR):
            return close_trace(self.go(t.body), len(self.wires(t.x)), 'right')
        if isinstance(t, T.TrL):
            return close_trace(self.go(t.body), len(self.wires(t.x)), 'left')
        if isinstance(t, T.Dagger):
            return mirror_d(self.go(t.body))
        if isinstance(t, T.Mate):
            return self.norm(rotate_d(self.go(t.body)))
        raise TypeError(f'cannot compile {t!r}')

    def braid(self, a: ObjectTerm, b: ObjectTerm, inv: bool) -> Diagram:
        xa, xb = self.wires(a), self.wires(b)
        sign = 0 if self.symmetric else (-1 if inv else 1)
        if not inv:
            # a*b -> b*a: the b wires move down across the a wires
            return perm_d(xa + xb, [len(xb) + i for i in range(len(xa))] +
                          list(range(len(xb))), sign)
        return perm_d(xb + xa, [len(xa) + j for j in range(len(xb))] +
                      list(range(len(xa))), sign)

    def twist(self, o: ObjectTerm, sign: int) -> Diagram:
        if isinstance(o, Var):
            return twist_d(WireLabel(o.name, 0), sign)
        if isinstance(o, Unit):
            return id_d(())
        if isinstance(o, OTensor):
            both = tensor_d(self.twist(o.left, sign), self.twist(o.right, sign))
            if sign > 0:
                # theta_{a*b} = sigma_{b,a} . sigma_{a,b} . (theta_a * theta_b)
                return compose_d(compose_d(both, self.braid(o.left, o.right, False)),
                                 self.braid(o.right, o.left, False))
            # the inverse: (theta'_a * theta'_b) . sigma'_{a,b} . sigma'_{b,a}
            return compose_d(compose_d(self.braid(o.right, o.left, True),
                                       self.braid(o.left, o.right, True)), both)
        inner = self.twist(o.inner, sign)
        return self.norm(rotate_d(inner, 1 if isinstance(o, RightDual) else -1))


def nested_bends(kind: str, pairs, pivotal: bool = False) -> Diagram:
    """Nested cups (kind 'cup') or caps; `pairs` lists (lower, upper) wire
    labels from the outermost bend inwards."""
    out = id_d(())
    for lower, upper in reversed(pairs):
        if pivotal:
            lower, upper = mod2(lower), mod2(upper)
        if kind == 'cup':
            out = compose_d(cup_d(lower, upper), tensor_all([id_d([lower]), out, id_d([upper])]))
        else:
            out = compose_d(tensor_all([id_d([lower]), out, id_d([upper])]), cap_d(lower, upper))
    return out


# ---------------------------------------------------------------- windings

def winding_check(dg: Diagram, pivotal: bool = False) -> None:
    """Check that winding numbers are globally consistent: every edge agrees
    with both of its ports, and every bend turns its wire by half a turn."""
    norm = mod2 if pivotal else (lambda w: w)

    def port_label(end, src: bool):
        if end[0] == -1:
            return (dg.inputs if src else dg.outputs)[end[1]]
        n = dg.nodes[end[0]]
        return (n.outs if src else n.ins)[end[1]]
    for i, e in enumerate(dg.edges):
        for end, src in ((e.src, True), (e.dst, False)):
            if norm(port_label(end, src)) != norm(e.label):
                raise WindingInconsistency(f'edge e{i}: {e.label} meets port {port_label(end, src)}')
    for i, n in enumerate(dg.nodes):
        if n.kind in ('cup', 'cap'):
            lower, upper = n.outs if n.kind == 'cup' else n.ins
            if n.gen == 'tr' and not pivotal:
                continue
            want = upper.shift(1) if n.kind == 'cup' else upper.shift(-1)
            if lower.obj != upper.obj or norm(lower) != norm(want):
                raise WindingInconsistency(f'node n{i}: {n.kind} joins {lower} to {upper}')
        elif n.kind == 'cross':
            if n.ins != (n.outs[1], n.outs[0]):
                raise WindingInconsistency(f'node n{i}: crossing relabels its strands')
        elif n.kind == 'twist' and n.ins != n.outs:
            raise WindingInconsistency(f'node n{i}: twist relabels its strand')
