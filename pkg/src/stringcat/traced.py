"""Trace machinery: the Int construction on diagrams, the degree of a term,
the traced decision path, and the trace/iteration/repetition conversions.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import term as T
from .compile import compile_term
from .diagram import Diagram, Node, map_labels, mod2
from .doctrine import Doctrine, get_doctrine
from .errors import ConstantNotInDoctrine, SoundnessViolation, UnsupportedConstant
from .signature import ObjectTerm, OTensor, Signature, expand_boundary

INT_TARGET = {'symmetric-traced': 'compact-closed', 'balanced-traced': 'tortile',
              'braided-traced': 'braided-pivotal'}


@dataclass(frozen=True)
class IntObject:
    """An object (positive, negative) of the Int construction; it is drawn
    as positive wires followed by the duals of the negative ones."""
    positive: ObjectTerm
    negative: ObjectTerm


def int_target(d: Doctrine | str) -> Doctrine:
    doc = get_doctrine(d)
    if doc.base not in INT_TARGET:
        raise ConstantNotInDoctrine('Int', doc.name)
    target = INT_TARGET[doc.base]
    return get_doctrine(('dagger-' if doc.has('dagger') else '') + target)


def int_transform(d: Diagram) -> Diagram:
    """Reinterpret each trace loop as a cup and a cap on a dualised wire.
    Boundaries are unchanged; the returning half of every loop carries the
    dual, so the result lives in the paired pivotal doctrine."""
    nodes = tuple(Node(n.kind, n.ins, n.outs, '', n.mirrored, n.rot, n.sign)
                  if n.kind in ('cup', 'cap') and n.gen == 'tr' else n for n in d.nodes)
    return map_labels(Diagram(d.inputs, d.outputs, nodes, d.edges, d.placement), mod2)


def degree(t: T.Term) -> Counter:
    """The multiset of traced-out atomic objects (tensor factors of every
    traced object, units dropped)."""
    out: Counter = Counter()
    for s in T.subterms(t):
        if isinstance(s, (T.TrR, T.TrL)):
            out.update(w.obj for w in expand_boundary(s.x))
    return out


def decide_traced(t1: T.Term, t2: T.Term, sig: Signature, d: Doctrine | str,
                  budget: int | None = None):
    """Decide via the Int construction in the paired pivotal doctrine.  For
    symmetric traced doctrines the direct isomorphism check on the traced
    diagrams is run as well, and the two must agree."""
    from .equivalence import DEFAULT_BUDGET, check_pair, decide_diagrams, iso_equal
    doc = get_doctrine(d)
    budget = DEFAULT_BUDGET if budget is None else budget
    check_pair(t1, t2, sig, doc)
    target = int_target(doc)
    d1 = compile_term(t1, sig, doc, check=False)
    d2 = compile_term(t2, sig, doc, check=False)
    verdict = decide_diagrams(int_transform(d1), int_transform(d2), target, budget)
    if doc.base == 'symmetric-traced' and verdict.equal != iso_equal(d1, d2):
        raise SoundnessViolation(f'Int path says {verdict.kind} but the direct path disagrees')
    return verdict


# ---------------------------------------------------------------- iteration and repetition
# The conversion formulas below are derived rather than quoted; the test
# suite checks each against brute-force relational computations.

def _split_cod(t: T.Term, sig: Signature, what: str) -> tuple[ObjectTerm, ObjectTerm]:
    typ = T.infer_type(t, sig)
    if not isinstance(typ.cod, OTensor):
        raise ValueError(f'{what} needs a morphism into a sum, got codomain {typ.cod}')
    return typ.cod.left, typ.cod.right


def iter_from_trace(f: T.Term, sig: Signature) -> T.Term:
    """iter(f) = Tr^X(f . merge_X) for f: X -> A + X."""
    a, x = _split_cod(f, sig, 'iteration')
    if T.infer_type(f, sig).dom != x:
        raise ValueError('iteration needs f: X -> A + X')
    return T.TrR(x, T.Compose(f, T.Merge(x)))


def trace_from_iter(g: T.Term, sig: Signature, iterate=None) -> T.Term:
    """Tr^X(g) = [id_B, iter(g . inj2)] . g . inj1 for g: A + X -> B + X;
    `iterate` defaults to iter_from_trace."""
    iterate = iterate or (lambda t: iter_from_trace(t, sig))
    typ = T.infer_type(g, sig)
    a, x = typ.dom.left, typ.dom.right
    b = typ.cod.left
    loop = iterate(T.Compose(g, T.inj2(a, x)))
    return T.compose_all(T.inj1(a, x), g, T.copair(T.Id(b), loop, b))


def iteration_axiom(f: T.Term, sig: Signature) -> tuple[T.Term, T.Term]:
    """iter(f) and [id_A, iter(f)] . f."""
    a, _ = _split_cod(f, sig, 'iteration')
    it = iter_from_trace(f, sig)
    return it, T.Compose(T.copair(T.Id(a), it, a), f)


def diagonal_property(f: T.Term, sig: Signature) -> tuple[T.Term, T.Term]:
    """iter(iter(f)) and iter((id_A + [id_X, id_X]) . f) for f: X -> (A + X) + X."""
    ax, x = _split_cod(f, sig, 'iteration')
    a = ax.left
    lhs = iter_from_trace(iter_from_trace(f, sig), sig)
    fold = T.Tensor(T.Id(a), T.Merge(x))
    rhs = iter_from_trace(T.chain(sig, f, T.structural(OTensor(ax, x), OTensor(a, OTensor(x, x))),
                                  fold), sig)
    return lhs, rhs


def bekic_pair(f: T.Term, g: T.Term, sig: Signature) -> tuple[T.Term, T.Term]:
    """Both sides of the Bekic lemma for f: X -> A + (X + Y), g: Y -> A + (X + Y):
    iter[f, g] and [id_A, iter([id_{A+X}, iter(g)] . f)] . [inj2, iter(g)]."""
    tf = T.infer_type(f, sig)
    x = tf.dom
    y = T.infer_type(g, sig).dom
    a = tf.cod.left
    ax = OTensor(a, x)
    lhs = iter_from_trace(T.copair(f, g, tf.cod), sig)
    regroup = T.structural(tf.cod, OTensor(ax, y))
    g2 = T.Compose(regroup, g)                        # Y -> (A + X) + Y
    it_g = iter_from_trace(g2, sig)                   # Y -> A + X
    inner = T.compose_all(f, regroup, T.copair(T.Id(ax), it_g, ax))   # X -> A + X
    rhs = T.Compose(T.copair(T.Id(a), iter_from_trace(inner, sig), a),
                    T.copair(T.inj2(a, x), it_g, ax))
    return lhs, rhs


def plus(f: T.Term, g: T.Term, a: ObjectTerm) -> T.Term:
    """f + g = merge . (f * g) . copy for f, g: A -> A (biproducts)."""
    return T.compose_all(T.Copy(a), T.Tensor(f, g), T.Merge(a))


def repetition(f: T.Term, sig: Signature) -> T.Term:
    """f* for f: A -> A, as the trace of the loop that feeds the input into
    a feedback wire carrying f and reads the result off before f."""
    a = T.infer_type(f, sig).dom
    body = T.chain(sig, T.Tensor(T.Id(a), T.Copy(a)), T.Alpha(a, a, a, inv=True),
                   T.Tensor(T.Tensor(T.Id(a), f), T.Id(a)),
                   T.Tensor(T.Merge(a), T.Id(a)), T.Sym(a, a))
    return T.TrR(a, body)


def trace_from_repetition(g: T.Term, sig: Signature, star=None) -> T.Term:
    """Tr^X(g) = g_AB + g_AX . (g_XX)* . g_XB for g: A + X -> B + X, with the
    blocks cut out by injections and projections; `star` defaults to
    repetition."""
    star = star or (lambda t: repetition(t, sig))
    typ = T.infer_type(g, sig)
    a, x = typ.dom.left, typ.dom.right
    b = typ.cod.left

    def block(inj, proj):
        return T.compose_all(inj, g, proj)
    g_ab = block(T.inj1(a, x), T.proj1(b, x))
    g_ax = block(T.inj1(a, x), T.proj2(b, x))
    g_xb = block(T.inj2(a, x), T.proj1(b, x))
    g_xx = block(T.inj2(a, x), T.proj2(b, x))
    via = T.compose_all(g_ax, star(g_xx), g_xb)
    return T.compose_all(T.Copy(a), T.Tensor(g_ab, via), T.Merge(b))


# ---------------------------------------------------------------- uniformity

def is_function(h: np.ndarray) -> bool:
    """A relation that is the graph of a function: the strict maps of the
    cocartesian structure of relations under disjoint union."""
    return bool(np.all(np.asarray(h, dtype=bool).sum(axis=1) == 1))


@dataclass
class UniformityReport:
    model: str
    trials: int = 0
    premises: int = 0
    counterexamples: list = field(default_factory=list)

    def __str__(self) -> str:
        return (f'{self.model}: {self.trials} trials, premise held {self.premises} times, '
                f'{len(self.counterexamples)} counterexamples')


def check_uniformity(m=None, strict: Callable[[np.ndarray], bool] = is_function,
                     trials: int = 1000, seed: int = 0, max_size: int = 2) -> UniformityReport:
    """Test  f ; (id_B * h) = (id_A * h) ; g  =>  Tr^X f = Tr^Y g  on random
    f, g and strict h, with * the tensor of model `m`.  For boolean additive
    models half of the triples are built to satisfy the premise, as
    f = (id + h) ; g ; (id + h^op) with h strict; counterexamples are
    reported as (f, g, h)."""
    import random

    from .models import (BOOL, RelPlus, eye, get_model, matmul, partial_trace,
                         random_matrix, rel_trace, star_trace)
    m = RelPlus if m is None else get_model(m) if isinstance(m, str) else m
    s = m.semiring
    rng = random.Random(seed)
    rep = UniformityReport(m.name)

    def tensor(n, h):
        i = eye(s, n)
        if m.additive:
            from .models import dsum
            return dsum(s, i, h)
        return np.kron(i, h).astype(s.dtype)

    def trace(f, a, b, x):
        if not m.additive:
            return partial_trace(s, f, a, b, x)
        return rel_trace(f, a, b, x) if s is BOOL else star_trace(s, f, a, b, x)

    lo = 0 if m.additive else 1
    for _ in range(trials):
        rep.trials += 1
        a, b = rng.randint(lo, max_size), rng.randint(lo, max_size)
        x, y = rng.randint(1, max_size), rng.randint(1, max_size)
        for _ in range(20):
            h = random_matrix(rng, m, x, y, density=rng.choice((0.0, 0.5, 1.0)))
            if strict(h):
                break
        else:
            continue
        da, db = m.combine([a, x]), m.combine([b, x])
        g = random_matrix(rng, m, m.combine([a, y]), m.combine([b, y]))
        if m.additive and s is BOOL and rng.random() < 0.5:
            f = matmul(s, matmul(s, tensor(a, h), g), tensor(b, h).T)
        else:
            f = random_matrix(rng, m, da, db)
        if not np.array_equal(matmul(s, f, tensor(b, h)), matmul(s, tensor(a, h), g)):
            continue
        rep.premises += 1
        try:
            tf, tg = trace(f, a, b, x), trace(g, a, b, y)
        except UnsupportedConstant:     # a star that diverges over a non-idempotent semiring
            continue
        if not np.array_equal(tf, tg):
            rep.counterexamples.append((f, g, h))
    return rep
