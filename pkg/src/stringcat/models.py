"""Concrete models: relations and matrices over a semiring.

A morphism A -> B is a matrix with one row per element (basis vector) of A
and one column per element of B, so composition in diagrammatic order is
the matrix product f @ g.  Multiplicative models (tensor = Kronecker
product, unit of dimension 1) are compact closed with every object its own
dual; additive models (tensor = direct sum, unit of dimension 0) have
biproducts and a trace given by the Kleene star.  Terms and diagrams are
evaluated independently; both must agree.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np
from gmpy2 import mpq

from . import term as T
from .canon import IN, OUT, base_port
from .diagram import Diagram
from .errors import CarrierMismatch, UnsupportedConstant
from .signature import ObjectTerm, Signature, WireLabel, expand_boundary


# ---------------------------------------------------------------- semirings

@dataclass(frozen=True)
class Semiring:
    name: str
    dtype: object
    zero: object
    one: object
    coerce: Callable[[object], object]
    idempotent: bool = False

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a | b) if self.idempotent else (a + b)


def _nat(v) -> int:
    v = Fraction(v)
    if v < 0 or v.denominator != 1:
        raise ValueError(f'{v} is not a natural number')
    return int(v)


def _rat(v) -> mpq:
    q = mpq(str(v).strip())
    if q < 0:
        raise ValueError(f'{v} is negative')
    return q


BOOL = Semiring('bool', bool, False, True, lambda v: bool(Fraction(v)), idempotent=True)
NAT = Semiring('nat', object, 0, 1, _nat)
RAT = Semiring('rat', object, mpq(0), mpq(1), _rat)
SEMIRINGS = {'bool': BOOL, 'nat': NAT, 'rat': RAT}


def zeros(s: Semiring, r: int, c: int) -> np.ndarray:
    return np.full((r, c), s.zero, dtype=s.dtype)


def eye(s: Semiring, n: int) -> np.ndarray:
    m = zeros(s, n, n)
    for i in range(n):
        m[i, i] = s.one
    return m


def matmul(s: Semiring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros(s, a.shape[0], b.shape[1])
    return (a @ b).astype(s.dtype)


def dsum(s: Semiring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(s, a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def star(s: Semiring, m: np.ndarray) -> np.ndarray:
    """Kleene star id + m + m^2 + ...: reflexive-transitive closure for an
    idempotent semiring; otherwise defined only when m is nilpotent."""
    n = m.shape[0]
    out, power = eye(s, n), eye(s, n)
    for _ in range(n + 1):
        power = matmul(s, power, m)
        if not power.any():
            return out
        new = s.add(out, power)
        if s.idempotent and np.array_equal(new, out):
            return out
        out = new
    if s.idempotent:
        return out
    raise UnsupportedConstant(f'star of a non-nilpotent matrix over {s.name} diverges')


# ---------------------------------------------------------------- models

_SYM_FLAGS = {'braided', 'symmetric', 'twist', 'spacial', 'spherical', 'dagger',
              'rightTrace', 'leftTrace'}


@dataclass(frozen=True)
class Model:
    name: str
    semiring: Semiring
    additive: bool
    flags: frozenset[str]

    def unit_dim(self) -> int:
        return 0 if self.additive else 1

    def combine(self, dims) -> int:
        dims = list(dims)
        return sum(dims) if self.additive else int(np.prod(dims, dtype=object)) if dims else 1

    def supports(self, flag: str | None) -> bool:
        return flag is None or flag in self.flags

    def __str__(self) -> str:
        return self.name


def MatSemiring(s: Semiring | str = 'rat', additive: bool = False) -> Model:
    """Matrices over a semiring: compact closed under the Kronecker product,
    or a traced biproduct category under the direct sum."""
    s = SEMIRINGS[s] if isinstance(s, str) else s
    if additive:
        return Model(f'MatSum[{s.name}]', s, True,
                     frozenset(_SYM_FLAGS | {'copyErase', 'mergeInitial'}))
    return Model(f'Mat[{s.name}]', s, False,
                 frozenset(_SYM_FLAGS | {'rightDuals', 'leftDuals', 'pivotal'}))


RelPlus = Model('RelPlus', BOOL, True, frozenset(_SYM_FLAGS | {'copyErase', 'mergeInitial'}))
RelTimes = Model('RelTimes', BOOL, False,
                 frozenset(_SYM_FLAGS | {'rightDuals', 'leftDuals', 'pivotal'}))


def get_model(name: str) -> Model:
    if name == 'RelPlus':
        return RelPlus
    if name == 'RelTimes':
        return RelTimes
    m = re.fullmatch(r'(Mat|MatSum)(?:\[(\w+)\])?', name)
    if not m or (m.group(2) or 'rat') not in SEMIRINGS:
        raise ValueError(f'unknown model {name!r}; try RelPlus, RelTimes, Mat[rat], MatSum[nat]')
    return MatSemiring(m.group(2) or 'rat', additive=m.group(1) == 'MatSum')


MODELS = ('RelPlus', 'RelTimes', 'Mat[bool]', 'Mat[nat]', 'Mat[rat]', 'MatSum[bool]',
          'MatSum[nat]', 'MatSum[rat]')


# ---------------------------------------------------------------- interpretations

@dataclass
class Interpretation:
    sig: Signature
    objects: Mapping[str, int]
    morphisms: Mapping[str, np.ndarray] = field(default_factory=dict)

    def wire_dims(self, o: ObjectTerm) -> list[int]:
        return [self.objects[w.obj] for w in expand_boundary(o)]

    def dim(self, m: Model, o: ObjectTerm) -> int:
        return m.combine(self.wire_dims(o))

    def check(self, m: Model) -> None:
        for name, mat in self.morphisms.items():
            dom, cod = self.sig.morphisms[name]
            want = (self.dim(m, dom), self.dim(m, cod))
            if tuple(mat.shape) != want:
                raise CarrierMismatch(f'{name}: matrix is {mat.shape[0]}x{mat.shape[1]}, '
                                      f'carriers need {want[0]}x{want[1]}')


# ---------------------------------------------------------------- wire-level helpers

def _index(dims, xs) -> int:
    i = 0
    for d, x in zip(dims, xs):
        i = i * d + x
    return i


def _tuples(dims):
    return itertools.product(*(range(d) for d in dims))


def wire_perm(m: Model, dims: list[int], target: list[int]) -> np.ndarray:
    """The permutation moving wire i of the domain to position target[i]."""
    s = m.semiring
    k = len(dims)
    out_dims = [0] * k
    for i, t in enumerate(target):
        out_dims[t] = dims[i]
    if m.additive:
        offs = np.cumsum([0] + dims)
        out_offs = np.cumsum([0] + out_dims)
        mat = zeros(s, sum(dims), sum(dims))
        for i, t in enumerate(target):
            for e in range(dims[i]):
                mat[offs[i] + e, out_offs[t] + e] = s.one
        return mat
    n = m.combine(dims)
    mat = zeros(s, n, n)
    for xs in _tuples(dims):
        ys = [0] * k
        for i, t in enumerate(target):
            ys[t] = xs[i]
        mat[_index(dims, xs), _index(out_dims, ys)] = s.one
    return mat


def _bend(m: Model, dims: list[int], reversed_first: bool) -> np.ndarray:
    """The vector pairing each index tuple x with its reversal: entries at
    (rev x, x) or (x, rev x), as a 1 x n^2 row."""
    s = m.semiring
    rdims = dims[::-1]
    both = (rdims + dims) if reversed_first else (dims + rdims)
    vec = zeros(s, 1, m.combine(both))
    for xs in _tuples(dims):
        rx = xs[::-1]
        vec[0, _index(both, (rx + xs) if reversed_first else (xs + rx))] = s.one
    return vec


def _split(m: Model, dims: list[int], k: int, right: bool):
    return (m.combine(dims[:len(dims) - k]), m.combine(dims[len(dims) - k:])) if right \
        else (m.combine(dims[:k]), m.combine(dims[k:]))


def rel_trace(r: np.ndarray, a: int, b: int, x: int, left: bool = False) -> np.ndarray:
    """Trace of a relation R on (A+X) x (B+X): a ~ b iff a R x1 R ... R xn R b
    for some n >= 0, found by search through the X-block."""
    r = np.asarray(r, dtype=bool)
    if left:
        # X comes first: reorder to (A+X) x (B+X)
        perm_r = list(range(x, x + a)) + list(range(x))
        perm_c = list(range(x, x + b)) + list(range(x))
        r = r[np.ix_(perm_r, perm_c)]
    out = np.zeros((a, b), dtype=bool)
    for i in range(a):
        out[i] = r[i, :b]
        seen = set(np.nonzero(r[i, b:])[0])
        stack = list(seen)
        while stack:
            xi = stack.pop()
            out[i] |= r[a + xi, :b]
            for xj in np.nonzero(r[a + xi, b:])[0]:
                if xj not in seen:
                    seen.add(xj)
                    stack.append(xj)
    return out


def star_trace(s: Semiring, f: np.ndarray, a: int, b: int, x: int) -> np.ndarray:
    """Block formula f_AB + f_AX (f_XX)* f_XB for an additive right trace."""
    fab, fax, fxb, fxx = f[:a, :b], f[:a, b:], f[a:, :b], f[a:, b:]
    return s.add(fab, matmul(s, matmul(s, fax, star(s, fxx)), fxb))


def partial_trace(s: Semiring, f: np.ndarray, a: int, b: int, x: int,
                  left: bool = False) -> np.ndarray:
    """Sum over the traced index of a Kronecker-product matrix."""
    out = zeros(s, a, b)
    for i in range(a):
        for j in range(b):
            acc = s.zero
            for t in range(x):
                r, c = (t * a + i, t * b + j) if left else (i * x + t, j * x + t)
                acc = (acc or f[r, c]) if s.idempotent else acc + f[r, c]
            out[i, j] = acc
    return out


# ---------------------------------------------------------------- term evaluation

def _unsupported(m: Model, t: T.Term):
    raise UnsupportedConstant(f'{T.constant_name(t)} has no interpretation in {m.name}')


def eval_term(t: T.Term, interp: Interpretation, m: Model) -> np.ndarray:
    """Evaluate a well-typed term in model `m`."""
    return _TermEval(interp, m).go(t)


class _TermEval:
    def __init__(self, interp: Interpretation, m: Model):
        self.i, self.m, self.s = interp, m, m.semiring

    def dims(self, o: ObjectTerm) -> list[int]:
        return self.i.wire_dims(o)

    def idm(self, o: ObjectTerm) -> np.ndarray:
        return eye(self.s, self.i.dim(self.m, o))

    def tensor(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return dsum(self.s, a, b) if self.m.additive else np.kron(a, b).astype(self.s.dtype)

    def go(self, t: T.Term) -> np.ndarray:
        m, s = self.m, self.s
        if not m.supports(T.required_flag(t)):
            _unsupported(m, t)
        if isinstance(t, T.Gen):
            return self.i.morphisms[t.name]
        if isinstance(t, T.Id):
            return self.idm(t.obj)
        if isinstance(t, T.Compose):
            return matmul(s, self.go(t.before), self.go(t.after))
        if isinstance(t, T.Tensor):
            return self.tensor(self.go(t.left), self.go(t.right))
        if isinstance(t, (T.Alpha, T.Lambda, T.Rho, T.Piv, T.Twist)):
            return self.idm(T.constant_type(t).dom)
        if isinstance(t, T.Sym):
            da, db = self.dims(t.a), self.dims(t.b)
            if not t.inv:
                return wire_perm(m, da + db, [len(db) + i for i in range(len(da))] +
                                 list(range(len(db))))
            return wire_perm(m, db + da, [len(da) + j for j in range(len(db))] +
                             list(range(len(da))))
        if isinstance(t, (T.Eta, T.EtaL)):
            return _bend(m, self.dims(t.a), isinstance(t, T.Eta))
        if isinstance(t, (T.Eps, T.EpsL)):
            return _bend(m, self.dims(t.a), isinstance(t, T.EpsL)).T.copy()
        if isinstance(t, (T.Copy, T.Merge, T.Erase, T.Init)):
            n = self.i.dim(m, t.a)
            e = eye(s, n)
            mat = {T.Copy: lambda: np.hstack([e, e]), T.Merge: lambda: np.vstack([e, e]),
                   T.Erase: lambda: zeros(s, n, 0), T.Init: lambda: zeros(s, 0, n)}[type(t)]()
            return mat.astype(s.dtype)
        if isinstance(t, (T.TrR, T.TrL)):
            left = isinstance(t, T.TrL)
            f = self.go(t.body)
            ty = T.infer_type(t, self.i.sig)
            a, b = self.i.dim(m, ty.dom), self.i.dim(m, ty.cod)
            x = self.i.dim(m, t.x)
            if not m.additive:
                return partial_trace(s, f, a, b, x, left)
            if m.name == 'RelPlus':
                return rel_trace(f, a, b, x, left)
            if left:
                f = f[np.ix_(list(range(x, x + a)) + list(range(x)),
                             list(range(x, x + b)) + list(range(x)))]
            return star_trace(s, f, a, b, x)
        if isinstance(t, T.Dagger):
            return self.go(t.body).T.copy()
        if isinstance(t, T.Mate):
            f = self.go(t.body)
            ty = T.infer_type(t.body, self.i.sig)
            da, db = self.dims(ty.dom), self.dims(ty.cod)
            out = zeros(s, f.shape[1], f.shape[0])
            for xs in _tuples(da):
                for ys in _tuples(db):
                    out[_index(db[::-1], ys[::-1]), _index(da[::-1], xs[::-1])] = \
                        f[_index(da, xs), _index(db, ys)]
            return out
        raise TypeError(f'cannot evaluate {t!r}')


# ---------------------------------------------------------------- diagram evaluation

def eval_diagram(d: Diagram, interp: Interpretation, m: Model) -> np.ndarray:
    """Evaluate a diagram: tensor-network contraction in multiplicative
    models, path sums over wire states in additive ones."""
    return (_eval_additive if m.additive else _eval_multiplicative)(d, interp, m)


def evaluate(x, interp: Interpretation, m: Model) -> np.ndarray:
    """Evaluate a term or a diagram."""
    if isinstance(x, Diagram):
        return eval_diagram(x, interp, m)
    return eval_term(x, interp, m)


def _box_matrix(n, interp: Interpretation, m: Model) -> np.ndarray:
    g = interp.morphisms[n.gen]
    return g.T.copy() if n.mirrored else g


def _wdim(interp: Interpretation, w: WireLabel) -> int:
    return interp.objects[w.obj]


class _Tensor:
    """A sparse tensor: legs with dimensions and a dict of non-zero entries."""

    def __init__(self, legs, dims, entries):
        self.legs, self.dims, self.entries = list(legs), list(dims), entries


def _contract(s: Semiring, a: _Tensor, b: _Tensor) -> _Tensor:
    shared = [l for l in a.legs if l in b.legs]
    ia = [a.legs.index(l) for l in shared]
    ib = [b.legs.index(l) for l in shared]
    keep_a = [i for i in range(len(a.legs)) if i not in ia]
    keep_b = [i for i in range(len(b.legs)) if i not in ib]
    index: dict[tuple, list] = {}
    for kb, vb in b.entries.items():
        index.setdefault(tuple(kb[i] for i in ib), []).append((kb, vb))
    out: dict[tuple, object] = {}
    for ka, va in a.entries.items():
        for kb, vb in index.get(tuple(ka[i] for i in ia), ()):
            key = tuple(ka[i] for i in keep_a) + tuple(kb[i] for i in keep_b)
            v = (va and vb) if s.idempotent else va * vb
            if key in out:
                out[key] = (out[key] or v) if s.idempotent else out[key] + v
            else:
                out[key] = v
    out = {k: v for k, v in out.items() if v}
    return _Tensor([a.legs[i] for i in keep_a] + [b.legs[i] for i in keep_b],
                   [a.dims[i] for i in keep_a] + [b.dims[i] for i in keep_b], out)


def _eval_multiplicative(d: Diagram, interp: Interpretation, m: Model) -> np.ndarray:
    s = m.semiring
    in_edge = {e.dst: i for i, e in enumerate(d.edges)}
    out_edge = {e.src: i for i, e in enumerate(d.edges)}

    def leg(eid: int, at_src: bool):
        e = d.edges[eid]
        if e.src[0] == -1 and not at_src:
            return ('in', e.src[1])
        if e.dst[0] == -1 and at_src:
            return ('out', e.dst[1])
        return ('e', eid)
    tensors: list[_Tensor] = []
    for eid, e in enumerate(d.edges):
        if e.src[0] == -1 and e.dst[0] == -1:
            k = _wdim(interp, e.label)
            tensors.append(_Tensor([('in', e.src[1]), ('out', e.dst[1])], [k, k],
                                   {(x, x): s.one for x in range(k)}))
    for nid, n in enumerate(d.nodes):
        legs = [leg(in_edge[(nid, i)], False) for i in range(len(n.ins))] + \
               [leg(out_edge[(nid, j)], True) for j in range(len(n.outs))]
        dims = [_wdim(interp, w) for w in n.ins + n.outs]
        ni = len(n.ins)
        entries: dict[tuple, object] = {}
        if n.kind == 'box':
            g = _box_matrix(n, interp, m)
            up_in = len(n.outs) if n.rot % 2 else len(n.ins)
            up_dims: list[int] = [0] * len(legs)
            pos = {}
            for io, cnt, off in ((IN, len(n.ins), 0), (OUT, len(n.outs), ni)):
                for p in range(cnt):
                    bio, bidx = base_port(n, io, p)
                    up = bidx if bio == IN else up_in + bidx
                    pos[up] = off + p
                    up_dims[up] = dims[off + p]
            di, do = up_dims[:up_in], up_dims[up_in:]
            for r, c in zip(*np.nonzero(g)):
                xs = np.unravel_index(r, di) if di else ()
                ys = np.unravel_index(c, do) if do else ()
                key = [0] * len(legs)
                for u, v in enumerate(tuple(xs) + tuple(ys)):
                    key[pos[u]] = int(v)
                entries[tuple(key)] = g[r, c]
        elif n.kind == 'dot':
            raise UnsupportedConstant(f'copy/merge dots have no interpretation in {m.name}')
        elif n.kind == 'cross':
            for x in range(dims[0]):
                for y in range(dims[1]):
                    entries[(x, y, y, x)] = s.one
        else:
            entries = {(x, x): s.one for x in range(dims[0])}
        tensors.append(_Tensor(legs, dims, entries))
    # contract greedily, smallest result first
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            for j in range(i + 1, len(tensors)):
                a, b = tensors[i], tensors[j]
                if not set(a.legs) & set(b.legs):
                    continue
                size = 1
                for l, dm in zip(a.legs + b.legs, a.dims + b.dims):
                    if not (l in a.legs and l in b.legs):
                        size *= dm
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            # disconnected pieces: take an outer product
            best = (0, 0, 1)
        _, i, j = best
        c = _contract(s, tensors[i], tensors[j])
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [c]
    net = tensors[0] if tensors else _Tensor([], [], {(): s.one})
    di = [_wdim(interp, w) for w in d.inputs]
    do = [_wdim(interp, w) for w in d.outputs]
    out = zeros(s, m.combine(di), m.combine(do))
    order_in = [net.legs.index(('in', i)) for i in range(len(di))]
    order_out = [net.legs.index(('out', j)) for j in range(len(do))]
    for key, v in net.entries.items():
        out[_index(di, [key[p] for p in order_in]), _index(do, [key[p] for p in order_out])] = v
    return out


def _loop_exit(d: Diagram, cap: int, port: int, out_edge) -> int | None:
    # walk backwards from the cap's other input through crossings and twists
    # to a cup, then leave the cup by its other output; None when the other
    # input is not the returning wire
    end = next(e.src for e in d.edges if e.dst == (cap, 1 - port))
    while end[0] != -1 and d.nodes[end[0]].kind in ('cross', 'twist'):
        n = d.nodes[end[0]]
        back = (end[0], 1 - end[1] if n.kind == 'cross' else 0)
        end = next(e.src for e in d.edges if e.dst == back)
    if end[0] == -1 or d.nodes[end[0]].kind != 'cup':
        return None
    return out_edge[(end[0], 1 - end[1])]


def _eval_additive(d: Diagram, interp: Interpretation, m: Model) -> np.ndarray:
    s = m.semiring
    offs, n_states = [], 0
    for e in d.edges:
        offs.append(n_states)
        n_states += _wdim(interp, e.label)
    in_edge = {e.dst: i for i, e in enumerate(d.edges)}
    out_edge = {e.src: i for i, e in enumerate(d.edges)}
    step = zeros(s, n_states, n_states)
    for nid, n in enumerate(d.nodes):
        ins = [in_edge[(nid, i)] for i in range(len(n.ins))]
        outs = [out_edge[(nid, j)] for j in range(len(n.outs))]
        if n.kind == 'box':
            if n.rot % 2:
                raise UnsupportedConstant(f'rotated boxes have no interpretation in {m.name}')
            g = _box_matrix(n, interp, m)
            rows = [offs[e] + k for e in ins for k in range(_wdim(interp, d.edges[e].label))]
            cols = [offs[e] + k for e in outs for k in range(_wdim(interp, d.edges[e].label))]
            for r, c in zip(*np.nonzero(g)):
                step[rows[r], cols[c]] = g[r, c]
            continue
        if n.kind in ('cup', 'cap') and n.gen != 'tr':
            raise UnsupportedConstant(f'duals have no interpretation in {m.name}')
        if n.kind == 'cup':
            continue
        if n.kind == 'cap':
            # a trace loop: arriving at the cap, a state runs back along the
            # returning wire and re-enters the body where the cup leaves it
            pairs = [(ins[p], x) for p in (0, 1)
                     if (x := _loop_exit(d, nid, p, out_edge)) is not None]
        elif n.kind == 'cross':
            pairs = [(ins[0], outs[1]), (ins[1], outs[0])]
        elif n.kind == 'twist':
            pairs = [(ins[0], outs[0])]
        else:                                       # dot: every input to every output
            pairs = [(a, b) for a in ins for b in outs]
        for a, b in pairs:
            for k in range(_wdim(interp, d.edges[a].label)):
                step[offs[a] + k, offs[b] + k] = s.one
    di = [_wdim(interp, w) for w in d.inputs]
    do = [_wdim(interp, w) for w in d.outputs]
    start = zeros(s, sum(di), n_states)
    finish = zeros(s, n_states, sum(do))
    in_off, out_off = np.cumsum([0] + di), np.cumsum([0] + do)
    for eid, e in enumerate(d.edges):
        k = _wdim(interp, e.label)
        for x in range(k):
            if e.src[0] == -1:
                start[in_off[e.src[1]] + x, offs[eid] + x] = s.one
            if e.dst[0] == -1:
                finish[offs[eid] + x, out_off[e.dst[1]] + x] = s.one
    return matmul(s, matmul(s, start, star(s, step)), finish)


# ---------------------------------------------------------------- binding files

_PAIR = re.compile(r'\(\s*[A-Za-z_]*(\d+)\s*,\s*[A-Za-z_]*(\d+)\s*\)')


def parse_bindings(text: str, sig: Signature, m: Model) -> Interpretation:
    """Read `object A = 2`, `morphism f = [[0,1],[1,1]]` (rows indexed by
    the domain) and `morphism R = {(a1,b2),(a2,b1)}` (elements numbered
    from 1 across the whole domain and codomain)."""
    objects: dict[str, int] = {}
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(' ')
        name, eq, value = rest.partition('=')
        name, value = name.strip(), value.strip()
        if not eq or head not in ('object', 'morphism'):
            raise ValueError(f'line {lineno}: expected "object X = n" or "morphism f = ..."')
        if head == 'object':
            objects[name] = int(value)
        else:
            raw[name] = value
    interp = Interpretation(sig, objects)
    s = m.semiring
    for name, value in raw.items():
        if name not in sig.morphisms:
            raise ValueError(f'morphism {name} is not in the signature')
        dom, cod = sig.morphisms[name]
        r, c = interp.dim(m, dom), interp.dim(m, cod)
        if value.startswith('{'):
            mat = zeros(s, r, c)
            for a, b in _PAIR.findall(value):
                i, j = int(a) - 1, int(b) - 1
                if not (0 <= i < r and 0 <= j < c):
                    raise CarrierMismatch(f'{name}: pair ({a},{b}) outside {r}x{c}')
                mat[i, j] = s.one
        else:
            rows = re.findall(r'\[([^\[\]]*)\]', value)
            cells = [[x.strip() for x in row.split(',') if x.strip()] for row in rows]
            if value.replace(' ', '') in ('[]', '[[]]'):
                cells = []
            mat = zeros(s, len(cells), len(cells[0]) if cells else 0)
            if cells and any(len(row) != len(cells[0]) for row in cells):
                raise CarrierMismatch(f'{name}: ragged matrix')
            for i, row in enumerate(cells):
                for j, x in enumerate(row):
                    mat[i, j] = s.coerce(x)
            if mat.shape == (0, 0) and (r, c) != (0, 0):
                mat = zeros(s, r, c)
        interp.morphisms[name] = mat
    interp.check(m)
    return interp


def show_matrix(mat: np.ndarray) -> str:
    def cell(v):
        if isinstance(v, (bool, np.bool_)):
            return '1' if v else '0'
        return str(v)
    return '[' + ', '.join('[' + ', '.join(cell(v) for v in row) + ']' for row in mat) + ']'


def random_matrix(rng, m: Model, r: int, c: int, density: float = 0.5) -> np.ndarray:
    s = m.semiring
    mat = zeros(s, r, c)
    for i in range(r):
        for j in range(c):
            if rng.random() < density:
                if s is BOOL:
                    mat[i, j] = True
                elif s is NAT:
                    mat[i, j] = rng.randint(1, 3)
                else:
                    mat[i, j] = mpq(rng.randint(1, 4), rng.randint(1, 3))
    return mat


def random_interpretation(rng, sig: Signature, m: Model, sizes=(1, 2)) -> Interpretation:
    """Random carriers and matrices for every generator of `sig`."""
    objects = {o: rng.choice(sizes) for o in sorted(sig.objects)}
    interp = Interpretation(sig, objects)
    for name in sorted(sig.morphisms):
        dom, cod = sig.morphisms[name]
        interp.morphisms[name] = random_matrix(rng, m, interp.dim(m, dom), interp.dim(m, cod))
    return interp


# ---------------------------------------------------------------- soundness

@dataclass
class SoundnessReport:
    doctrine: str
    model: str
    checked: int = 0
    unsupported: int = 0
    decided_equal: int = 0
    decided_other: int = 0
    schemas: set = field(default_factory=set)

    def __str__(self) -> str:
        return (f'{self.doctrine} in {self.model}: {self.checked} instances equal, '
                f'{self.unsupported} unsupported, {len(self.schemas)} schemas')


def sizes_for(m: Model) -> tuple[int, ...]:
    return (0, 1, 2) if m.additive else (1, 2)


def check_soundness(d, m: Model | str, trials: int = 100, seed: int = 0,
                    with_decide: bool = False, budget: int = 2000) -> SoundnessReport:
    """Evaluate both sides of random axiom instances of doctrine `d` in model
    `m`; with `with_decide`, also decide each pair and require Equal verdicts
    to be eval-equal."""
    import random

    from .doctrine import get_doctrine
    from .errors import SoundnessViolation
    from .frontend import print_term
    from .randterm import instances
    doc = get_doctrine(d)
    m = get_model(m) if isinstance(m, str) else m
    rep = SoundnessReport(doc.name, m.name)
    rng = random.Random(seed)
    for schema, lhs, rhs, sig in instances(doc, trials, seed):
        interp = random_interpretation(rng, sig, m, sizes_for(m))
        try:
            a, b = eval_term(lhs, interp, m), eval_term(rhs, interp, m)
        except UnsupportedConstant:
            rep.unsupported += 1
            continue
        if not np.array_equal(a, b):
            raise SoundnessViolation(f'{schema.name} fails in {m.name}: '
                                     f'{print_term(lhs)} vs {print_term(rhs)}')
        rep.checked += 1
        rep.schemas.add(schema.name)
        if with_decide:
            from .equivalence import decide
            v = decide(lhs, rhs, sig, doc, budget)
            if v.equal:
                rep.decided_equal += 1
            else:
                rep.decided_other += 1
    return rep
