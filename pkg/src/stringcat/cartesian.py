"""Rewrite normal forms for product, coproduct and biproduct diagrams.

Diagrams are first flattened: symmetric crossings and bends are dissolved
into plain wires, and copy/erase (merge/init) dots become n-ary copy (merge)
nodes, erase being the 0-ary copy.  Oriented rules then run to a fixpoint:

* fusion: a copy feeding a copy becomes one copy; a unary copy is a wire;
* naturality: a box whose outputs are all copied (or erased) is duplicated
  (or deleted), its inputs copied (or erased) instead;
* bialgebra (biproducts): a merge feeding a copy becomes copies feeding
  merges;

and the duals of the first two for merges.  Boxes and dots on directed
cycles (trace feedback) are never duplicated, which keeps rewriting finite.
Closed components are dropped: the unit object is terminal (initial), so
every scalar is the identity.
"""
from __future__ import annotations

import random
from typing import Callable, Iterator

from .canon import isomorphic, wire_graph
from .diagram import Diagram, Node
from .errors import NonTermination
from .portgraph import PortGraph

MODES = ('product', 'coproduct', 'biproduct')


def _copy(label, k: int) -> Node:
    return Node('dot', (label,), (label,) * k, 'copy')


def _merge(label, k: int) -> Node:
    return Node('dot', (label,) * k, (label,), 'merge')


def flatten(d: Diagram) -> PortGraph:
    """Dissolve crossings and bends, make dots n-ary, drop closed parts."""
    g = PortGraph.from_diagram(d)
    for nid in sorted(g.nodes):
        n = g.nodes[nid]
        if n.kind == 'dot' and n.gen == 'erase':
            g.nodes[nid] = _copy(n.ins[0], 0)
        elif n.kind == 'dot' and n.gen == 'init':
            g.nodes[nid] = _merge(n.outs[0], 0)
    # splice out pass-through nodes, following chains through several
    passthrough = {nid for nid, n in g.nodes.items() if n.kind in ('cross', 'cup', 'cap', 'twist')}
    out = PortGraph(g.inputs, g.outputs)
    out.nodes = {nid: n for nid, n in g.nodes.items() if nid not in passthrough}
    out.next_id = g.next_id

    def follow(dst):
        # walk a wire from a destination end until it reaches a real node
        fwd = True
        cur = dst
        while cur[0] in passthrough:
            n = g.nodes[cur[0]]
            if fwd:
                if n.kind == 'cap':
                    fwd, cur = False, g.bwd[(cur[0], 1 - cur[1])]
                else:
                    cur = g.fwd[(cur[0], 1 - cur[1] if n.kind == 'cross' else 0)]
            else:
                if n.kind == 'cup':
                    fwd, cur = True, g.fwd[(cur[0], 1 - cur[1])]
                else:
                    cur = g.bwd[(cur[0], 1 - cur[1] if n.kind == 'cross' else 0)]
        if not fwd:
            raise ValueError('a wire joins two sources; not a cartesian diagram')
        return cur
    for src, dst in list(g.fwd.items()):
        if src[0] in passthrough:
            continue
        out.link(src, follow(dst), g.label[src])
    _drop_closed(out)
    return out


def _drop_closed(g: PortGraph) -> None:
    """Remove components not attached to the frame."""
    adj: dict[int, set[int]] = {n: set() for n in g.nodes}
    frame_side: set[int] = set()
    for s, t in g.fwd.items():
        if s[0] == -1 and t[0] != -1:
            frame_side.add(t[0])
        elif t[0] == -1 and s[0] != -1:
            frame_side.add(s[0])
        elif s[0] != -1 and t[0] != -1:
            adj[s[0]].add(t[0])
            adj[t[0]].add(s[0])
    keep, stack = set(frame_side), list(frame_side)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in keep:
                keep.add(w)
                stack.append(w)
    for nid in sorted(set(g.nodes) - keep):
        g.remove(nid)


def _on_cycle(g: PortGraph) -> set[int]:
    succ: dict[int, list[int]] = {n: [] for n in g.nodes}
    for s, t in g.fwd.items():
        if s[0] != -1 and t[0] != -1:
            succ[s[0]].append(t[0])
    # Tarjan's strongly connected components, iteratively
    index, low, on, stack, out = {}, {}, set(), [], set()
    counter = [0]
    for root in sorted(g.nodes):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ[v]:
                    out.update(comp)
    return out


def _is(g: PortGraph, end, gen: str) -> bool:
    return end[0] != -1 and g.nodes[end[0]].kind == 'dot' and g.nodes[end[0]].gen == gen


# ---------------------------------------------------------------- rules

Rule = tuple[str, Callable[[], PortGraph]]


def _fusion(g: PortGraph) -> Iterator[Rule]:
    for a in sorted(g.nodes):
        n = g.nodes[a]
        if n.kind != 'dot' or n.gen != 'copy':
            continue
        if len(n.outs) == 1:
            yield f'unit n{a}', lambda a=a: _unit(g, a)
            continue
        for j in range(len(n.outs)):
            t = g.fwd[(a, j)]
            if _is(g, t, 'copy') and t[0] != a and _fusable(g, a, t[0]):
                yield f'fuse n{a}.{j} n{t[0]}', lambda a=a, j=j, b=t[0]: _fuse(g, a, j, b)
                break


def _fusable(g: PortGraph, a: int, b: int) -> bool:
    ends = [g.src(a, 0)] + [g.fwd[(b, i)] for i in range(len(g.nodes[b].outs))]
    return all(e[0] not in (a, b) for e in ends)


def _unit(g: PortGraph, a: int) -> PortGraph:
    h = g.copy()
    s = h.src(a, 0)
    lab = h.label[s]
    t = h.fwd[(a, 0)]
    h.remove(a)
    if t[0] == a:                       # a unary copy feeding itself: a closed loop
        return h
    h.link(s, t, lab)
    return h


def _fuse(g: PortGraph, a: int, j: int, b: int) -> PortGraph:
    h = g.copy()
    na, nb = h.nodes[a], h.nodes[b]
    lab = na.ins[0]
    s = h.src(a, 0)
    targets = [h.fwd[(a, i)] for i in range(len(na.outs)) if i != j]
    targets[j:j] = [h.fwd[(b, i)] for i in range(len(nb.outs))]
    h.remove(a)
    h.remove(b)
    c = h.add(_copy(lab, len(targets)))
    h.link(s, (c, 0), lab)
    for i, t in enumerate(targets):
        h.link((c, i), t, lab)
    return h


def _naturality(g: PortGraph, cyc: set[int]) -> Iterator[Rule]:
    for f in sorted(g.nodes):
        n = g.nodes[f]
        if n.kind != 'box' or f in cyc:
            continue
        arities = []
        for j in range(len(n.outs)):
            t = g.fwd[(f, j)]
            arities.append(len(g.nodes[t[0]].outs) if _is(g, t, 'copy') else 1)
        big = max(arities, default=0)
        if big == 1:
            continue
        yield f'naturality n{f} x{big}', lambda f=f, arities=arities, big=big: \
            _duplicate(g, f, arities, big)


def _duplicate(g: PortGraph, f: int, arities: list[int], big: int) -> PortGraph:
    h = g.copy()
    n = h.nodes[f]
    feeds = [h.src(f, i) for i in range(len(n.ins))]
    feed_labels = [h.label[s] for s in feeds]
    # where copy r of output j goes (None: erased)
    dests: list[list] = []
    for j, k in enumerate(arities):
        t = h.fwd[(f, j)]
        if _is(h, t, 'copy'):
            dests.append([h.fwd[(t[0], r)] for r in range(k)] + [None] * (big - k))
        else:
            dests.append([t] + [None] * (big - 1))
    for j, k in enumerate(arities):
        t = h.fwd[(f, j)]
        if _is(h, t, 'copy'):
            h.remove(t[0])
    h.remove(f)
    copies = [h.add(n) for _ in range(big)]
    for i, (s, lab) in enumerate(zip(feeds, feed_labels)):
        c = h.add(_copy(lab, big))
        h.link(s, (c, 0), lab)
        for r, fr in enumerate(copies):
            h.link((c, r), (fr, i), lab)
    for j, lab in enumerate(n.outs):
        for r, fr in enumerate(copies):
            t = dests[j][r]
            if t is None:
                e = h.add(_copy(lab, 0))
                h.link((fr, j), (e, 0), lab)
            else:
                h.link((fr, j), t, lab)
    return h


def _bialgebra(g: PortGraph, cyc: set[int]) -> Iterator[Rule]:
    for m in sorted(g.nodes):
        n = g.nodes[m]
        if n.kind != 'dot' or n.gen != 'merge' or m in cyc:
            continue
        t = g.fwd[(m, 0)]
        if _is(g, t, 'copy') and t[0] not in cyc:
            yield f'bialgebra n{m} n{t[0]}', lambda m=m, c=t[0]: _bialg(g, m, c)


def _bialg(g: PortGraph, m: int, c: int) -> PortGraph:
    h = g.copy()
    nm, nc = h.nodes[m], h.nodes[c]
    lab = nm.outs[0]
    a, b = len(nm.ins), len(nc.outs)
    feeds = [h.src(m, i) for i in range(a)]
    dests = [h.fwd[(c, j)] for j in range(b)]
    h.remove(m)
    h.remove(c)
    copies = [h.add(_copy(lab, b)) for _ in range(a)]
    merges = [h.add(_merge(lab, a)) for _ in range(b)]
    for i, s in enumerate(feeds):
        h.link(s, (copies[i], 0), lab)
    for j, t in enumerate(dests):
        h.link((merges[j], 0), t, lab)
    for i, ci in enumerate(copies):
        for j, mj in enumerate(merges):
            h.link((ci, j), (mj, i), lab)
    return h


def _rules(g: PortGraph, mode: str) -> list[tuple[str, Callable[[], PortGraph], bool]]:
    """Applicable rule instances as (name, apply, mirrored)."""
    out = []
    if mode in ('product', 'biproduct'):
        cyc = _on_cycle(g)
        out += [(nm, fn, False) for nm, fn in _fusion(g)]
        out += [(nm, fn, False) for nm, fn in _naturality(g, cyc)]
        if mode == 'biproduct':
            out += [(nm, fn, False) for nm, fn in _bialgebra(g, cyc)]
    if mode in ('coproduct', 'biproduct'):
        m = g.mirror()
        cyc = _on_cycle(m)
        out += [(nm, fn, True) for nm, fn in _fusion(m)]
        out += [(nm, fn, True) for nm, fn in _naturality(m, cyc)]
    return out


def normal_form_graph(g: PortGraph, mode: str, budget: int = 100_000,
                      rng: random.Random | None = None, log: list | None = None) -> PortGraph:
    if mode not in MODES:
        raise ValueError(f'unknown mode {mode!r}')
    for _ in range(budget):
        rules = _rules(g, mode)
        if not rules:
            return g
        name, fn, mirrored = rules[rng.randrange(len(rules))] if rng else rules[0]
        h = fn()
        g = h.mirror() if mirrored else h
        _drop_closed(g)
        if log is not None:
            log.append(name + (' (dual)' if mirrored else ''))
    raise NonTermination(f'cartesian normalisation exceeded {budget} steps')


def normal_form_cartesian(dg: Diagram, mode: str, budget: int = 100_000,
                          rng: random.Random | None = None,
                          log: list | None = None) -> Diagram:
    """Normal form of a diagram under the product, coproduct or biproduct
    rules; `rng` picks among applicable rules (for confluence testing)."""
    g = normal_form_graph(flatten(dg), mode, budget, rng, log)
    for nid, n in list(g.nodes.items()):
        if n.kind == 'dot' and n.gen == 'copy' and not n.outs:
            g.nodes[nid] = Node('dot', n.ins, (), 'erase')
        elif n.kind == 'dot' and n.gen == 'merge' and not n.ins:
            g.nodes[nid] = Node('dot', (), n.outs, 'init')
    return g.to_diagram()


def commutative_iso(d1: Diagram, d2: Diagram) -> bool:
    """Anchored isomorphism where copy outputs and merge inputs are unordered."""
    if len(d1.inputs) != len(d2.inputs) or len(d1.outputs) != len(d2.outputs):
        return False
    if tuple(d1.inputs) != tuple(d2.inputs) or tuple(d1.outputs) != tuple(d2.outputs):
        return False
    pas = lambda n: n.kind in ('cross', 'cup', 'cap', 'twist')
    return isomorphic(wire_graph(d1, pas, commutative=True), wire_graph(d2, pas, commutative=True))
