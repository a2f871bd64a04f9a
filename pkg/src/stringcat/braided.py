"""Braided regimes: strand invariants and Reidemeister-style moves.

Strands are maximal paths through crossings, bends and twists.  A strand's
orientation is read off its wire labels (odd winding runs backwards), so
crossing signs can be oriented: a braid sign counts positively when both or
neither strand runs backwards.

Moves act on :class:`PortGraph` values; every move is an equation valid in
the regime that enables it, so any chain of moves is a proof.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .canon import IN, OUT, base_port, node_label, partner_port, planar_code
from .diagram import Diagram, Node
from .portgraph import PortGraph

PASS = ('cross', 'cup', 'cap', 'twist')

ALL_MOVES = ('R1', 'R2', 'R3', 'L1', 'L2', 'slideNaturality', 'yankTwist',
             'framingCancel', 'pivotRotate')


@dataclass(frozen=True)
class MoveSet:
    """Enabled moves.  L1/L2 are the two Lambda moves: a strand passing a cup
    or a cap.  R1 on a framed diagram trades a curl for a twist."""
    moves: frozenset[str]

    def __contains__(self, m: str) -> bool:
        return m in self.moves

    @classmethod
    def for_regime(cls, regime: str) -> MoveSet:
        base = {'R2', 'R3', 'L1', 'L2', 'slideNaturality', 'pivotRotate'}
        if regime == 'Isotopy3D':
            base |= {'R1'}
        elif regime == 'Framed3D':
            base |= {'R1', 'yankTwist', 'framingCancel'}
        return cls(frozenset(base))


# ---------------------------------------------------------------- strands

@dataclass
class Strand:
    ends: tuple | None                     # end keys, None for a closed loop
    atom: str
    orient: int                            # +1 when traversal follows orientation
    turns: int = 0                         # signed half-turns along the traversal
    twists: int = 0
    passes: list = field(default_factory=list)   # (crossing node, 'A'|'B')

    @property
    def boxfree(self) -> bool:
        return self.ends is None or all(k[0] == 'frame' for k in self.ends)

    @property
    def key(self):
        return (('loop', self.atom),) if self.ends is None else tuple(sorted(self.ends))


def _end_key(d: Diagram, end, io: int):
    # io is IN for destination ends (node inputs, frame outputs)
    nid, port = end
    if nid == -1:
        return ('frame', 'out' if io == IN else 'in', port)
    n = d.nodes[nid]
    bio, bidx = base_port(n, io, port)
    return ('port', node_label(n), bio, bidx)


def strands(d: Diagram) -> list[Strand]:
    src_of = {e.src: i for i, e in enumerate(d.edges)}
    dst_of = {e.dst: i for i, e in enumerate(d.edges)}
    seen: set[int] = set()
    out: list[Strand] = []

    def passes_through(nid):
        return nid != -1 and d.nodes[nid].kind in PASS

    def run(eid: int, forward: bool, start_key) -> Strand:
        e0 = d.edges[eid]
        par = e0.label.parity % 2
        st = Strand(None, e0.label.obj, (1 if forward else -1) * (1 if par == 0 else -1))
        while True:
            seen.add(eid)
            e = d.edges[eid]
            end = e.dst if forward else e.src
            if not passes_through(end[0]):
                if start_key is None:
                    raise ValueError('loop strand reached a non-pass-through node')
                st.ends = (start_key, _end_key(d, end, IN if forward else OUT))
                return st
            nid, port = end
            n = d.nodes[nid]
            io = IN if forward else OUT
            if n.kind == 'cross':
                st.passes.append((nid, 'A' if (io, port) in ((IN, 0), (OUT, 1)) else 'B'))
            elif n.kind == 'twist':
                st.twists += n.sign
            elif n.kind == 'cup':
                st.turns += -1 if port == 0 else 1
            elif n.kind == 'cap':
                st.turns += 1 if port == 0 else -1
            nio, nport = partner_port(n, io, port)
            if nio == OUT:
                eid, forward = src_of[(nid, nport)], True
            else:
                eid, forward = dst_of[(nid, nport)], False
            if eid in seen:
                if start_key is None:
                    return st
                raise ValueError('strand revisits an edge')

    starts = []
    for i in range(len(d.inputs)):
        starts.append((src_of[(-1, i)], True, ('frame', 'in', i)))
    for j in range(len(d.outputs)):
        starts.append((dst_of[(-1, j)], False, ('frame', 'out', j)))
    for nid, n in enumerate(d.nodes):
        if n.kind in PASS:
            continue
        for i in range(len(n.ins)):
            starts.append((dst_of[(nid, i)], False, _end_key(d, (nid, i), IN)))
        for j in range(len(n.outs)):
            starts.append((src_of[(nid, j)], True, _end_key(d, (nid, j), OUT)))
    for eid, forward, key in starts:
        if eid not in seen:
            out.append(run(eid, forward, key))
    for eid in range(len(d.edges)):
        if eid not in seen:
            out.append(run(eid, True, None))
    return out


def oriented_sign(n: Node) -> int:
    """Knot-theoretic sign of a crossing: the braid sign, flipped when
    exactly one strand runs against the flow."""
    flip = (n.ins[0].parity + n.ins[1].parity) % 2
    return -n.sign if flip else n.sign


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class InvariantVector:
    boundaryConnection: tuple
    perPairLinking: tuple
    perStrandFraming: tuple
    perStrandCurvature: tuple
    boxMultiset: tuple
    windingProfile: tuple

    def linking(self, a, b) -> Fraction:
        """Linking number of the strands keyed a and b (summed over strands
        sharing those keys)."""
        key = tuple(sorted((a, b)))
        return sum((v for k, v in self.perPairLinking if k == key), Fraction(0))

    def framing(self, a) -> int:
        return sum(v for k, v in self.perStrandFraming if k == a)

    def compare(self, other: InvariantVector, fields) -> tuple[str, object, object] | None:
        for name in fields:
            x, y = getattr(self, name), getattr(other, name)
            if x != y:
                return name, x, y
        return None


def invariants_of(d: Diagram) -> InvariantVector:
    ss = strands(d)
    owner: dict[tuple[int, str], int] = {}
    for i, s in enumerate(ss):
        for nid, which in s.passes:
            owner[(nid, which)] = i
    pair: dict[tuple, Fraction] = {}
    self_writhe = [0] * len(ss)
    for nid, n in enumerate(d.nodes):
        if n.kind != 'cross' or (nid, 'A') not in owner:
            continue
        a, b = owner[(nid, 'A')], owner[(nid, 'B')]
        w = oriented_sign(n)
        if a == b:
            self_writhe[a] += w
        elif ss[a].boxfree and ss[b].boxfree:
            key = (min(a, b), max(a, b))
            pair[key] = pair.get(key, Fraction(0)) + Fraction(w, 2)
    linking = sorted((tuple(sorted((ss[a].key, ss[b].key))), v)
                     for (a, b), v in pair.items() if v)
    framing = sorted((s.key, s.twists + self_writhe[i]) for i, s in enumerate(ss) if s.boxfree)
    curvature = sorted((s.key, s.turns * s.orient) for s in ss if s.boxfree)
    boxes = sorted((n.gen, int(n.mirrored)) for n in d.nodes if n.kind == 'box')
    windings = (tuple(w.parity % 2 for w in d.inputs), tuple(w.parity % 2 for w in d.outputs))
    return InvariantVector(tuple(sorted(s.key for s in ss)), tuple(linking), tuple(framing),
                           tuple(curvature), tuple(boxes), windings)


def invariant_fields(regime: str) -> tuple[str, ...]:
    base = ('boxMultiset', 'windingProfile', 'boundaryConnection', 'perPairLinking')
    if regime == 'Regular2D':
        return base + ('perStrandFraming', 'perStrandCurvature')
    return base + ('perStrandFraming',)


# ---------------------------------------------------------------- moves

Move = tuple[str, str, PortGraph]


def _cross(a, b, sign: int) -> Node:
    return Node('cross', (a, b), (b, a), sign=sign)


def _r2(g: PortGraph) -> Iterator[Move]:
    for c1 in sorted(g.nodes):
        n1 = g.nodes[c1]
        if n1.kind != 'cross' or n1.sign == 0:
            continue
        d0, d1 = g.fwd[(c1, 0)], g.fwd[(c1, 1)]
        c2 = d0[0]
        if c2 == -1 or c2 == c1 or d0 != (c2, 0) or d1 != (c2, 1):
            continue
        n2 = g.nodes[c2]
        if n2.kind != 'cross' or n2.sign != -n1.sign:
            continue
        h = g.copy()
        s0, s1 = h.src(c1, 0), h.src(c1, 1)
        l0, l1 = h.label[s0], h.label[s1]
        o0, o1 = h.fwd[(c2, 0)], h.fwd[(c2, 1)]
        if s0[0] in (c1, c2) or s1[0] in (c1, c2):
            continue
        h.remove(c1)
        h.remove(c2)
        h.link(s0, o0, l0)
        h.link(s1, o1, l1)
        yield 'R2', f'cancel n{c1} n{c2}', h


def _slide_back(g: PortGraph, kinds) -> Iterator[Move]:
    """A node passes a strand that crosses all of its inputs: the crossings
    move to its outputs."""
    for nid in sorted(g.nodes):
        node = g.nodes[nid]
        if node.kind not in kinds or not node.ins:
            continue
        k = len(node.ins)
        feeds = [g.src(nid, i) for i in range(k)]
        cs = [f[0] for f in feeds]
        if any(c == -1 or c == nid or g.nodes[c].kind != 'cross' for c in cs) \
                or len(set(cs)) != k:
            continue
        sign = g.nodes[cs[0]].sign
        if sign == 0 or any(g.nodes[c].sign != sign for c in cs):
            continue
        if all(f[1] == 0 for f in feeds):
            up = True               # the strand enters c0 at in0 and rises
            chain_ok = all(g.fwd[(cs[i], 1)] == (cs[i + 1], 0) for i in range(k - 1))
            s_in, s_out = g.src(cs[0], 0), g.fwd[(cs[-1], 1)]
        elif all(f[1] == 1 for f in feeds):
            up = False              # the strand enters c_{k-1} at in1 and falls
            chain_ok = all(g.fwd[(cs[i + 1], 0)] == (cs[i], 1) for i in range(k - 1))
            s_in, s_out = g.src(cs[-1], 1), g.fwd[(cs[0], 0)]
        else:
            continue
        if not chain_ok or s_in[0] in cs or s_in[0] == nid or s_out[0] in cs or \
                s_out[0] == nid:
            continue
        h = g.copy()
        s_label = h.label[s_in]
        other = 1 if up else 0      # port by which the node's wire enters c_i
        outer = [h.src(c, other) for c in cs]
        if any(o[0] in cs or o[0] == nid for o in outer):
            continue
        outer_labels = [h.label[o] for o in outer]
        outs = [h.fwd[(nid, j)] for j in range(len(node.outs))]
        if any(o[0] == nid for o in outs):
            continue
        for c in cs:
            h.remove(c)
        out_labels = list(node.outs)
        for j in range(len(node.outs)):
            h.unlink_src((nid, j))
        for i, (o, lab) in enumerate(zip(outer, outer_labels)):
            h.link(o, (nid, i), lab)
        m = len(node.outs)
        if m == 0:
            h.link(s_in, s_out, s_label)
        else:
            ds = []
            for j in range(m):
                lab = out_labels[j]
                ds.append(h.add(_cross(s_label, lab, sign) if up else _cross(lab, s_label, sign)))
            for j, dj in enumerate(ds):
                if up:
                    h.link((nid, j), (dj, 1), out_labels[j])
                    h.link((dj, 0), outs[j], out_labels[j])
                else:
                    h.link((nid, j), (dj, 0), out_labels[j])
                    h.link((dj, 1), outs[j], out_labels[j])
            if up:
                h.link(s_in, (ds[0], 0), s_label)
                for j in range(m - 1):
                    h.link((ds[j], 1), (ds[j + 1], 0), s_label)
                h.link((ds[-1], 1), s_out, s_label)
            else:
                h.link(s_in, (ds[-1], 1), s_label)
                for j in range(m - 1, 0, -1):
                    h.link((ds[j], 0), (ds[j - 1], 1), s_label)
                h.link((ds[0], 0), s_out, s_label)
        name = {'box': 'slideNaturality', 'twist': 'slideNaturality', 'cross': 'R3',
                'cap': 'L2', 'cup': 'L1'}[node.kind]
        yield name, f'n{nid} passes strand at ' + ','.join(f'n{c}' for c in cs), h


def _mirrored(gen: Callable[[PortGraph], Iterator[Move]]):
    def moves(g: PortGraph) -> Iterator[Move]:
        for name, pos, h in gen(g.mirror()):
            yield name, pos + ' (mirrored)', h.mirror()
    return moves


def _bend_chain(g: PortGraph, start: tuple[int, int]):
    """Follow a wire from an output port through bends only.  Returns the
    reached end (as ('in'|'out', end)) and the bends passed, each with the
    port it was entered by."""
    bends: list[tuple[int, int]] = []
    forward = True
    end = g.fwd[start]
    while True:
        nid = end[0]
        if nid == -1 or g.nodes[nid].kind not in ('cup', 'cap') or \
                any(b == nid for b, _ in bends):
            return ('in' if forward else 'out', end), bends
        bends.append((nid, end[1]))
        other = 1 - end[1]
        if forward:                 # entered a cap, leave backwards
            end = g.bwd[(nid, other)]
            forward = False
        else:                       # entered a cup, leave forwards
            end = g.fwd[(nid, other)]
            forward = True


def _r1(g: PortGraph, framed: bool) -> Iterator[Move]:
    for c in sorted(g.nodes):
        n = g.nodes[c]
        if n.kind != 'cross' or n.sign == 0:
            continue
        for k in (0, 1):
            (io, end), bends = _bend_chain(g, (c, k))
            if io != 'in' or end != (c, k) or not bends:
                continue
            # strand: in_{1-k} -> out_k -> curl -> in_k -> out_{1-k}
            h = g.copy()
            s = h.src(c, 1 - k)
            lab = h.label[s]
            t = h.fwd[(c, 1 - k)]
            if s[0] == c or t[0] == c:
                continue
            for b, _ in bends:
                h.remove(b)
            h.remove(c)
            w = oriented_sign(n)
            if framed:
                tw = h.add(Node('twist', (lab,), (lab,), sign=w))
                h.link(s, (tw, 0), lab)
                h.link((tw, 0), t, lab)
            else:
                h.link(s, t, lab)
            yield 'R1', f'curl at n{c}' + (f' -> twist {w:+d}' if framed else ''), h


def _curls(g: PortGraph) -> dict[int, tuple[int, list[int], int]]:
    """Crossings carrying a curl: crossing -> (k, bends, half-turns), where
    the curl leaves by output k and returns by input k."""
    out = {}
    for c in sorted(g.nodes):
        n = g.nodes[c]
        if n.kind != 'cross' or n.sign == 0:
            continue
        for k in (0, 1):
            (io, end), bends = _bend_chain(g, (c, k))
            if io == 'in' and end == (c, k) and bends:
                turns = 0
                for b, port in bends:
                    if g.nodes[b].kind == 'cap':
                        turns += 1 if port == 0 else -1
                    else:
                        turns += -1 if port == 0 else 1
                out[c] = (k, [b for b, _ in bends], turns)
                break
    return out


def _whitney(g: PortGraph) -> Iterator[Move]:
    """Two consecutive curls of opposite writhe and opposite turning cancel
    (the Whitney trick, a consequence of R2, R3 and the Lambda moves)."""
    curls = _curls(g)
    for c1, (k1, bends1, turns1) in curls.items():
        nxt = g.fwd[(c1, 1 - k1)]
        c2 = nxt[0]
        if c2 not in curls or c2 == c1:
            continue
        k2, bends2, turns2 = curls[c2]
        if nxt != (c2, 1 - k2):
            continue
        if oriented_sign(g.nodes[c1]) != -oriented_sign(g.nodes[c2]) or turns1 != -turns2:
            continue
        h = g.copy()
        s = h.src(c1, 1 - k1)
        lab = h.label[s]
        t = h.fwd[(c2, 1 - k2)]
        if s[0] in (c1, c2) or t[0] in (c1, c2):
            continue
        for b in bends1 + bends2 + [c1, c2]:
            h.remove(b)
        h.link(s, t, lab)
        yield 'R2', f'whitney n{c1} n{c2}', h


def _twist_cancel(g: PortGraph) -> Iterator[Move]:
    for t in sorted(g.nodes):
        n = g.nodes[t]
        if n.kind != 'twist':
            continue
        u = g.fwd[(t, 0)][0]
        if u == -1 or u == t or g.nodes[u].kind != 'twist' or g.nodes[u].sign != -n.sign:
            continue
        h = g.copy()
        s, lab = h.src(t, 0), h.label[h.src(t, 0)]
        out = h.fwd[(u, 0)]
        h.remove(t)
        h.remove(u)
        h.link(s, out, lab)
        yield 'framingCancel', f'n{t} n{u}', h


def _move_twist(h: PortGraph, t: int, onto_src) -> None:
    """Remove twist t and re-insert it on the wire leaving `onto_src`."""
    n = h.nodes[t]
    s = h.src(t, 0)
    lab = h.label[s]
    out = h.fwd[(t, 0)]
    h.remove(t)
    h.link(s, out, lab)
    dst, lab2 = h.unlink_src(onto_src)
    tw = h.add(Node('twist', (lab2,), (lab2,), sign=n.sign))
    h.link(onto_src, (tw, 0), lab2)
    h.link((tw, 0), dst, lab2)


def _twist_yank(g: PortGraph) -> Iterator[Move]:
    """Twists pass through one-wire boxes (naturality) and round bends."""
    for t in sorted(g.nodes):
        n = g.nodes[t]
        if n.kind != 'twist':
            continue
        s = g.src(t, 0)
        if s[0] != -1 and s[0] != t:
            b = g.nodes[s[0]]
            if b.kind == 'box' and len(b.ins) == 1 and len(b.outs) == 1:
                h = g.copy()
                _move_twist(h, t, h.src(s[0], 0))
                yield 'yankTwist', f'n{t} through box n{s[0]}', h
            elif b.kind == 'cup':
                h = g.copy()
                _move_twist(h, t, (s[0], 1 - s[1]))
                yield 'yankTwist', f'n{t} round cup n{s[0]}', h
        o = g.fwd[(t, 0)]
        if o[0] != -1 and o[0] != t and g.nodes[o[0]].kind == 'cap':
            h = g.copy()
            onto = h.src(o[0], 1 - o[1])
            if onto[0] != t:
                _move_twist(h, t, onto)
                yield 'yankTwist', f'n{t} round cap n{o[0]}', h


_SLIDE_KINDS = {'slideNaturality': ('box', 'twist'), 'R3': ('cross',), 'L1': ('cup',),
                'L2': ('cap',)}


def moves_of(g: PortGraph, ms: MoveSet, framed: bool) -> Iterator[Move]:
    if 'R2' in ms:
        yield from _r2(g)
        yield from _whitney(g)
    if 'framingCancel' in ms:
        yield from _twist_cancel(g)
    if 'R1' in ms:
        yield from _r1(g, framed)
    kinds = tuple(k for m, ks in _SLIDE_KINDS.items() if m in ms for k in ks)
    if kinds:
        yield from _slide_back(g, kinds)
        yield from _mirrored(lambda x: _slide_back(x, kinds))(g)
    if 'yankTwist' in ms:
        yield from _twist_yank(g)
        yield from _mirrored(_twist_yank)(g)


# ---------------------------------------------------------------- normalization

def state_key(g: PortGraph | Diagram):
    d = g.to_diagram() if isinstance(g, PortGraph) else g
    return planar_code(d, free=True)


def naturality_normalize(d: Diagram, framed: bool = False,
                         witness: list | None = None) -> Diagram:
    """Slide boxes and twists towards the inputs past crossing strands, pull
    strands off bends, and cancel inverse crossing and twist pairs, until no
    such step applies."""
    g = PortGraph.from_diagram(d)
    limit = 50 * (len(d.nodes) + 1)

    def simplifying(x: PortGraph) -> Iterator[Move]:
        yield from _r2(x)
        yield from _twist_cancel(x)
        yield from _slide_back(x, ('box', 'twist', 'cap'))
        yield from _mirrored(lambda y: _slide_back(y, ('cup',)))(x)
    for _ in range(limit):
        step = next(simplifying(g), None)
        if step is None:
            break
        name, pos, g = step
        if witness is not None:
            witness.append(f'{name} {pos}')
    return g.to_diagram()


# ---------------------------------------------------------------- search

@dataclass
class SearchResult:
    found: bool
    witness: list[str]
    expanded: int


def move_search(d1: Diagram, d2: Diagram, ms: MoveSet, budget: int = 10_000,
                framed: bool = False) -> SearchResult:
    """Bidirectional breadth-first search over move applications."""
    g1, g2 = PortGraph.from_diagram(d1), PortGraph.from_diagram(d2)
    k1, k2 = state_key(g1), state_key(g2)
    if k1 == k2:
        return SearchResult(True, [], 0)
    parents = [{k1: None}, {k2: None}]
    queues = [deque([(k1, g1)]), deque([(k2, g2)])]
    expanded = [0, 0]
    while any(queues):
        side = 0 if (queues[0] and (not queues[1] or len(queues[0]) <= len(queues[1]))) else 1
        if expanded[side] >= budget:
            side = 1 - side
            if expanded[side] >= budget or not queues[side]:
                break
        key, g = queues[side].popleft()
        expanded[side] += 1
        for name, pos, h in moves_of(g, ms, framed):
            hk = state_key(h)
            if hk in parents[side]:
                continue
            parents[side][hk] = (key, f'{name} {pos}')
            if hk in parents[1 - side]:
                return SearchResult(True, _path(parents, hk, side), sum(expanded))
            queues[side].append((hk, h))
    return SearchResult(False, [], sum(expanded))


def _path(parents, meet, side) -> list[str]:
    def trail(p, k):
        out = []
        while p[k] is not None:
            k, step = p[k]
            out.append(step)
        return out
    fwd = trail(parents[0], meet)[::-1]
    back = trail(parents[1], meet)
    return fwd + [f'{s} (reversed)' for s in back]
