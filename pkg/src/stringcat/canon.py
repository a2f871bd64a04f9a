"""Canonical codes and anchored isomorphism for diagrams.

Two codes are computed:

* the *connection* code sees only which ports are wired together, after the
  pass-through nodes of the regime (bends, symmetric crossings) have been
  dissolved into plain wires;
* the *planar* code additionally records, through the combinatorial map, in
  which face every floating component lies and which of its own faces is
  outermost.

Every node has a fixed cyclic port order, so the rotation system of the
frame-connected part is determined by the port graph alone; only floating
components carry extra embedding data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Callable

from .diagram import Diagram, Node

IN, OUT = 0, 1
Endpoint = tuple[int, int, int]          # (node or -1 for the frame, IN/OUT, port)


def partner_port(n: Node, io: int, idx: int) -> tuple[int, int]:
    """The port a wire leaves by after entering a pass-through node."""
    if n.kind == 'cup':
        return OUT, 1 - idx
    if n.kind == 'cap':
        return IN, 1 - idx
    if n.kind == 'cross':
        return (OUT, 1 - idx) if io == IN else (IN, 1 - idx)
    if n.kind == 'twist':
        return 1 - io, 0
    raise ValueError(n.kind)


def base_port(n: Node, io: int, idx: int) -> tuple[int, int]:
    """Port coordinates of an upright box: a box turned by an odd number of
    half-turns has its inputs and outputs exchanged and reversed."""
    if n.kind == 'box' and n.rot % 2:
        return (OUT, len(n.ins) - 1 - idx) if io == IN else (IN, len(n.outs) - 1 - idx)
    return io, idx


def node_label(n: Node) -> tuple:
    if n.kind == 'box':
        return ('box', n.gen, int(n.mirrored))
    if n.kind == 'dot':
        return ('dot', n.gen, len(n.ins), len(n.outs))
    if n.kind in ('cross', 'twist'):
        return (n.kind, n.sign)
    return (n.kind, n.gen)


def base_ports(n: Node) -> list[tuple[int, int]]:
    """Ports in upright order: inputs bottom-to-top, then outputs."""
    if n.kind == 'box' and n.rot % 2:
        return [(IN, i) for i in range(len(n.outs))] + [(OUT, j) for j in range(len(n.ins))]
    return [(IN, i) for i in range(len(n.ins))] + [(OUT, j) for j in range(len(n.outs))]


@dataclass
class WireGraph:
    """Real nodes joined by wires; pass-through nodes have been dissolved."""
    n_in: int
    n_out: int
    nodes: list[int]                              # original node ids of real nodes
    labels: dict[int, tuple]
    ports: dict[int, list[tuple[int, int]]]       # upright port order per real node
    conn: dict[Endpoint, Endpoint]
    loops: list[list[int]] = field(default_factory=list)   # edge ids of closed loops
    unordered: dict[int, list[list[tuple[int, int]]]] = field(default_factory=dict)


def wire_graph(d: Diagram, dissolve: Callable[[Node], bool],
               commutative: bool = False) -> WireGraph:
    src_of = {e.src: i for i, e in enumerate(d.edges)}
    dst_of = {e.dst: i for i, e in enumerate(d.edges)}
    real = [i for i, n in enumerate(d.nodes) if not dissolve(n)]
    realset = set(real)
    seen: set[int] = set()

    def step(nid: int, io: int, idx: int):
        """Follow the edge at a port; return (edge, far node, far io, far port)."""
        is_src = (io == IN) if nid == -1 else (io == OUT)
        eid = (src_of if is_src else dst_of)[(nid, idx)]
        e = d.edges[eid]
        far = e.dst if is_src else e.src
        if far[0] == -1:
            far_io = OUT if is_src else IN
        else:
            far_io = IN if is_src else OUT
        return eid, far[0], far_io, far[1]

    def walk(nid: int, io: int, idx: int) -> Endpoint:
        # leave a port along its edge until a real port is reached
        while True:
            eid, fn, fio, fp = step(nid, io, idx)
            seen.add(eid)
            if fn == -1:
                return (-1, fio, fp)
            if fn in realset:
                return (fn,) + base_port(d.nodes[fn], fio, fp)
            nid, (io, idx) = fn, partner_port(d.nodes[fn], fio, fp)

    conn: dict[Endpoint, Endpoint] = {}
    starts: list[tuple[Endpoint, tuple[int, int, int]]] = []
    for i in range(len(d.inputs)):
        starts.append(((-1, IN, i), (-1, IN, i)))
    for j in range(len(d.outputs)):
        starts.append(((-1, OUT, j), (-1, OUT, j)))
    for nid in real:
        n = d.nodes[nid]
        for i in range(len(n.ins)):
            starts.append(((nid,) + base_port(n, IN, i), (nid, IN, i)))
        for j in range(len(n.outs)):
            starts.append(((nid,) + base_port(n, OUT, j), (nid, OUT, j)))
    for key, (nid, io, idx) in starts:
        if key not in conn:
            other = walk(nid, io, idx)
            conn[key] = other
            conn[other] = key

    loops = []
    for eid in range(len(d.edges)):
        if eid in seen:
            continue
        loop = []
        e = d.edges[eid]
        nid, (io, idx) = e.dst[0], partner_port(d.nodes[e.dst[0]], IN, e.dst[1])
        seen.add(eid)
        loop.append(eid)
        while True:
            nxt, fn, fio, fp = step(nid, io, idx)
            if nxt in seen:
                break
            seen.add(nxt)
            loop.append(nxt)
            nid, (io, idx) = fn, partner_port(d.nodes[fn], fio, fp)
        loops.append(loop)

    labels = {nid: node_label(d.nodes[nid]) for nid in real}
    ports = {nid: base_ports(d.nodes[nid]) for nid in real}
    unordered = {}
    if commutative:
        for nid in real:
            n = d.nodes[nid]
            if n.kind == 'dot' and n.gen in ('copy', 'erase'):
                unordered[nid] = [[(OUT, j) for j in range(len(n.outs))]]
            elif n.kind == 'dot':
                unordered[nid] = [[(IN, i) for i in range(len(n.ins))]]
    return WireGraph(len(d.inputs), len(d.outputs), real, labels, ports, conn, loops,
                     unordered)


def loop_atom(d: Diagram, loop: list[int]) -> str:
    return d.edges[loop[0]].label.obj


# ---------------------------------------------------------------- BFS codes

def _bfs(g: WireGraph, root: int | None):
    """Deterministic traversal from the frame (root None) or a node.
    Returns (code, node order)."""
    ids: dict[int, int] = {}
    order: list[int] = []

    def enc(p: Endpoint):
        if p[0] == -1:
            return (0, p[1], p[2])
        if p[0] not in ids:
            ids[p[0]] = len(order)
            order.append(p[0])
        return (1, ids[p[0]], p[1], p[2])

    head = ()
    if root is None:
        head = tuple(enc(g.conn[(-1, IN, i)]) for i in range(g.n_in)) + \
            tuple(enc(g.conn[(-1, OUT, j)]) for j in range(g.n_out))
    else:
        enc((root, 0, 0))
    body = []
    k = 0
    while k < len(order):
        nid = order[k]
        body.append((g.labels[nid], tuple(enc(g.conn[(nid,) + p]) for p in g.ports[nid])))
        k += 1
    return (head, tuple(body)), order


def _components(g: WireGraph, nodes) -> list[list[int]]:
    nodes = list(nodes)
    left = set(nodes)
    comps = []
    for start in nodes:
        if start not in left:
            continue
        comp, stack = [], [start]
        left.discard(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for p in g.ports[v]:
                w = g.conn[(v,) + p][0]
                if w != -1 and w in left:
                    left.discard(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def connection_code(d: Diagram, dissolve: Callable[[Node], bool],
                    loop_key: Callable[[Diagram, list[int]], object] = loop_atom):
    """Canonical code up to anchored isomorphism of the wire graph."""
    g = wire_graph(d, dissolve)
    anchored, order = _bfs(g, None)
    rest = set(g.nodes) - set(order)
    floating = sorted(min(_bfs(g, r)[0] for r in comp) for comp in _components(g, rest))
    loops = sorted(loop_key(d, lp) for lp in g.loops)
    return ((len(d.inputs), len(d.outputs)), anchored, tuple(floating), tuple(loops))


# ---------------------------------------------------------------- planar

class _Map:
    """The combinatorial map of a diagram, bends included."""

    def __init__(self, d: Diagram):
        self.d = d
        sigma: dict = {}
        n, m = len(d.inputs), len(d.outputs)
        cyc = [('B',)] + [(-1, OUT, j) for j in range(m)] + [('T',)] + \
            [(-1, IN, i) for i in reversed(range(n))]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            sigma[a] = b
        for nid, node in enumerate(d.nodes):
            cyc = [(nid, IN, i) for i in range(len(node.ins))] + \
                [(nid, OUT, j) for j in reversed(range(len(node.outs)))]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                sigma[a] = b
        alpha = {('B',): ('B',), ('T',): ('T',)}
        for e in d.edges:
            s = (-1, IN, e.src[1]) if e.src[0] == -1 else (e.src[0], OUT, e.src[1])
            t = (-1, OUT, e.dst[1]) if e.dst[0] == -1 else (e.dst[0], IN, e.dst[1])
            alpha[s], alpha[t] = t, s
        self.sigma, self.alpha = sigma, alpha
        face: dict = {}
        fid = count()
        for dart in sigma:
            if dart in face:
                continue
            f = next(fid)
            cur = dart
            while cur not in face:
                face[cur] = f
                cur = sigma[alpha[cur]]
        self.face = face

    def corner(self, dart) -> int:
        return self.face[self.sigma[dart]]

    def ref_face(self, r):
        d = self.d
        if r[0] == 'L':
            i = r[1]
            return self.corner((-1, IN, i) if i < len(d.inputs) else ('T',))
        if r[0] == 'R':
            j = r[1]
            return self.corner(('B',) if j == 0 else (-1, OUT, j - 1))
        if r[0] == 'N':
            return ('N', r[1])
        e = d.edges[r[1]]
        dart = (-1, OUT, e.dst[1]) if e.dst[0] == -1 else (e.dst[0], IN, e.dst[1])
        return self.corner(dart) if r[2] == 'L' else self.face[dart]


def _node_components(d: Diagram) -> tuple[list[int], int]:
    """Component index per node, and the frame's component index."""
    n = len(d.nodes)
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for e in d.edges:
        a = find(n if e.src[0] == -1 else e.src[0])
        b = find(n if e.dst[0] == -1 else e.dst[0])
        if a != b:
            parent[a] = b
    roots = [find(i) for i in range(n + 1)]
    return roots[:n], roots[n]


def planar_code(d: Diagram, loop_orientation: bool = True, free: bool = False):
    """Canonical code of the anchored combinatorial map, with bends smoothed.

    With `free`, floating components are not placed: each is coded on its
    own, minimised over the choice of its outer face (the 3D regimes, where
    such components can be moved anywhere)."""
    return _PlanarCoder(d, loop_orientation, free).result()


class _PlanarCoder:
    def __init__(self, d: Diagram, loop_orientation: bool, free: bool):
        self.d, self.loop_orientation, self.free = d, loop_orientation, free
        self.g = g = wire_graph(d, lambda n: n.kind in ('cup', 'cap'))
        self.mp = mp = _Map(d)
        self.comp_of, self.frame_comp = _node_components(d)
        comp_of, frame_comp = self.comp_of, self.frame_comp

        def comp_of_ref(r):
            if r[0] == 'N':
                return comp_of[r[1]]
            e = d.edges[r[1]]
            end = e.src if e.src[0] != -1 else e.dst
            return frame_comp if end[0] == -1 else comp_of[end[0]]

        self.outer_face: dict = {}
        self.outer_ref: dict = {}
        self.children: dict = {}
        parent_face: dict = {}
        if not free:
            for o, p in d.placement:
                c = comp_of_ref(o)
                self.outer_face[c] = mp.ref_face(o)
                parent_face[c] = mp.ref_face(p)
                self.outer_ref[c] = o
            owner_outer = {f: c for c, f in self.outer_face.items()}

            def resolve(f, guard=0):
                while f in owner_outer and guard < 10_000:
                    f = parent_face[owner_outer[f]]
                    guard += 1
                return f
            for c in self.outer_face:
                self.children.setdefault(resolve(parent_face[c]), []).append(c)

        self.comp_nodes: dict[int, list[int]] = {}
        for nid in g.nodes:
            self.comp_nodes.setdefault(comp_of[nid], []).append(nid)
        self.loop_of_comp = {}
        for lp in g.loops:
            e = d.edges[lp[0]]
            self.loop_of_comp[comp_of[e.src[0]]] = lp
        self.comp_faces: dict = {}
        for dart, f in mp.face.items():
            c = frame_comp if dart[0] in ('B', 'T', -1) else comp_of[dart[0]]
            self.comp_faces.setdefault(c, set()).add(f)
        self.memo: dict = {}

    def result(self):
        d = self.d
        head = (len(d.inputs), len(d.outputs))
        if not self.free:
            return head, self.code(self.frame_comp)
        floating = []
        for c in sorted(set(self.comp_of) - {self.frame_comp}):
            if c in self.loop_of_comp:
                lp = self.loop_of_comp[c]
                refs = [('E', lp[0], 'L'), ('E', lp[0], 'R')]
            elif c in self.comp_faces:
                refs = [('F', f) for f in sorted(self.comp_faces[c])]
            else:
                refs = [None]
            best = None
            for r in refs:
                self.memo.clear()
                if r is None:
                    pass
                elif r[0] == 'F':
                    self.outer_face[c] = r[1]
                else:
                    self.outer_face[c] = self.mp.ref_face(r)
                    self.outer_ref[c] = r
                code = self.code(c)
                best = code if best is None or code < best else best
            floating.append(best)
        self.memo.clear()
        return head, self.code(self.frame_comp), tuple(sorted(floating))

    def code(self, c):
        if c in self.memo:
            return self.memo[c]
        d = self.d
        if c in self.loop_of_comp:
            lp = self.loop_of_comp[c]
            o = self.outer_ref[c]
            inside = [f for f in self.comp_faces[c] if f != self.outer_face[c]]
            kids = tuple(sorted(self.code(k) for f in inside for k in self.children.get(f, [])))
            atom = d.edges[lp[0]].label.obj
            orient = 0
            if self.loop_orientation:
                par = d.edges[o[1]].label.parity
                orient = (1 if o[2] == 'R' else -1) * (1 if par % 2 == 0 else -1)
            result = (1, atom, orient, kids)
        else:
            roots = [None] if c == self.frame_comp else self.comp_nodes.get(c, [])
            result = min(self._rooted(c, r) for r in roots)
        self.memo[c] = result
        return result

    def _rooted(self, c, root):
        d, g, mp = self.d, self.g, self.mp
        bfs, order = _bfs(g, root)
        faces: dict = {}
        darts = []
        if root is None:
            n, m = len(d.inputs), len(d.outputs)
            darts = [('B',)] + [(-1, OUT, j) for j in range(m)] + [('T',)] + \
                [(-1, IN, i) for i in reversed(range(n))]
        for nid in order:
            node = d.nodes[nid]
            for io, idx in base_ports(node):
                darts.append((nid, io, idx) if not (node.kind == 'box' and node.rot % 2)
                             else (nid,) + _current_port(node, io, idx))
        for dart in darts:
            f = mp.corner(dart)
            if f not in faces:
                faces[f] = len(faces)
        face_codes = []
        for f, _ in sorted(faces.items(), key=lambda kv: kv[1]):
            kids = tuple(sorted(self.code(k) for k in self.children.get(f, [])))
            face_codes.append((int(self.outer_face.get(c) == f), kids))
        if not order and c != self.frame_comp:
            # a node without ports
            nid = self.comp_nodes[c][0]
            bfs = ((), ((g.labels[nid], ()),))
        return (0, bfs, tuple(face_codes))


def _current_port(n: Node, io: int, idx: int) -> tuple[int, int]:
    # inverse of base_port for boxes turned an odd number of times
    if io == OUT:
        return IN, len(n.ins) - 1 - idx
    return OUT, len(n.outs) - 1 - idx


# ---------------------------------------------------------------- matcher

def _signature(g: WireGraph):
    from collections import Counter
    return Counter(g.labels.values())


def isomorphic(g1: WireGraph, g2: WireGraph) -> bool:
    """Anchored isomorphism of wire graphs where some nodes have unordered
    port groups.  Backtracking with forced propagation."""
    if (g1.n_in, g1.n_out) != (g2.n_in, g2.n_out) or _signature(g1) != _signature(g2):
        return False

    def group_of(g, nid, port):
        for gi, grp in enumerate(g.unordered.get(nid, [])):
            if port in grp:
                return gi
        return None

    def solve(nmap, pmap, pending):
        nmap, pmap, pending = dict(nmap), dict(pmap), list(pending)
        used = set(nmap.values())
        while pending:
            e1, e2 = pending.pop()
            p1, p2 = g1.conn[e1], g2.conn[e2]
            if p1[0] == -1 or p2[0] == -1:
                if p1 != p2:
                    return False
                continue
            u1, u2 = p1[0], p2[0]
            if u1 in nmap:
                if nmap[u1] != u2:
                    return False
            else:
                if u2 in used or g1.labels[u1] != g2.labels[u2]:
                    return False
                nmap[u1] = u2
                used.add(u2)
                for port in g1.ports[u1]:
                    if group_of(g1, u1, port) is None:
                        pending.append(((u1,) + port, (u2,) + port))
            k1, k2 = p1, p2
            if k1 in pmap:
                if pmap[k1] != k2:
                    return False
                continue
            if group_of(g1, u1, p1[1:]) is None:
                if p1[1:] != p2[1:]:
                    return False
            elif group_of(g1, u1, p1[1:]) != group_of(g2, u2, p2[1:]) or k2 in pmap.values():
                return False
            pmap[k1] = k2
            pending.append((p1, p2))
        # branch on an unmatched port of an unordered group
        taken = set(pmap.values())
        for u1, u2 in nmap.items():
            for gi, grp in enumerate(g1.unordered.get(u1, [])):
                for port in grp:
                    k1 = (u1,) + port
                    if k1 in pmap:
                        continue
                    for cand in g2.unordered[u2][gi]:
                        k2 = (u2,) + cand
                        if k2 in taken:
                            continue
                        if solve(nmap, {**pmap, k1: k2}, [(k1, k2)]):
                            return True
                    return False
        # branch on a floating node
        rest1 = [u for u in g1.nodes if u not in nmap]
        if not rest1:
            return True
        u1 = rest1[0]
        for u2 in g2.nodes:
            if u2 in used or g2.labels[u2] != g1.labels[u1]:
                continue
            nm = {**nmap, u1: u2}
            pend = [((u1,) + p, (u2,) + p) for p in g1.ports[u1] if group_of(g1, u1, p) is None]
            if not pend and not g1.ports[u1]:
                if solve(nm, pmap, []):
                    return True
                continue
            if not pend:
                # only unordered ports: fix one arbitrarily-ordered port pair
                grp = g1.unordered[u1][0]
                for cand in g2.unordered[u2][0]:
                    if solve(nm, {**pmap, (u1,) + grp[0]: (u2,) + cand},
                             [((u1,) + grp[0], (u2,) + cand)]):
                        return True
                continue
            if solve(nm, pmap, pend):
                return True
        return False

    start = [((-1, IN, i), (-1, IN, i)) for i in range(g1.n_in)] + \
        [((-1, OUT, j), (-1, OUT, j)) for j in range(g1.n_out)]
    return solve({}, {}, start)
