"""The diagram IR: open port graphs with boxes, crossings, bends, twists and
dots, plus the combinators that build them.

Conventions
-----------
* A node has input ports on its left and output ports on its right, both
  numbered bottom-to-top.  Going clockwise round a node meets the inputs
  0..n-1 and then the outputs m-1..0.
* An edge runs from a source end (a node output, or a frame input) to a
  destination end (a node input, or a frame output).  Ends are pairs
  ``(node, port)``; node ``-1`` is the frame.
* Crossing ports: strand A joins in0 to out1, strand B joins in1 to out0.
  Sign +1 means the strand entering at the top (B) passes over, -1 that it
  passes under, 0 is a symmetry.
* Cups have two outputs and caps two inputs.  Bends created by a trace are
  tagged ``gen='tr'``.
* Floating components (not connected to the frame) record where they sit in
  the plane: ``placement`` holds ``(outer, parent)`` pairs of references.  A
  reference is a frame gap ``('L', i)`` / ``('R', j)`` (gap i lies below the
  i-th boundary wire), an edge side ``('E', edge, 'L'|'R')`` (left or right of
  the edge's direction of travel), or ``('N', node)`` for a portless node.
  ``outer`` names the component's own outer face, ``parent`` the face of the
  enclosing diagram it lies in.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import BoundaryMismatch, RegimeError
from .signature import WireLabel

End = tuple[int, int]
Ref = tuple


@dataclass(frozen=True)
class Node:
    kind: str                      # box | cross | cup | cap | twist | dot
    ins: tuple[WireLabel, ...]
    outs: tuple[WireLabel, ...]
    gen: str = ''                  # box generator, dot kind, or 'tr' on trace bends
    mirrored: bool = False
    rot: int = 0
    sign: int = 0

    def __str__(self) -> str:
        extra = {'box': f' {self.gen} mirrored={int(self.mirrored)} rot={self.rot}',
                 'cross': f' sign={self.sign:+d}' if self.sign else ' sign=0',
                 'twist': f' sign={self.sign:+d}', 'dot': f' {self.gen}',
                 'cup': f' {self.gen}' if self.gen else '',
                 'cap': f' {self.gen}' if self.gen else ''}[self.kind]
        ins = ','.join(map(str, self.ins)) or '-'
        outs = ','.join(map(str, self.outs)) or '-'
        return f'{self.kind}{extra} in={ins} out={outs}'


@dataclass(frozen=True)
class Edge:
    src: End
    dst: End
    label: WireLabel


@dataclass(frozen=True)
class Diagram:
    inputs: tuple[WireLabel, ...]
    outputs: tuple[WireLabel, ...]
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()
    placement: tuple[tuple[Ref, Ref], ...] = field(default=())

    @property
    def dom(self):
        return self.inputs

    @property
    def cod(self):
        return self.outputs

    def edge_at_src(self) -> dict[End, int]:
        return {e.src: i for i, e in enumerate(self.edges)}

    def edge_at_dst(self) -> dict[End, int]:
        return {e.dst: i for i, e in enumerate(self.edges)}

    def count(self, kind: str) -> int:
        return sum(n.kind == kind for n in self.nodes)

    def __str__(self) -> str:
        return dump(self)


# ---------------------------------------------------------------- builders

def id_d(labels: Sequence[WireLabel]) -> Diagram:
    labels = tuple(labels)
    return Diagram(labels, labels, (),
                   tuple(Edge((-1, i), (-1, i), w) for i, w in enumerate(labels)))


def node_d(node: Node) -> Diagram:
    """A single node with its ports wired to the frame."""
    edges = [Edge((-1, i), (0, i), w) for i, w in enumerate(node.ins)]
    edges += [Edge((0, j), (-1, j), w) for j, w in enumerate(node.outs)]
    placement = (('N', 0), ('L', 0)) if not node.ins and not node.outs else None
    return Diagram(node.ins, node.outs, (node,), tuple(edges),
                   (placement,) if placement else ())


def box_d(gen: str, ins, outs, mirrored: bool = False) -> Diagram:
    return node_d(Node('box', tuple(ins), tuple(outs), gen, mirrored))


def cup_d(lower: WireLabel, upper: WireLabel, gen: str = '') -> Diagram:
    return node_d(Node('cup', (), (lower, upper), gen))


def cap_d(lower: WireLabel, upper: WireLabel, gen: str = '') -> Diagram:
    return node_d(Node('cap', (lower, upper), (), gen))


def crossing_d(bottom: WireLabel, top: WireLabel, sign: int) -> Diagram:
    """The crossing taking wires (bottom, top) to (top, bottom)."""
    return node_d(Node('cross', (bottom, top), (top, bottom), sign=sign))


def twist_d(w: WireLabel, sign: int) -> Diagram:
    return node_d(Node('twist', (w,), (w,), sign=sign))


def dot_d(kind: str, w: WireLabel) -> Diagram:
    ins, outs = {'copy': ((w,), (w, w)), 'erase': ((w,), ()),
                 'merge': ((w, w), (w,)), 'init': ((), (w,))}[kind]
    return node_d(Node('dot', ins, outs, kind))


def perm_d(labels: Sequence[WireLabel], target: Sequence[int], sign: int) -> Diagram:
    """Crossing network sending input wire i to output position target[i].

    Built by bubble sort, one adjacent crossing at a time; every crossing gets
    the same sign."""
    labels = list(labels)
    pos = list(target)
    out = id_d(labels)
    n = len(labels)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if pos[i] > pos[i + 1]:
                layer = tensor_all([id_d(labels[:i]), crossing_d(labels[i], labels[i + 1], sign),
                                    id_d(labels[i + 2:])])
                out = compose_d(out, layer)
                labels[i], labels[i + 1] = labels[i + 1], labels[i]
                pos[i], pos[i + 1] = pos[i + 1], pos[i]
                changed = True
    return out


def tensor_all(ds: Iterable[Diagram]) -> Diagram:
    out = id_d(())
    for d in ds:
        out = tensor_d(out, d)
    return out


def compose_all(ds: Iterable[Diagram]) -> Diagram:
    """compose_all([f, g, h]) runs f, then g, then h."""
    ds = list(ds)
    out = ds[0]
    for d in ds[1:]:
        out = compose_d(out, d)
    return out


# ---------------------------------------------------------------- references

def _shift_ref(r: Ref, emap, nmap, frame) -> Ref:
    if r[0] == 'E':
        return ('E', emap[r[1]], r[2])
    if r[0] == 'N':
        return ('N', nmap[r[1]])
    return frame(r)


def _components(n_nodes: int, edges: Sequence[Edge]):
    """Union-find over nodes; returns (find, frame-touching set of roots)."""
    parent = list(range(n_nodes + 1))          # index n_nodes is the frame

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def node_of(end):
        return n_nodes if end[0] == -1 else end[0]
    for e in edges:
        a, b = find(node_of(e.src)), find(node_of(e.dst))
        if a != b:
            parent[a] = b
    return find, node_of


def _new_floating(d_nodes, edges, candidate_edges: dict[int, int], n_nodes: int):
    """Components (by root) containing one of `candidate_edges` (edge ->
    index along the seam) that no longer touch the frame.  Returns a list of
    sorted seam-index lists, one per new floating component, together with
    the edge ids at those indices."""
    find, node_of = _components(n_nodes, edges)
    frame_root = find(n_nodes)
    groups: dict[int, list[int]] = {}
    for eid, idx in candidate_edges.items():
        root = find(node_of(edges[eid].src))
        if root == frame_root:
            continue
        groups.setdefault(root, []).append(idx)
    return [sorted(v) for _, v in sorted(groups.items(), key=lambda kv: min(kv[1]))]


# ---------------------------------------------------------------- combinators

def _labels_match(a: Sequence[WireLabel], b: Sequence[WireLabel]) -> bool:
    return tuple(a) == tuple(b)


def compose_d(f: Diagram, g: Diagram) -> Diagram:
    """Run f, then g (g drawn to the right of f)."""
    if not _labels_match(f.outputs, g.inputs):
        raise BoundaryMismatch(f'cannot compose: outputs {list(map(str, f.outputs))} '
                               f'vs inputs {list(map(str, g.inputs))}')
    k, nf = len(f.outputs), len(f.nodes)
    gnode = lambda end: (-1, end[1]) if end[0] == -1 else (end[0] + nf, end[1])
    f_seam = {e.dst[1]: i for i, e in enumerate(f.edges) if e.dst[0] == -1}
    g_seam = {e.src[1]: i for i, e in enumerate(g.edges) if e.src[0] == -1}
    edges: list[Edge] = []
    fmap: dict[int, int] = {}
    gmap: dict[int, int] = {}
    for i, e in enumerate(f.edges):
        if e.dst[0] != -1:
            fmap[i] = len(edges)
            edges.append(e)
    seam_ids = []
    for j in range(k):
        fe, ge = f.edges[f_seam[j]], g.edges[g_seam[j]]
        fmap[f_seam[j]] = gmap[g_seam[j]] = len(edges)
        seam_ids.append(len(edges))
        edges.append(Edge(fe.src, gnode(ge.dst), fe.label))
    for i, e in enumerate(g.edges):
        if e.src[0] != -1:
            gmap[i] = len(edges)
            edges.append(Edge(gnode(e.src), gnode(e.dst), e.label))

    n_in = len(f.inputs)

    def seam_gap(j: int) -> Ref:
        if j == 0:
            return ('L', 0)
        if j == k:
            return ('L', n_in)
        return ('E', seam_ids[j], 'R')

    def f_frame(r):
        return r if r[0] == 'L' else seam_gap(r[1])

    def g_frame(r):
        return r if r[0] == 'R' else seam_gap(r[1])

    fn = {i: i for i in range(nf)}
    gn = {i: i + nf for i in range(len(g.nodes))}
    placement = [(_shift_ref(o, fmap, fn, f_frame), _shift_ref(p, fmap, fn, f_frame))
                 for o, p in f.placement]
    placement += [(_shift_ref(o, gmap, gn, g_frame), _shift_ref(p, gmap, gn, g_frame))
                  for o, p in g.placement]
    nodes = f.nodes + g.nodes
    for idxs in _new_floating(nodes, edges, {seam_ids[j]: j for j in range(k)}, len(nodes)):
        lo = idxs[0]
        parent = ('E', seam_ids[lo - 1], 'L') if lo > 0 else ('L', 0)
        placement.append((('E', seam_ids[lo], 'R'), parent))
    return Diagram(f.inputs, g.outputs, nodes, tuple(edges), tuple(placement))


def tensor_d(f: Diagram, g: Diagram) -> Diagram:
    """f drawn below g."""
    nf, ni, no, ne = len(f.nodes), len(f.inputs), len(f.outputs), len(f.edges)

    def shift_end(end, frame_shift):
        return (-1, end[1] + frame_shift) if end[0] == -1 else (end[0] + nf, end[1])
    edges = f.edges + tuple(Edge(shift_end(e.src, ni), shift_end(e.dst, no), e.label)
                            for e in g.edges)
    emap = {i: i + ne for i in range(len(g.edges))}
    nmap = {i: i + nf for i in range(len(g.nodes))}

    def frame(r):
        return ('L', r[1] + ni) if r[0] == 'L' else ('R', r[1] + no)
    placement = f.placement + tuple((_shift_ref(o, emap, nmap, frame),
                                     _shift_ref(p, emap, nmap, frame)) for o, p in g.placement)
    return Diagram(f.inputs + g.inputs, f.outputs + g.outputs, f.nodes + g.nodes, edges,
                   placement)


_MIRROR_DOT = {'copy': 'merge', 'merge': 'copy', 'erase': 'init', 'init': 'erase'}


def mirror_node(n: Node) -> Node:
    kind = {'cup': 'cap', 'cap': 'cup'}.get(n.kind, n.kind)
    return replace(n, kind=kind, ins=n.outs, outs=n.ins,
                   mirrored=(not n.mirrored) if n.kind == 'box' else n.mirrored,
                   rot=-n.rot, sign=-n.sign,
                   gen=_MIRROR_DOT.get(n.gen, n.gen) if n.kind == 'dot' else n.gen)


def mirror_d(d: Diagram) -> Diagram:
    """The mirror image (dagger): left and right swap."""
    nodes = [mirror_node(n) for n in d.nodes]
    edges = tuple(Edge(e.dst, e.src, e.label) for e in d.edges)

    def flip(r):
        if r[0] in ('L', 'R'):
            return ('R' if r[0] == 'L' else 'L', r[1])
        return r
    placement = tuple((flip(o), flip(p)) for o, p in d.placement)
    return Diagram(d.outputs, d.inputs, tuple(nodes), edges, placement)


def rotate_d(d: Diagram, step: int = 1) -> Diagram:
    """Rotate by 180 degrees: the diagram of the adjoint mate.  Every wire
    reverses direction and so gains one unit of winding."""
    if any(n.kind == 'dot' for n in d.nodes):
        raise RegimeError('diagrams with copy/merge dots cannot be rotated')
    nodes = []
    for n in d.nodes:
        kind = {'cup': 'cap', 'cap': 'cup'}.get(n.kind, n.kind)
        nodes.append(replace(n, kind=kind,
                             ins=tuple(w.shift(step) for w in reversed(n.outs)),
                             outs=tuple(w.shift(step) for w in reversed(n.ins)),
                             rot=n.rot + step if n.kind == 'box' else n.rot))
    ni, no = len(d.inputs), len(d.outputs)
    edges = []
    for e in d.edges:
        # old source (an output port) becomes an input port, and vice versa
        if e.dst[0] == -1:
            src = (-1, no - 1 - e.dst[1])
        else:
            src = (e.dst[0], len(d.nodes[e.dst[0]].ins) - 1 - e.dst[1])
        if e.src[0] == -1:
            dst = (-1, ni - 1 - e.src[1])
        else:
            dst = (e.src[0], len(d.nodes[e.src[0]].outs) - 1 - e.src[1])
        edges.append(Edge(src, dst, e.label.shift(step)))

    def turn(r):
        if r[0] == 'L':
            return ('R', ni - r[1])
        if r[0] == 'R':
            return ('L', no - r[1])
        if r[0] == 'E':
            return ('E', r[1], 'R' if r[2] == 'L' else 'L')
        return r
    placement = tuple((turn(o), turn(p)) for o, p in d.placement)
    return Diagram(tuple(w.shift(step) for w in reversed(d.outputs)),
                   tuple(w.shift(step) for w in reversed(d.inputs)),
                   tuple(nodes), tuple(edges), placement)


def close_trace(d: Diagram, k: int, side: str = 'right') -> Diagram:
    """Feed the top (right trace) or bottom (left trace) k outputs back into
    the matching inputs, through a loop drawn above or below the diagram."""
    ni, no = len(d.inputs), len(d.outputs)
    if k > ni or k > no:
        raise BoundaryMismatch(f'cannot trace {k} wires of a {ni} -> {no} diagram')
    right = side == 'right'
    xs_in = d.inputs[ni - k:] if right else d.inputs[:k]
    xs_out = d.outputs[no - k:] if right else d.outputs[:k]
    if tuple(xs_in) != tuple(xs_out):
        raise BoundaryMismatch(f'traced wires differ: {list(map(str, xs_in))} vs '
                               f'{list(map(str, xs_out))}')
    if k == 0:
        return d
    n, m = ni - k, no - k
    base = len(d.nodes)
    nodes = list(d.nodes)
    cups, caps = [], []
    for t, x in enumerate(xs_in):
        ret = x.shift(1)
        cups.append(len(nodes))
        nodes.append(Node('cup', (), (x, ret) if right else (ret, x), 'tr'))
        caps.append(len(nodes))
        nodes.append(Node('cap', (x, ret) if right else (ret, x), (), 'tr'))
    body_port = 0 if right else 1
    ret_port = 1 - body_port

    def src_map(end):
        if end[0] != -1:
            return end
        i = end[1]
        if right:
            return (cups[i - n], body_port) if i >= n else end
        return (cups[i], body_port) if i < k else (-1, i - k)

    def dst_map(end):
        if end[0] != -1:
            return end
        j = end[1]
        if right:
            return (caps[j - m], body_port) if j >= m else end
        return (caps[j], body_port) if j < k else (-1, j - k)
    edges = [Edge(src_map(e.src), dst_map(e.dst), e.label) for e in d.edges]
    rets = []
    for t, x in enumerate(xs_in):
        rets.append(len(edges))
        edges.append(Edge((cups[t], ret_port), (caps[t], ret_port), x.shift(1)))

    def frame(r):
        s, i = r
        lim = n if s == 'L' else m
        if right:
            if i <= lim:
                return r
            return ('E', rets[i - lim - 1], 'R')
        if i < k:
            return ('E', rets[i], 'L')
        return (s, i - k)
    ident = {i: i for i in range(len(d.edges))}
    nident = {i: i for i in range(base)}
    placement = [(_shift_ref(o, ident, nident, frame), _shift_ref(p, ident, nident, frame))
                 for o, p in d.placement]
    for ts in _new_floating(nodes, edges, {rets[t]: t for t in range(k)}, len(nodes)):
        if right:
            lo = ts[0]
            parent = ('E', rets[lo - 1], 'R') if lo > 0 else ('L', n)
            placement.append((('E', rets[lo], 'L'), parent))
        else:
            hi = ts[-1]
            parent = ('E', rets[hi + 1], 'L') if hi + 1 < k else ('L', 0)
            placement.append((('E', rets[hi], 'R'), parent))
    ins = d.inputs[:n] if right else d.inputs[k:]
    outs = d.outputs[:m] if right else d.outputs[k:]
    return Diagram(tuple(ins), tuple(outs), tuple(nodes), tuple(edges), tuple(placement))


def map_labels(d: Diagram, f) -> Diagram:
    """Apply `f` to every wire label (used to reduce windings mod 2)."""
    nodes = tuple(replace(n, ins=tuple(map(f, n.ins)), outs=tuple(map(f, n.outs)))
                  for n in d.nodes)
    edges = tuple(replace(e, label=f(e.label)) for e in d.edges)
    return Diagram(tuple(map(f, d.inputs)), tuple(map(f, d.outputs)), nodes, edges,
                   d.placement)


def mod2(w: WireLabel) -> WireLabel:
    return WireLabel(w.obj, w.parity % 2)


def remove_nodes(d: Diagram, doomed: set[int], splice: dict[int, list[tuple[int, int]]] | None
                 = None) -> Diagram:
    """Delete degree-2 pass-through nodes, joining the wires on either side.

    `splice[node]` lists (in_port, out_port) pairs to join; every port of a
    doomed node must be listed.  Placement references to deleted edges are
    moved to the surviving edge of the chain."""
    splice = splice or {}
    src_of = {}
    dst_of = {}
    for i, e in enumerate(d.edges):
        src_of[e.src] = i
        dst_of[e.dst] = i
    partner_in = {}
    for nid, pairs in splice.items():
        for a, b in pairs:
            partner_in[(nid, a)] = (nid, b)
    keep_nodes = [i for i in range(len(d.nodes)) if i not in doomed]
    nmap = {old: new for new, old in enumerate(keep_nodes)}

    def renode(end):
        return end if end[0] == -1 else (nmap[end[0]], end[1])
    edges: list[Edge] = []
    emap: dict[int, int] = {}
    seen = set()
    for i, e in enumerate(d.edges):
        if i in seen or (e.src[0] in doomed):
            continue
        chain = [i]
        cur = e
        while cur.dst[0] in doomed:
            nxt = src_of[partner_in[cur.dst]]
            chain.append(nxt)
            cur = d.edges[nxt]
        for c in chain:
            seen.add(c)
            emap[c] = len(edges)
        edges.append(Edge(renode(e.src), renode(cur.dst), e.label))
    placement = []
    for o, p in d.placement:
        placement.append((_shift_ref(o, emap, nmap, lambda r: r),
                          _shift_ref(p, emap, nmap, lambda r: r)))
    return Diagram(d.inputs, d.outputs, tuple(d.nodes[i] for i in keep_nodes),
                   tuple(edges), tuple(placement))


# ---------------------------------------------------------------- dump format

DUMP_HEADER = 'stringcat-diagram 1'


def _show_end(end: End, io: str) -> str:
    if end[0] == -1:
        return f'frame.{"in" if io == "out" else "out"}{end[1]}'
    return f'n{end[0]}.{io}{end[1]}'


def _show_ref(r: Ref) -> str:
    if r[0] == 'E':
        return f'e{r[1]}.{r[2]}'
    if r[0] == 'N':
        return f'n{r[1]}'
    return f'{r[0]}{r[1]}'


def dump(d: Diagram) -> str:
    """Plain-text serialization; see docs in the README."""
    lines = [DUMP_HEADER,
             'inputs ' + (' '.join(map(str, d.inputs)) or '-'),
             'outputs ' + (' '.join(map(str, d.outputs)) or '-')]
    for i, n in enumerate(d.nodes):
        lines.append(f'node n{i} {n}')
    for i, e in enumerate(d.edges):
        lines.append(f'edge e{i} {_show_end(e.src, "out")} -> {_show_end(e.dst, "in")} {e.label}')
    for o, p in d.placement:
        lines.append(f'float outer={_show_ref(o)} parent={_show_ref(p)}')
    return '\n'.join(lines) + '\n'


# ---------------------------------------------------------------- equality (see canon, braided)

def iso_equal(d1: Diagram, d2: Diagram) -> bool:
    """Anchored graph isomorphism, bends and symmetries dissolved."""
    from .equivalence import iso_equal as eq
    return eq(d1, d2)


def planar_equal(d1: Diagram, d2: Diagram) -> bool:
    """Equality of anchored rotation systems (planar isotopy)."""
    from .equivalence import planar_equal as eq
    return eq(d1, d2)


def invariants_of(d: Diagram):
    """Linking, framing, curvature and related invariants of a diagram."""
    from .braided import invariants_of as inv
    return inv(d)
