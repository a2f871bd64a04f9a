"""A mutable port graph for local rewriting of diagrams.

Source ends are frame inputs ``(-1, i)`` and node outputs ``(n, j)``;
destination ends are frame outputs ``(-1, j)`` and node inputs ``(n, i)``.
Floating components lose their placement on the way in and receive a
default one on the way out, so results are meant for placement-free
comparison (the rewrite and 3D regimes).
"""
from __future__ import annotations

from .diagram import Diagram, Edge, End, Node, mirror_node
from .signature import WireLabel


class PortGraph:
    def __init__(self, inputs=(), outputs=()):
        self.inputs: tuple[WireLabel, ...] = tuple(inputs)
        self.outputs: tuple[WireLabel, ...] = tuple(outputs)
        self.nodes: dict[int, Node] = {}
        self.fwd: dict[End, End] = {}
        self.bwd: dict[End, End] = {}
        self.label: dict[End, WireLabel] = {}
        self.next_id = 0

    # construction
    @classmethod
    def from_diagram(cls, d: Diagram) -> PortGraph:
        g = cls(d.inputs, d.outputs)
        for i, n in enumerate(d.nodes):
            g.nodes[i] = n
        g.next_id = len(d.nodes)
        for e in d.edges:
            g.link(e.src, e.dst, e.label)
        return g

    def copy(self) -> PortGraph:
        g = PortGraph(self.inputs, self.outputs)
        g.nodes = dict(self.nodes)
        g.fwd, g.bwd, g.label = dict(self.fwd), dict(self.bwd), dict(self.label)
        g.next_id = self.next_id
        return g

    def add(self, node: Node) -> int:
        nid = self.next_id
        self.next_id += 1
        self.nodes[nid] = node
        return nid

    def link(self, src: End, dst: End, label: WireLabel) -> None:
        self.fwd[src] = dst
        self.bwd[dst] = src
        self.label[src] = label

    def unlink_src(self, src: End) -> tuple[End, WireLabel]:
        dst = self.fwd.pop(src)
        del self.bwd[dst]
        return dst, self.label.pop(src)

    def remove(self, nid: int) -> tuple[list[End], list[End]]:
        """Delete a node; returns the sources that fed its inputs and the
        destinations its outputs fed (None where the wire was internal to
        the node, i.e. ran from one of its outputs to one of its inputs)."""
        n = self.nodes.pop(nid)
        feeders: list = []
        for i in range(len(n.ins)):
            src = self.bwd.get((nid, i))
            if src is not None:
                self.unlink_src(src)
            feeders.append(None if src is None or src[0] == nid else src)
        fed: list = []
        for j in range(len(n.outs)):
            if (nid, j) in self.fwd:
                dst, _ = self.unlink_src((nid, j))
                fed.append(dst)
            else:
                fed.append(None)
        return feeders, fed

    # queries
    def src(self, nid: int, port: int) -> End:
        return self.bwd[(nid, port)]

    def dst(self, nid: int, port: int) -> End:
        return self.fwd[(nid, port)]

    def in_label(self, dst: End) -> WireLabel:
        return self.label[self.bwd[dst]]

    # conversion
    def to_diagram(self) -> Diagram:
        order = sorted(self.nodes)
        nmap = {old: new for new, old in enumerate(order)}

        def ren(end):
            return end if end[0] == -1 else (nmap[end[0]], end[1])
        srcs = sorted(self.fwd, key=lambda s: (s[0] != -1, nmap.get(s[0], -1), s[1]))
        edges = tuple(Edge(ren(s), ren(self.fwd[s]), self.label[s]) for s in srcs)
        nodes = tuple(self.nodes[i] for i in order)
        return Diagram(self.inputs, self.outputs, nodes, edges,
                       _default_placement(len(nodes), edges))

    def mirror(self) -> PortGraph:
        g = PortGraph(self.outputs, self.inputs)
        g.nodes = {i: mirror_node(n) for i, n in self.nodes.items()}
        for s, t in self.fwd.items():
            g.link(t, s, self.label[s])
        g.next_id = self.next_id
        return g


def _default_placement(n_nodes: int, edges) -> tuple:
    parent = list(range(n_nodes + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    first_edge: dict[int, int] = {}
    for i, e in enumerate(edges):
        a = find(n_nodes if e.src[0] == -1 else e.src[0])
        b = find(n_nodes if e.dst[0] == -1 else e.dst[0])
        if a != b:
            parent[a] = b
    for i, e in enumerate(edges):
        r = find(n_nodes if e.src[0] == -1 else e.src[0])
        first_edge.setdefault(r, i)
    frame = find(n_nodes)
    out, seen = [], set()
    for v in range(n_nodes):
        r = find(v)
        if r == frame or r in seen:
            continue
        seen.add(r)
        if r in first_edge:
            out.append((('E', first_edge[r], 'R'), ('L', 0)))
        else:
            out.append((('N', v), ('L', 0)))
    return tuple(out)
