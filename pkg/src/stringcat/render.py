"""Layered layout of diagrams and deterministic SVG / TikZ emission.

Wires flow left to right; the frame inputs sit on the left edge and the
outputs on the right edge, both bottom-to-top in declared order.  Lengths are
abstract units: columns are COLUMN apart and every wire slot is one unit
high.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, Node

COLUMN = 2.0
NODE_WIDTH = 1.0
GAP = 0.18           # half-length of the under-strand gap, as a fraction of the strand


@dataclass(frozen=True)
class Shape:
    """One node as drawn.  `ins`/`outs` are port coordinates; `corner` names
    the marked corner of a box (ul, ur, lr, ll)."""
    index: int
    kind: str
    x: float
    y: float             # bottom of the node's slot
    height: float
    label: str
    ins: tuple[tuple[float, float], ...]
    outs: tuple[tuple[float, float], ...]
    corner: str = ''
    sign: int = 0


@dataclass(frozen=True)
class Route:
    """One edge as a smooth path through `points`."""
    index: int
    points: tuple[tuple[float, float], ...]
    label: str
    reversed: bool = False      # odd winding: the wire runs right to left


@dataclass
class Layout:
    width: float
    height: float
    shapes: list[Shape] = field(default_factory=list)
    routes: list[Route] = field(default_factory=list)
    anchors_in: list[tuple[float, float]] = field(default_factory=list)
    anchors_out: list[tuple[float, float]] = field(default_factory=list)
    winding: bool = False


# ---------------------------------------------------------------- layering

def _back_edges(d: Diagram) -> set[int]:
    """Edges closing a directed node cycle, found by iterative DFS in node
    order; the rest of the edges form a DAG."""
    succ: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(d.nodes))}
    for ei, e in enumerate(d.edges):
        if e.src[0] >= 0 and e.dst[0] >= 0:
            succ[e.src[0]].append((ei, e.dst[0]))
    state = [0] * len(d.nodes)
    back: set[int] = set()
    for root in range(len(d.nodes)):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            n, it = stack[-1]
            for ei, m in it:
                if state[m] == 1:
                    back.add(ei)
                elif state[m] == 0:
                    state[m] = 1
                    stack.append((m, iter(succ[m])))
                    break
            else:
                state[n] = 2
                stack.pop()
    return back


def _columns(d: Diagram, back: set[int]) -> list[int]:
    n = len(d.nodes)
    preds: dict[int, list[int]] = {i: [] for i in range(n)}
    succs: dict[int, list[int]] = {i: [] for i in range(n)}
    for ei, e in enumerate(d.edges):
        if ei not in back and e.src[0] >= 0 and e.dst[0] >= 0:
            preds[e.dst[0]].append(e.src[0])
            succs[e.src[0]].append(e.dst[0])
    col: dict[int, int] = {}

    def visit(i):
        stack = [i]
        while stack:
            j = stack[-1]
            todo = [p for p in preds[j] if p not in col]
            if todo:
                stack.extend(todo)
                continue
            stack.pop()
            col[j] = 1 + max((col[p] for p in preds[j]), default=0)
    for i in range(n):
        if i not in col:
            visit(i)
    # sources move right, next to their first consumer
    for i in sorted(range(n), key=lambda i: -col[i]):
        if not preds[i] and succs[i]:
            col[i] = max(1, min(col[s] for s in succs[i]) - 1)
    return [col[i] for i in range(n)]


def _corner(node: Node) -> str:
    rotated = node.rot % 4 != 0
    return {(False, False): 'ul', (True, False): 'ur',
            (False, True): 'lr', (True, True): 'll'}[(node.mirrored, rotated)]


def _node_label(node: Node) -> str:
    if node.kind == 'box':
        return node.gen
    if node.kind == 'twist':
        return f'{node.sign:+d}'
    if node.kind == 'dot':
        return node.gen
    return ''


# ---------------------------------------------------------------- layout

def layout(d: Diagram, winding: bool = False) -> Layout:
    """Layered left-to-right placement: every node gets a column, and in each
    column the nodes and the wires passing through are stacked bottom-to-top
    in the order that keeps planar diagrams crossing-free."""
    back = _back_edges(d)
    cols = _columns(d, back)
    last = max(cols, default=0) + 1
    in_edges: dict[int, list[int]] = {i: [] for i in range(len(d.nodes))}
    out_edges: dict[int, list[int]] = {i: [] for i in range(len(d.nodes))}
    for ei, e in enumerate(d.edges):
        if e.dst[0] >= 0:
            in_edges[e.dst[0]].append(ei)
        if e.src[0] >= 0:
            out_edges[e.src[0]].append(ei)
    for i in in_edges:
        in_edges[i].sort(key=lambda ei: d.edges[ei].dst[1])
        out_edges[i].sort(key=lambda ei: d.edges[ei].src[1])

    # column 0: frame inputs
    tracks = [ei for ei, e in sorted(enumerate(d.edges), key=lambda p: p[1].src[1])
              if e.src[0] == -1]
    columns: list[list[tuple[str, int]]] = [[('w', ei) for ei in tracks]]
    for c in range(1, last):
        here = [i for i in range(len(d.nodes)) if cols[i] == c]
        consumes = {ei: i for i in here for ei in in_edges[i] if ei not in back}
        items: list[tuple[str, int]] = []
        placed: set[int] = set()
        for ei in tracks:
            if ei in consumes:
                i = consumes[ei]
                if i not in placed:
                    placed.add(i)
                    items.append(('n', i))
            else:
                items.append(('w', ei))
        for i in here:
            if i in placed:
                continue
            placed.add(i)
            items.insert(_insertion(d, i, items, out_edges, in_edges, back), ('n', i))
        columns.append(items)
        tracks = []
        for kind, v in items:
            if kind == 'w':
                tracks.append(v)
            else:
                tracks += [ei for ei in out_edges[v] if ei not in back]
    outs = sorted((ei for ei in tracks if d.edges[ei].dst[0] == -1),
                  key=lambda ei: d.edges[ei].dst[1])
    columns.append([('w', ei) for ei in outs])

    # vertical stacking, each column centred on the tallest one
    def item_height(kind, v):
        if kind == 'w':
            return 1.0
        n = d.nodes[v]
        return float(max(len(n.ins), len(n.outs), 1))
    heights = [sum(item_height(*it) for it in items) for items in columns]
    total = max(heights + [len(d.inputs), len(d.outputs), 1])
    width = COLUMN * last
    lay = Layout(width, total, winding=winding)
    track_pos: dict[int, list[tuple[float, float]]] = {}
    port_in: dict[tuple[int, int], tuple[float, float]] = {}
    port_out: dict[tuple[int, int], tuple[float, float]] = {}
    for c, items in enumerate(columns):
        x = c * COLUMN
        yy = (total - heights[c]) / 2
        for kind, v in items:
            h = item_height(kind, v)
            if kind == 'w':
                if 0 < c < last:
                    track_pos.setdefault(v, []).append((x, yy + 0.5))
            else:
                lay.shapes.append(_shape(d.nodes[v], v, x, yy, h, port_in, port_out))
            yy += h
    lay.shapes.sort(key=lambda s: s.index)
    for i, _ in enumerate(d.inputs):
        lay.anchors_in.append((0.0, (total - len(d.inputs)) / 2 + i + 0.5))
    for j, _ in enumerate(d.outputs):
        lay.anchors_out.append((width, (total - len(d.outputs)) / 2 + j + 0.5))

    for ei, e in enumerate(d.edges):
        start = lay.anchors_in[e.src[1]] if e.src[0] == -1 else port_out[e.src]
        end = lay.anchors_out[e.dst[1]] if e.dst[0] == -1 else port_in[e.dst]
        if ei in back:
            top = total + 0.5 + 0.5 * sorted(back).index(ei)
            pts = (start, (start[0] + 0.5, top), (end[0] - 0.5, top), end)
        else:
            pts = (start, *track_pos.get(ei, []), end)
        label = e.label.obj + (f':{e.label.parity}' if winding else '')
        lay.routes.append(Route(ei, pts, label, e.label.parity % 2 == 1))
    return lay


def _insertion(d: Diagram, i: int, items, out_edges, in_edges, back) -> int:
    """Where a node without wires coming in joins its column: next to the
    other inputs of the node its outputs feed, else on top."""
    for ei in out_edges[i]:
        dst = d.edges[ei].dst
        if dst[0] < 0 or ei in back:
            continue
        others = [(d.edges[o].dst[1], o) for o in in_edges[dst[0]] if o != ei]
        pos = {v: k for k, (kind, v) in enumerate(items) if kind == 'w'}
        below = [pos[o] for p, o in others if o in pos and p < dst[1]]
        above = [pos[o] for p, o in others if o in pos and p > dst[1]]
        if below:
            return max(below) + 1
        if above:
            return min(above)
    return len(items)


def _shape(node: Node, index: int, x: float, y: float, h: float, port_in, port_out) -> Shape:
    def ports(n):
        off = (h - n) / 2
        return tuple((x, y + off + k + 0.5) for k in range(n))
    left = tuple((px - NODE_WIDTH / 2, py) for px, py in ports(len(node.ins)))
    right = tuple((px + NODE_WIDTH / 2, py) for px, py in ports(len(node.outs)))
    if node.kind == 'cup':
        right = tuple((x, py) for _, py in right)
    if node.kind == 'cap':
        left = tuple((x, py) for _, py in left)
    if node.kind == 'dot':
        left = tuple((x, py) for _, py in left) if len(node.ins) < 2 else left
        right = tuple((x, py) for _, py in right) if len(node.outs) < 2 else right
    for k, p in enumerate(left):
        port_in[(index, k)] = p
    for k, p in enumerate(right):
        port_out[(index, k)] = p
    return Shape(index, node.kind, x, y, h, _node_label(node), left, right,
                 _corner(node) if node.kind == 'box' else '', node.sign)


# ---------------------------------------------------------------- primitives

def _f(v: float) -> str:
    s = f'{v:.2f}'.rstrip('0').rstrip('.')
    return '0' if s == '-0' else s


def _segments(points):
    """Cubic pieces with horizontal tangents: (p, c1, c2, q)."""
    out = []
    for p, q in zip(points, points[1:]):
        dx = (q[0] - p[0]) / 2
        out.append((p, (p[0] + dx, p[1]), (q[0] - dx, q[1]), q))
    return out


def _lerp(p, q, t):
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def _node_strokes(s: Shape):
    """Primitive strokes for one node: ('line', p, q), ('arc', p, q, bulge),
    ('rect', x0, y0, x1, y1), ('disc', c, r), ('curl', c, r), ('text', p, str)."""
    out = []
    if s.kind == 'box':
        x0, x1 = s.x - NODE_WIDTH / 2, s.x + NODE_WIDTH / 2
        y0, y1 = s.y + 0.1, s.y + s.height - 0.1
        out.append(('rect', x0, y0, x1, y1))
        m = 0.2
        cx, cy = (x0, y1) if s.corner == 'ul' else (x1, y1) if s.corner == 'ur' else \
            (x1, y0) if s.corner == 'lr' else (x0, y0)
        sx = m if cx == x0 else -m
        sy = m if cy == y0 else -m
        out.append(('line', (cx + sx, cy), (cx, cy + sy)))
        out.append(('text', (s.x, s.y + s.height / 2), s.label))
    elif s.kind == 'cross':
        a = (s.ins[0], s.outs[1])
        b = (s.ins[1], s.outs[0])
        under = a if s.sign > 0 else b if s.sign < 0 else None
        for strand in (a, b):
            if strand is under:
                out.append(('line', strand[0], _lerp(*strand, 0.5 - GAP)))
                out.append(('line', _lerp(*strand, 0.5 + GAP), strand[1]))
            else:
                out.append(('line', *strand))
    elif s.kind in ('cup', 'cap'):
        p, q = (s.outs if s.kind == 'cup' else s.ins)
        out.append(('arc', p, q, 1 if s.kind == 'cup' else -1))
    elif s.kind == 'twist':
        c = (s.x, s.ins[0][1])
        out.append(('line', s.ins[0], (s.x - 0.15, c[1])))
        out.append(('curl', (s.x, c[1] + 0.15), 0.15))
        out.append(('line', (s.x + 0.15, c[1]), s.outs[0]))
        out.append(('text', (s.x, c[1] + 0.45), s.label))
    elif s.kind == 'dot':
        c = (s.x, s.y + s.height / 2)
        for p in s.ins + s.outs:
            if p != c:
                out.append(('line', p, c))
        out.append(('disc', c, 0.1))
    return out


def _arrow_at(points):
    """Midpoint and direction of a route, for the wire-direction marker."""
    k = (len(points) - 1) // 2
    p, q = points[k], points[k + 1]
    return _lerp(p, q, 0.5)


# ---------------------------------------------------------------- SVG

SCALE = 40.0


def to_svg(lay: Layout) -> str:
    w, h = (lay.width + 1) * SCALE, (lay.height + 1) * SCALE

    def X(v):
        return _f((v + 0.5) * SCALE)

    def Y(v):
        return _f((lay.height + 0.5 - v) * SCALE)

    def P(p):
        return f'{X(p[0])},{Y(p[1])}'
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             f'width="{_f(w)}" height="{_f(h)}" viewBox="0 0 {_f(w)} {_f(h)}">',
             '<g fill="none" stroke="black" stroke-width="1.5" font-family="serif" font-size="14">']
    lines.append(f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(0)}" y2="{Y(lay.height)}" '
                 'stroke="gray" stroke-dasharray="2,3"/>')
    lines.append(f'<line x1="{X(lay.width)}" y1="{Y(0)}" x2="{X(lay.width)}" '
                 f'y2="{Y(lay.height)}" stroke="gray" stroke-dasharray="2,3"/>')
    for r in lay.routes:
        d = f'M {P(r.points[0])}' + ''.join(
            f' C {P(c1)} {P(c2)} {P(q)}' for _, c1, c2, q in _segments(r.points))
        lines.append(f'<path id="e{r.index}" d="{d}"/>')
        m = _arrow_at(r.points)
        lines.append(f'<text x="{X(m[0])}" y="{_f((lay.height + 0.5 - m[1] - 0.15) * SCALE)}" '
                     f'fill="black" stroke="none" text-anchor="middle">'
                     f'{_esc(r.label)}{" &lt;" if r.reversed else ""}</text>')
    for s in lay.shapes:
        parts = []
        for st in _node_strokes(s):
            if st[0] == 'line':
                parts.append(f'<line x1="{X(st[1][0])}" y1="{Y(st[1][1])}" '
                             f'x2="{X(st[2][0])}" y2="{Y(st[2][1])}"/>')
            elif st[0] == 'arc':
                p, q, bulge = st[1], st[2], st[3]
                r = abs(q[1] - p[1]) / 2
                sweep = 1 if bulge > 0 else 0
                parts.append(f'<path d="M {P(p)} A {_f(r * SCALE)} {_f(r * SCALE)} 0 0 {sweep} '
                             f'{P(q)}"/>')
            elif st[0] == 'rect':
                _, x0, y0, x1, y1 = st
                parts.append(f'<rect x="{X(x0)}" y="{Y(y1)}" width="{_f((x1 - x0) * SCALE)}" '
                             f'height="{_f((y1 - y0) * SCALE)}" fill="white"/>')
            elif st[0] == 'disc':
                parts.append(f'<circle cx="{X(st[1][0])}" cy="{Y(st[1][1])}" '
                             f'r="{_f(st[2] * SCALE)}" fill="black"/>')
            elif st[0] == 'curl':
                parts.append(f'<circle cx="{X(st[1][0])}" cy="{Y(st[1][1])}" '
                             f'r="{_f(st[2] * SCALE)}"/>')
            elif st[0] == 'text' and st[2]:
                parts.append(f'<text x="{X(st[1][0])}" y="{Y(st[1][1] - 0.15)}" fill="black" '
                             f'stroke="none" text-anchor="middle">{_esc(st[2])}</text>')
        lines.append(f'<g id="n{s.index}" class="{s.kind}">' + ''.join(parts) + '</g>')
    lines += ['</g>', '</svg>']
    return '\n'.join(lines) + '\n'


def _esc(s: str) -> str:
    return s.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')


# ---------------------------------------------------------------- TikZ

def to_tikz(lay: Layout) -> str:
    def P(p):
        return f'({_f(p[0])},{_f(p[1])})'
    lines = [r'\documentclass[tikz]{standalone}', r'\begin{document}',
             r'\begin{tikzpicture}[x=0.8cm, y=0.8cm, line width=0.6pt]',
             f'\\draw[gray, dashed] (0,0) -- (0,{_f(lay.height)});',
             f'\\draw[gray, dashed] ({_f(lay.width)},0) -- ({_f(lay.width)},{_f(lay.height)});']
    for r in lay.routes:
        path = P(r.points[0]) + ''.join(
            f' .. controls {P(c1)} and {P(c2)} .. {P(q)}' for _, c1, c2, q in _segments(r.points))
        lines.append(f'\\draw {path}; % e{r.index}')
        m = _arrow_at(r.points)
        arrow = r'$\langle$' if r.reversed else ''
        lines.append(f'\\node[above, font=\\scriptsize] at {P(m)} {{{_tex(r.label)}{arrow}}};')
    for s in lay.shapes:
        lines.append(f'% n{s.index} {s.kind}')
        for st in _node_strokes(s):
            if st[0] == 'line':
                lines.append(f'\\draw {P(st[1])} -- {P(st[2])};')
            elif st[0] == 'arc':
                p, q, bulge = st[1], st[2], st[3]
                r = abs(q[1] - p[1]) / 2
                start, end = (90, 270) if bulge > 0 else (90, -90)
                lines.append(f'\\draw {P(q)} arc ({start}:{end}:{_f(r)});')
            elif st[0] == 'rect':
                _, x0, y0, x1, y1 = st
                lines.append(f'\\draw[fill=white] {P((x0, y0))} rectangle {P((x1, y1))};')
            elif st[0] == 'disc':
                lines.append(f'\\fill {P(st[1])} circle ({_f(st[2])});')
            elif st[0] == 'curl':
                lines.append(f'\\draw {P(st[1])} circle ({_f(st[2])});')
            elif st[0] == 'text' and st[2]:
                lines.append(f'\\node at {P(st[1])} {{{_tex(st[2])}}};')
    lines += [r'\end{tikzpicture}', r'\end{document}']
    return '\n'.join(lines) + '\n'


def _tex(s: str) -> str:
    return s.replace('_', r'\_').replace('&', r'\&').replace('#', r'\#')


def render(d: Diagram, fmt: str = 'svg', winding: bool = False) -> str:
    lay = layout(d, winding)
    if fmt == 'svg':
        return to_svg(lay)
    if fmt == 'tikz':
        return to_tikz(lay)
    raise ValueError(f'unknown format {fmt!r}')
