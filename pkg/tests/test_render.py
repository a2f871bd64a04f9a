from __future__ import annotations

import re
import xml.dom.minidom
from pathlib import Path

import pytest

from stringcat.compile import compile_term
from stringcat.diagram import id_d
from stringcat.figures import FIGURES
from stringcat.frontend import parse_term
from stringcat.render import layout, render, to_svg, to_tikz
from stringcat.signature import WireLabel as W

GOLDEN = Path(__file__).parent / 'golden'
BY_NAME = {f.name: f for f in FIGURES}


def test_twelve_figures():
    assert len(FIGURES) == 12


@pytest.mark.parametrize('fig', FIGURES, ids=[f.name for f in FIGURES])
@pytest.mark.parametrize('fmt, ext', [('svg', 'svg'), ('tikz', 'tex')])
def test_golden(fig, fmt, ext):
    text = render(fig.diagram(), fmt)
    assert text == render(fig.diagram(), fmt)
    assert text == (GOLDEN / f'{fig.name}.{ext}').read_text()


@pytest.mark.parametrize('fig', FIGURES, ids=[f.name for f in FIGURES])
def test_svg_is_well_formed(fig):
    d = fig.diagram()
    doc = xml.dom.minidom.parseString(render(d, 'svg'))
    root = doc.documentElement
    assert root.tagName == 'svg' and root.getAttribute('version') == '1.1'
    ids = [el.getAttribute('id') for el in doc.getElementsByTagName('*') if el.getAttribute('id')]
    # every node and every edge appears exactly once
    assert sorted(i for i in ids if i.startswith('n')) == sorted(f'n{i}' for i in
                                                                 range(len(d.nodes)))
    assert sorted(i for i in ids if i.startswith('e')) == sorted(f'e{i}' for i in
                                                                 range(len(d.edges)))


@pytest.mark.parametrize('fig', FIGURES, ids=[f.name for f in FIGURES])
def test_tikz_is_standalone(fig):
    text = render(fig.diagram(), 'tikz')
    assert text.startswith('\\documentclass')
    assert text.count('\\begin{tikzpicture}') == text.count('\\end{tikzpicture}') == 1


def test_eq4_boxes_left_to_right():
    lay = layout(BY_NAME['eq4'].diagram())
    boxes = sorted((s for s in lay.shapes if s.kind == 'box'), key=lambda s: s.x)
    assert [s.label for s in boxes] == ['M', 'N', 'P']
    assert boxes[0].x < boxes[1].x < boxes[2].x


def test_boxes_do_not_overlap():
    for fig in FIGURES:
        boxes = [s for s in layout(fig.diagram()).shapes if s.kind == 'box']
        for i, a in enumerate(boxes):
            for b in boxes[i + 1:]:
                apart_x = abs(a.x - b.x) >= 1.0
                apart_y = a.y + a.height <= b.y or b.y + b.height <= a.y
                assert apart_x or apart_y, fig.name


def test_trace_loop_above_box():
    lay = layout(BY_NAME['trace-loop'].diagram())
    (box,) = [s for s in lay.shapes if s.kind == 'box']
    loop = [r for r in lay.routes if r.reversed]
    assert loop and all(y > box.y + box.height for r in loop for _, y in r.points)


def test_anchors_bottom_to_top():
    lay = layout(BY_NAME['eq4'].diagram())
    xs = {x for x, _ in lay.anchors_in}
    ys = [y for _, y in lay.anchors_in]
    assert xs == {0.0} and ys == sorted(ys)
    assert {x for x, _ in lay.anchors_out} == {lay.width}


def test_unit_is_half_turn():
    from stringcat.corpus import SIG
    from stringcat.signature import load_signature
    sig = load_signature(SIG)
    lay = layout(compile_term(parse_term('eta[A]', sig), sig, 'planar-autonomous'))
    assert [s.kind for s in lay.shapes] == ['cup']


def test_identity_is_one_line():
    svg = render(id_d([W('A')]))
    assert len(re.findall(r'<path', svg)) == 1 and '>A<' in svg


def test_braiding_has_gap_symmetry_does_not():
    braid = layout(BY_NAME['braiding'].diagram()).shapes[0]
    sym = layout(BY_NAME['symmetry'].diagram()).shapes[0]
    assert (braid.kind, braid.sign) == ('cross', 1) and sym.sign == 0
    def gap(fig):
        doc = xml.dom.minidom.parseString(render(BY_NAME[fig].diagram()))
        (node,) = [g for g in doc.getElementsByTagName('g') if g.getAttribute('id') == 'n0']
        return len(node.getElementsByTagName('line'))
    assert gap('braiding') == 3 and gap('symmetry') == 2


def test_corner_marks():
    mirror = layout(BY_NAME['mirror'].diagram())
    assert {s.corner for s in mirror.shapes if s.kind == 'box'} == {'ur'}
    eq4 = layout(BY_NAME['eq4'].diagram())
    assert {s.corner for s in eq4.shapes if s.kind == 'box'} == {'ul'}


def test_twist_curl_label():
    svg = render(BY_NAME['twist'].diagram())
    assert '<circle' in svg and '+1' in svg


def test_winding_labels():
    from stringcat.corpus import SIG
    from stringcat.signature import load_signature
    sig = load_signature(SIG)
    d = compile_term(parse_term('eta[A]', sig), sig, 'planar-autonomous')
    assert 'A:1' in render(d, winding=True) and 'A:1' not in render(d)
