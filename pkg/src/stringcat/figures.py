"""A fixed set of representative diagrams, used for golden-file rendering
tests and by scripts/render_figures.py."""
from __future__ import annotations

from dataclasses import dataclass

from .compile import compile_term
from .corpus import _schema
from .diagram import Diagram, mirror_d
from .frontend import parse_term
from .signature import Var, load_signature
from .traced import int_transform

FIGURE_SIG = '''object A, B, C, D, E, X
morphism M : A -> B
morphism N : B * C -> D
morphism P : D -> E
morphism f : A -> B
morphism g : B -> C
morphism k : A * X -> B * X
'''


@dataclass(frozen=True)
class Figure:
    name: str
    doctrine: str
    term: str = ''
    schema: str = ''              # draw the left side of this axiom instead
    int_image: bool = False
    mirror: bool = False

    def diagram(self) -> Diagram:
        sig = load_signature(FIGURE_SIG)
        if self.schema:
            s = _schema(self.schema)
            lhs, _, gens = s.instantiate({v: Var(v) for v in s.obj_vars})
            sig = load_signature(FIGURE_SIG + ''.join(
                f'morphism {n} : {d} -> {c}\n' for n, (d, c) in sorted(gens.items())
                if n not in sig.morphisms))
            d = compile_term(lhs, sig, self.doctrine)
        else:
            d = compile_term(parse_term(self.term, sig), sig, self.doctrine)
        if self.int_image:
            d = int_transform(d)
        return mirror_d(d) if self.mirror else d


FIGURES = [
    Figure('eq4', 'planar-monoidal', 'M * id[C] ; N ; P'),
    Figure('braiding', 'braided-monoidal', 'sym[A, B]'),
    Figure('symmetry', 'symmetric-monoidal', 'sym[A, B]'),
    Figure('hexagon', 'braided-monoidal', schema='hexagon-1'),
    Figure('twist', 'balanced-monoidal', 'twist[A]'),
    Figure('snake', 'planar-autonomous', schema='snake-right-1'),
    Figure('rotation', 'planar-pivotal', schema='pivot-natural'),
    Figure('trace-loop', 'planar-traced', 'trR{X}(k)'),
    Figure('int-image', 'symmetric-traced', 'trR{X}(k)', int_image=True),
    Figure('copy-erase', 'product', schema='counit-right'),
    Figure('copy-natural', 'product', schema='copy-natural'),
    Figure('mirror', 'dagger-planar-monoidal', 'f ; g', mirror=True),
]
