"""Doctrine-indexed equality of morphism terms.

Iso and planar regimes compare canonical codes, the rewrite regimes compare
normal forms, and the braided regimes normalise, compare invariants and then
search for a chain of moves.  Unequal is only ever claimed from an exact
criterion or a separating invariant; an exhausted search gives Unknown.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import term as T
from .braided import (MoveSet, invariant_fields, invariants_of, move_search,
                      naturality_normalize)
from .canon import connection_code, planar_code
from .cartesian import commutative_iso, normal_form_cartesian
from .compile import compile_term
from .diagram import Diagram, Node
from .doctrine import Doctrine, get_doctrine
from .errors import NoDeciderForDoctrine, TypeMismatch
from .signature import Signature

__all__ = ['Verdict', 'Equal', 'Unequal', 'Unknown', 'MoveSet', 'decide', 'decide_diagrams',
           'normal_form_cartesian', 'move_search', 'naturality_normalize', 'iso_equal',
           'planar_equal', 'DEFAULT_BUDGET', 'TRACED_DIRECT']

DEFAULT_BUDGET = 10_000

REWRITE_MODE = {'RewriteCartesian': 'product', 'RewriteCoCartesian': 'coproduct',
                'RewriteBiproduct': 'biproduct'}

# traced doctrines decided on their own diagrams rather than through Int
TRACED_DIRECT = ('right-traced', 'planar-traced', 'spacial-traced')


@dataclass(frozen=True)
class Verdict:
    kind: str                                  # Equal | Unequal | Unknown
    witness: tuple[str, ...] = ()
    separator: tuple | None = None             # (name, left value, right value)
    budget_spent: int = 0
    regime: str = ''
    conjectural: bool = False

    @property
    def equal(self) -> bool:
        return self.kind == 'Equal'

    def log(self) -> str:
        """The witness as a move/rewrite log, one step per line."""
        return '\n'.join(self.witness)

    def __str__(self) -> str:
        if self.kind == 'Unequal' and self.separator:
            name, a, b = self.separator
            return f'Unequal ({name}: {a} vs {b})'
        if self.kind == 'Unknown':
            return f'Unknown (budget spent: {self.budget_spent})'
        return self.kind


def Equal(witness=(), **kw) -> Verdict:
    return Verdict('Equal', tuple(witness), **kw)


def Unequal(separator, **kw) -> Verdict:
    return Verdict('Unequal', separator=separator, **kw)


def Unknown(spent: int, **kw) -> Verdict:
    return Verdict('Unknown', budget_spent=spent, **kw)


# ---------------------------------------------------------------- exact criteria

def _iso_dissolve(n: Node) -> bool:
    return n.kind in ('cup', 'cap') or (n.kind == 'cross' and n.sign == 0)


def iso_equal(d1: Diagram, d2: Diagram) -> bool:
    """Anchored isomorphism after dissolving bends and symmetric crossings;
    closed loops are compared by their wire types."""
    return connection_code(d1, _iso_dissolve) == connection_code(d2, _iso_dissolve)


def planar_equal(d1: Diagram, d2: Diagram) -> bool:
    """Equality of combinatorial maps (planar isotopy)."""
    return planar_code(d1) == planar_code(d2)


def _boxes(d: Diagram) -> Counter:
    return Counter(n.gen if n.kind == 'box' else f'{n.kind}:{n.gen}' for n in d.nodes
                   if n.kind in ('box', 'dot'))


def _mismatch(d1: Diagram, d2: Diagram, what: str) -> tuple:
    b1, b2 = _boxes(d1), _boxes(d2)
    if b1 != b2:
        return ('box multiset', dict(sorted(b1.items())), dict(sorted(b2.items())))
    return (what, f'{len(d1.nodes)} nodes', f'{len(d2.nodes)} nodes')


# ---------------------------------------------------------------- dispatch

def decide_diagrams(d1: Diagram, d2: Diagram, doctrine: Doctrine | str,
                    budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide equality of two diagrams with equal boundaries under the
    equivalence regime of `doctrine`."""
    doc = get_doctrine(doctrine)
    regime = doc.regime
    kw = {'regime': regime, 'conjectural': doc.conjectural}
    if regime == 'NoDecider':
        raise NoDeciderForDoctrine(f'no coherence theorem, hence no decider, for {doc.name}')
    if (tuple(d1.inputs), tuple(d1.outputs)) != (tuple(d2.inputs), tuple(d2.outputs)):
        return Unequal(('boundary', (d1.inputs, d1.outputs), (d2.inputs, d2.outputs)), **kw)
    if regime == 'Iso':
        if iso_equal(d1, d2):
            return Equal(['anchored isomorphism'], **kw)
        return Unequal(_mismatch(d1, d2, 'isomorphism class'), **kw)
    if regime == 'PlanarIso':
        if planar_equal(d1, d2):
            return Equal(['planar isotopy (equal combinatorial maps)'], **kw)
        if not iso_equal(d1, d2):
            return Unequal(_mismatch(d1, d2, 'isomorphism class'), **kw)
        return Unequal(('planar map', 'isomorphic wiring', 'different rotation system'), **kw)
    if regime in REWRITE_MODE:
        mode = REWRITE_MODE[regime]
        l1, l2 = [], []
        n1 = normal_form_cartesian(d1, mode, log=l1)
        n2 = normal_form_cartesian(d2, mode, log=l2)
        if commutative_iso(n1, n2):
            witness = [f'left: {s}' for s in l1] + [f'right: {s}' for s in l2]
            return Equal(witness + ['normal forms isomorphic'], **kw)
        return Unequal(_mismatch(n1, n2, 'rewrite normal form'), **kw)
    return _decide_braided(d1, d2, regime, budget, kw)


def _decide_braided(d1: Diagram, d2: Diagram, regime: str, budget: int, kw) -> Verdict:
    framed = regime == 'Framed3D'
    w1, w2 = [], []
    n1 = naturality_normalize(d1, framed, w1)
    n2 = naturality_normalize(d2, framed, w2)
    diff = invariants_of(n1).compare(invariants_of(n2), invariant_fields(regime))
    if diff is not None:
        return Unequal(diff, **kw)
    res = move_search(n1, n2, MoveSet.for_regime(regime), budget, framed)
    if res.found:
        witness = [f'left: {s}' for s in w1] + res.witness + \
            [f'right (reversed): {s}' for s in reversed(w2)]
        return Equal(witness, budget_spent=res.expanded, **kw)
    return Unknown(res.expanded, **kw)


def check_pair(t1: T.Term, t2: T.Term, sig: Signature, doc: Doctrine) -> T.MorphismType:
    ty1, ty2 = T.infer_type(t1, sig), T.infer_type(t2, sig)
    if ty1 != ty2:
        raise TypeMismatch(('decide',), ty1, ty2)
    T.check_doctrine(t1, doc)
    T.check_doctrine(t2, doc)
    return ty1


def decide(t1: T.Term, t2: T.Term, sig: Signature, d: Doctrine | str,
           budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide t1 = t2 in the free category of doctrine `d` over `sig`."""
    doc = get_doctrine(d)
    check_pair(t1, t2, sig, doc)
    if doc.regime == 'NoDecider':
        raise NoDeciderForDoctrine(f'no coherence theorem, hence no decider, for {doc.name}')
    if doc.traced and not doc.cartesian and doc.base not in TRACED_DIRECT:
        from .traced import decide_traced
        return decide_traced(t1, t2, sig, doc, budget)
    d1 = compile_term(t1, sig, doc, check=False)
    d2 = compile_term(t2, sig, doc, check=False)
    return decide_diagrams(d1, d2, doc, budget)
