"""Built-in corpus of equations with expected verdicts, each citing where the
equation comes from in the literature on graphical languages."""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import term as T
from .frontend import parse_term, print_term
from .schemas import ALL_SCHEMAS
from .signature import (ObjectTerm, Signature, Var, atoms, load_signature, make_signature,
                        show_signature)

SIG = '''object A, B, C, D, X
morphism f : A -> B
morphism g : C -> D
morphism c : I -> I
morphism k : A * X -> A * X
morphism u : X -> A * X
'''


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    doctrine: str
    lhs: str
    rhs: str
    expected: str                  # Equal | Unequal
    cite: str
    sig: str = SIG

    def signature(self) -> Signature:
        return load_signature(self.sig)

    def terms(self) -> tuple[T.Term, T.Term, Signature]:
        sig = self.signature()
        return parse_term(self.lhs, sig), parse_term(self.rhs, sig), sig


def _schema(name: str) -> object:
    return next(s for s in ALL_SCHEMAS if s.name == name)


def instance(name: str, doctrine: str, cite: str, entry_id: str | None = None,
             **objs: ObjectTerm) -> CorpusEntry:
    """A schema instantiated at concrete objects; variables not given in
    `objs` become object atoms of the same name."""
    s = _schema(name)
    env = {v: objs.get(v, Var(v)) for v in s.obj_vars}
    lhs, rhs, gens = s.instantiate(env)
    used = {a for o in env.values() for a in atoms(o)}
    sig = make_signature(used, gens)
    return CorpusEntry(entry_id or name, doctrine, print_term(lhs), print_term(rhs), 'Equal',
                       cite, show_signature(sig))


def _chain_text(*parts: str) -> str:
    sig = load_signature(SIG)
    return print_term(T.chain(sig, *(parse_term(p, sig) for p in parts)))


# the two curls of the tortile lemma, composed: id up to isotopy, but not up
# to regular isotopy
_CURLS = ('piv[A]', "lam'[A^r^r]", 'eta[A] * id[A^r^r]', "id[A^r] * sym'[A^r^r, A]",
          'eps[A^r] * id[A]', 'lam[A]', 'piv[A]', "lam'[A^r^r]", 'eta[A] * id[A^r^r]',
          'id[A^r] * sym[A, A^r^r]', 'eps[A^r] * id[A]', 'lam[A]')

_NON_SPACIAL = ("lam'[A] ; (c * id[A]) ; lam[A] ; f", "f ; rho'[B] ; (id[B] * c) ; rho[B]")

_TREE = ('trR{X}(merge[X] ; u)',
         "trR{X}(merge[X] ; u ; (id[A] * u) ; alpha'[A, A, X] ; (merge[A] * id[X]))")


def load_corpus() -> list[CorpusEntry]:
    E = CorpusEntry
    out = [
        # progressive monoidal
        instance('associativity', 'category', 'composition is associative (category axioms)'),
        instance('pentagon', 'planar-monoidal', 'pentagon axiom, planar monoidal categories'),
        instance('triangle', 'planar-monoidal', 'triangle axiom, planar monoidal categories'),
        instance('interchange', 'planar-monoidal', 'functoriality of tensor (interchange law)'),
        instance('alpha-natural', 'planar-monoidal', 'naturality of the associator'),
        E('non-spacial-planar', 'planar-monoidal', *_NON_SPACIAL, 'Unequal',
          'planar monoidal: sliding a scalar past a wire does not follow from the axioms'),
        E('non-spacial-spacial', 'spacial-monoidal', *_NON_SPACIAL, 'Equal',
          'spacial monoidal categories: scalars move freely'),
        # braided, balanced, symmetric
        instance('hexagon-1', 'braided-monoidal', 'first hexagon axiom, braided monoidal'),
        instance('hexagon-2', 'braided-monoidal', 'second hexagon axiom, braided monoidal'),
        E('yang-baxter', 'braided-monoidal',
          _chain_text('sym[A, B] * id[C]', 'id[B] * sym[A, C]', 'sym[B, C] * id[A]'),
          _chain_text('alpha[A, B, C]', 'id[A] * sym[B, C]', 'sym[A, C] * id[B]',
                      'id[C] * sym[A, B]', "alpha'[C, B, A]"),
          'Equal', 'Yang-Baxter equation, braided monoidal categories'),
        instance('braiding-natural', 'braided-monoidal', 'naturality of the braiding'),
        instance('braiding-iso', 'braided-monoidal', 'braiding composed with its inverse'),
        E('sigma-sigma-braided', 'braided-monoidal', 'sym[A, B] ; sym[B, A]', 'id[A * B]',
          'Unequal', 'braided monoidal: the double braiding is not the identity'),
        E('sigma-sigma-symmetric', 'symmetric-monoidal', 'sym[A, B] ; sym[B, A]', 'id[A * B]',
          'Equal', 'symmetric monoidal: the symmetry is self-inverse'),
        instance('balanced', 'balanced-monoidal', 'balance equation for the twist'),
        instance('twist-natural', 'balanced-monoidal', 'naturality of the twist'),
        # autonomous and pivotal
        instance('snake-right-1', 'planar-autonomous', 'first snake equation, right duals'),
        instance('snake-right-2', 'planar-autonomous', 'second snake equation, right duals'),
        instance('mate-functorial', 'planar-autonomous', 'functoriality of adjoint mates'),
        instance('pivot-natural', 'planar-pivotal', 'rotation equation: a box turned 360 degrees'),
        instance('pivot-dual', 'planar-pivotal', 'pivotal structure on duals'),
        instance('spherical', 'spacial-pivotal', 'spherical axiom, checked in spacial pivotal '
                 'categories'),
        E('curl-braided-pivotal', 'braided-pivotal', _chain_text(*_CURLS), 'id[A]', 'Unequal',
          'braided pivotal: the curl equation holds up to isotopy but not up to regular '
          'isotopy'),
        E('curl-tortile', 'tortile', _chain_text(*_CURLS), 'id[A]', 'Equal',
          'tortile lemma (a): the curl equation defines tortile categories'),
        instance('twist-natural', 'tortile', 'tortile lemma (b) instance: twist naturality '
                 'in a tortile category', entry_id='tortile-twist-natural'),
        # traced
        instance('tightening', 'right-traced', 'trace axiom: tightening (naturality)'),
        instance('sliding', 'right-traced', 'trace axiom: sliding (dinaturality)'),
        instance('vanishing-unit', 'right-traced', 'trace axiom: vanishing for the unit'),
        instance('vanishing-tensor', 'right-traced', 'trace axiom: vanishing for a tensor'),
        instance('strength', 'right-traced', 'trace axiom: strength (superposing)'),
        instance('trace-interchange', 'planar-traced', 'planar traced: interchange of traces'),
        instance('left-pivoting', 'planar-traced', 'planar traced: left pivoting'),
        instance('right-pivoting', 'planar-traced', 'planar traced: right pivoting'),
        instance('braided-trace', 'braided-traced', 'braided traced axiom'),
        E('braided-trace-form-2', 'braided-traced', "trL{A}(sym'[A, A]) ; trR{A}(sym[A, A])",
          'id[A]', 'Equal', 'braided traced axiom, equivalent mirrored form'),
        E('braided-trace-form-3', 'braided-traced', "trL{A}(sym[A, A]) ; trR{A}(sym'[A, A])",
          'id[A]', 'Equal', 'braided traced axiom, equivalent form with the traces swapped'),
        instance('yanking', 'balanced-traced', 'balanced traced: yanking gives the twist'),
        instance('symmetric-yanking', 'symmetric-traced', 'symmetric traced: yanking'),
        E('biflow', 'symmetric-traced', 'trR{X}(id[A * X])', 'id[A]', 'Unequal',
          'axiom of biflows: an extra axiom; the left side keeps a closed X loop'),
        # products, coproducts, biproducts
        instance('copy-natural', 'product', 'products: naturality of the diagonal'),
        instance('erase-natural', 'product', 'products: naturality of the terminal map'),
        instance('coassociative', 'product', 'products: coassociativity of copying'),
        instance('counit-right', 'product', 'products: erasing a copy'),
        instance('merge-natural', 'coproduct', 'coproducts: naturality of the codiagonal'),
        instance('merge-associative', 'coproduct', 'coproducts: associativity of merging'),
        instance('proj1-inj1', 'biproduct', 'biproducts: pi_1 after iota_1 is the identity'),
        instance('proj1-inj2', 'biproduct', 'biproducts: pi_1 after iota_2 is zero'),
        E('tree-unwinding', 'traced-coproduct', *_TREE, 'Unequal',
          'traced coproduct categories: the tree-unwinding equation fails in general'),
        # dagger
        instance('dagger-involution', 'dagger-planar-monoidal', 'dagger is an involution'),
        instance('dagger-compose', 'dagger-planar-monoidal', 'dagger reverses composition'),
        E('dagger-pivotal-a', 'dagger-planar-pivotal', "piv[A] ; dg(piv[A])", 'id[A]', 'Equal',
          'dagger pivotal lemma (a): the pivotal structure is unitary'),
        instance('pivot-from-counits', 'dagger-planar-pivotal',
                 'dagger pivotal lemma (b): the pivot from counits', entry_id='dagger-pivotal-b'),
        instance('unit-dagger', 'dagger-planar-pivotal',
                 'dagger pivotal lemma (c): the dagger of the unit', entry_id='dagger-pivotal-c'),
        instance('counit-dagger', 'dagger-planar-pivotal',
                 'dagger pivotal lemma (d): the dagger of the counit',
                 entry_id='dagger-pivotal-d'),
        instance('dagger-compact', 'dagger-compact-closed', 'dagger compact closed equation'),
        instance('trace-dagger', 'dagger-symmetric-traced', 'trace commutes with dagger'),
        instance('proj-dagger', 'dagger-biproduct', 'dagger biproducts: the dagger of pi is iota'),
    ]
    return out


@dataclass(frozen=True)
class CorpusResult:
    entry: CorpusEntry
    verdict: object
    seconds: float

    @property
    def passed(self) -> bool:
        return self.verdict.kind == self.entry.expected


def run_corpus(entries=None, budget: int | None = None) -> list[CorpusResult]:
    from .equivalence import Verdict, decide
    from .errors import StringcatError
    out = []
    for e in entries if entries is not None else load_corpus():
        lhs, rhs, sig = e.terms()
        t = time.perf_counter()
        try:
            v = decide(lhs, rhs, sig, e.doctrine, budget) if budget else \
                decide(lhs, rhs, sig, e.doctrine)
        except StringcatError as err:
            v = Verdict('Error', separator=(type(err).__name__, str(err), ''))
        out.append(CorpusResult(e, v, time.perf_counter() - t))
    return out
