"""Command-line entry point.

Exit codes: 0 ok or Equal, 1 Unequal, 2 Unknown, 64 usage error, 65 parse or
type error, 70 internal invariant violation.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import term as T
from .errors import StringcatError

EXIT_OK, EXIT_UNEQUAL, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 64, 65, 70
VERDICT_EXIT = {'Equal': EXIT_OK, 'Unequal': EXIT_UNEQUAL, 'Unknown': EXIT_UNKNOWN}
CONJECTURE_NOTE = 'note: this verdict rests on a coherence result that holds per conjecture'


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog='stringcat', description='Typecheck, compare, normalise, draw and '
                'evaluate terms of monoidal categories through their string diagrams.')
    sub = p.add_subparsers(dest='cmd', required=True, parser_class=_Parser)

    def common(sp, terms: int):
        sp.add_argument('--sig', type=Path, help='signature file')
        sp.add_argument('--doctrine', default='planar-monoidal')
        for i in range(terms):
            sp.add_argument(f'term{i + 1}' if terms > 1 else 'term', metavar='TERM')

    common(sub.add_parser('check', help='typecheck a term'), 1)
    eq = sub.add_parser('eq', help='decide equality of two terms')
    common(eq, 2)
    eq.add_argument('--witness', action='store_true', help='print the move log')
    eq.add_argument('--budget', type=int, default=None, help='move-search budget')
    eq.add_argument('--dump-ir', action='store_true', help='print both diagrams')
    norm = sub.add_parser('norm', help='print the normal form of a term')
    common(norm, 1)
    norm.add_argument('--dump-ir', action='store_true', help='also print the compiled diagram')
    draw = sub.add_parser('draw', help='render a term')
    common(draw, 1)
    draw.add_argument('--format', choices=('svg', 'tikz'), default='svg')
    draw.add_argument('--winding', action='store_true', help='label wires with winding numbers')
    draw.add_argument('-o', '--output', type=Path)
    ev = sub.add_parser('eval', help='evaluate a term in a model')
    common(ev, 1)
    ev.add_argument('--model', default='Mat[rat]')
    ev.add_argument('--bindings', type=Path, required=True)
    it = sub.add_parser('int', help='Int-transform a traced term and dump the diagram')
    common(it, 1)
    cp = sub.add_parser('corpus', help='run the built-in corpus')
    cp.add_argument('--budget', type=int, default=None)
    cp.add_argument('--fuzz', type=int, default=0, metavar='N',
                    help='also evaluate N random axiom instances per doctrine in the models')
    return p


def _signature(path: Path | None, texts: list[str]):
    from .signature import make_signature, load_signature
    if path is not None:
        try:
            return load_signature(path.read_text())
        except OSError as e:
            raise UsageError(f'cannot read signature: {e}')
    # no signature file: the atoms named in the terms, and no generators
    from .frontend import parse_term
    objs: set[str] = set()
    for text in texts:
        for s in T.subterms(parse_term(text)):
            objs |= _atoms_of(s)
    return make_signature(objs, {})


def _atoms_of(s: T.Term) -> set[str]:
    from .signature import ObjectTerm, atoms
    out: set[str] = set()
    for v in vars(s).values() if hasattr(s, '__dict__') else ():
        if isinstance(v, ObjectTerm):
            out |= set(atoms(v))
    return out


def _load(args, *texts):
    from .doctrine import get_doctrine
    from .frontend import parse_term
    sig = _signature(args.sig, list(texts))
    doc = get_doctrine(args.doctrine)
    terms = [parse_term(t, sig) for t in texts]
    for t in terms:
        T.check_doctrine(t, doc)
    return sig, doc, terms


def cmd_check(args, out) -> int:
    from .frontend import print_term
    sig, doc, (t,) = _load(args, args.term)
    typ = T.infer_type(t, sig)
    print(f'{print_term(t)} : {typ.dom} -> {typ.cod}', file=out)
    return EXIT_OK


def cmd_eq(args, out, err) -> int:
    from .compile import compile_term
    from .equivalence import decide
    sig, doc, (t1, t2) = _load(args, args.term1, args.term2)
    if args.dump_ir:
        for t in (t1, t2):
            print(compile_term(t, sig, doc), file=out)
    v = decide(t1, t2, sig, doc, args.budget) if args.budget is not None else \
        decide(t1, t2, sig, doc)
    print(v.kind, file=out)
    if v.separator:
        name, a, b = v.separator
        print(f'separator: {name}', file=out)
        print(f'  left:  {a}', file=out)
        print(f'  right: {b}', file=out)
    if v.kind == 'Unknown':
        print(f'budget spent: {v.budget_spent}', file=out)
    if args.witness and v.witness:
        print('witness:', file=out)
        print(v.log(), file=out)
    if v.conjectural:
        print(CONJECTURE_NOTE, file=err)
    return VERDICT_EXIT[v.kind]


def normal_form(t: T.Term, sig, doc):
    """The diagram a doctrine's decider compares: the canonical compiled
    diagram, or its rewrite or naturality normal form."""
    from .braided import naturality_normalize
    from .cartesian import normal_form_cartesian
    from .compile import compile_term
    from .equivalence import REWRITE_MODE
    d = compile_term(t, sig, doc)
    if doc.regime in REWRITE_MODE:
        return d, normal_form_cartesian(d, REWRITE_MODE[doc.regime])
    if doc.regime in ('Regular2D', 'Isotopy3D', 'Framed3D'):
        return d, naturality_normalize(d, doc.has('twist'))
    return d, d


def cmd_norm(args, out) -> int:
    sig, doc, (t,) = _load(args, args.term)
    d, nf = normal_form(t, sig, doc)
    if args.dump_ir and nf is not d:
        print(d, file=out)
    print(nf, file=out, end='')
    return EXIT_OK


def cmd_draw(args, out) -> int:
    from .compile import compile_term
    from .render import render
    sig, doc, (t,) = _load(args, args.term)
    text = render(compile_term(t, sig, doc), args.format, args.winding)
    if args.output:
        args.output.write_text(text)
    else:
        print(text, file=out, end='')
    return EXIT_OK


def cmd_eval(args, out) -> int:
    from .models import evaluate, get_model, parse_bindings, show_matrix
    sig, doc, (t,) = _load(args, args.term)
    m = get_model(args.model)
    try:
        text = args.bindings.read_text()
    except OSError as e:
        raise UsageError(f'cannot read bindings: {e}')
    interp = parse_bindings(text, sig, m)
    print(show_matrix(evaluate(t, interp, m)), file=out)
    return EXIT_OK


def cmd_int(args, out) -> int:
    from .compile import compile_term
    from .traced import int_target, int_transform
    sig, doc, (t,) = _load(args, args.term)
    target = int_target(doc)
    print(f'# doctrine {target.name}', file=out)
    print(int_transform(compile_term(t, sig, doc)), file=out, end='')
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    from .corpus import run_corpus
    results = run_corpus(budget=args.budget)
    width = max(len(r.entry.id) for r in results)
    for r in results:
        mark = 'pass' if r.passed else 'FAIL'
        print(f'{mark}  {r.entry.id:<{width}}  {r.entry.doctrine:<26} expected '
              f'{r.entry.expected:<8} got {r.verdict.kind:<8} {r.seconds * 1000:7.1f} ms',
              file=out)
    failed = sum(not r.passed for r in results)
    print(f'{len(results) - failed}/{len(results)} entries pass', file=out)
    ok = failed == 0
    if args.fuzz:
        ok = _fuzz(args.fuzz, out) and ok
    return EXIT_OK if ok else EXIT_UNEQUAL


def _fuzz(n: int, out) -> bool:
    from .doctrine import DOCTRINES
    from .models import check_soundness
    seed = int(os.environ.get('STRINGCAT_SEED', '0'))
    ok = True
    for name in DOCTRINES:
        for model in ('Mat[rat]', 'RelPlus'):
            try:
                rep = check_soundness(name, model, trials=n, seed=seed)
            except StringcatError as e:
                print(f'FAIL  fuzz {name} in {model}: {e}', file=out)
                ok = False
                continue
            print(f'pass  fuzz {rep}', file=out)
    return ok


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=err)
        return EXIT_USAGE
    except SystemExit as e:            # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    handlers = {'check': cmd_check, 'norm': cmd_norm, 'draw': cmd_draw, 'eval': cmd_eval,
                'int': cmd_int, 'corpus': cmd_corpus}
    try:
        if args.cmd == 'eq':
            return cmd_eq(args, out, err)
        return handlers[args.cmd](args, out)
    except UsageError as e:
        print(e, file=err)
        return EXIT_USAGE
    except StringcatError as e:
        print(f'error: {type(e).__name__}: {e}', file=err)
        return e.exit_code
    except Exception as e:             # an invariant broke inside the library
        print(f'internal error: {type(e).__name__}: {e}', file=err)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == '__main__':
    main()
