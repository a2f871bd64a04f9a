"""Text syntax for object and morphism terms.

`;` is diagrammatic composition (`t ; u` runs t first) and `*` is the tensor;
`*` binds tighter and both associate to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import TermSyntaxError, UnknownGenerator
from .signature import I, LeftDual, ObjectTerm, OTensor, RightDual, Signature, Var, show_object
from . import term as T


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int

    def __str__(self) -> str:
        return f'{self.line}:{self.column}'


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<dual>\^[rl])
  | (?P<op>[;*()\[\]{},])
""", re.X)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


class _Lexer:
    def __init__(self, text: str, lineno: int = 1):
        self.text, self.lineno = text, lineno

    def span(self, pos: int, end: int | None = None) -> SourceSpan:
        line = self.lineno + self.text.count('\n', 0, pos)
        col = pos - (self.text.rfind('\n', 0, pos) + 1) + 1
        return SourceSpan(line, col, pos, pos if end is None else end)

    def error(self, pos: int, msg: str) -> TermSyntaxError:
        return TermSyntaxError(self.span(pos), msg)

    def tokens(self) -> list[Token]:
        out, pos = [], 0
        while pos < len(self.text):
            m = _TOKEN.match(self.text, pos)
            if not m:
                raise self.error(pos, f'unexpected character {self.text[pos]!r}')
            if m.lastgroup != 'ws':
                out.append(Token(m.lastgroup, m.group(), self.span(pos, m.end())))
            pos = m.end()
        out.append(Token('eof', '', self.span(pos)))
        return out


class _Parser:
    def __init__(self, text: str, lineno: int = 1):
        self.lexer = _Lexer(text, lineno)
        self.toks = self.lexer.tokens()
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, msg: str):
        raise TermSyntaxError(self.tok.span, msg)

    def eat(self, text: str) -> Token:
        if self.tok.text != text:
            self.fail(f'expected {text!r}, found {self.tok.text or "end of input"!r}')
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.tok.text == text:
            self.i += 1
            return True
        return False

    def done(self):
        if self.tok.kind != 'eof':
            self.fail(f'unexpected {self.tok.text!r}')

    # objects
    def obj(self) -> ObjectTerm:
        out = self.obj_postfix()
        while self.accept('*'):
            out = OTensor(out, self.obj_postfix())
        return out

    def obj_postfix(self) -> ObjectTerm:
        if self.accept('('):
            out = self.obj()
            self.eat(')')
        elif self.tok.kind == 'name' and not self.tok.text.endswith("'"):
            name = self.tok.text
            self.i += 1
            out = I if name == 'I' else Var(name)
        else:
            self.fail('expected an object')
        while self.tok.kind == 'dual':
            out = RightDual(out) if self.tok.text == '^r' else LeftDual(out)
            self.i += 1
        return out

    def obj_args(self, n: int) -> list[ObjectTerm]:
        self.eat('[')
        args = [self.obj()]
        while self.accept(','):
            args.append(self.obj())
        if len(args) != n:
            self.fail(f'expected {n} object argument(s), got {len(args)}')
        self.eat(']')
        return args

    # terms
    def term(self) -> T.Term:
        out = self.tensor()
        while self.accept(';'):
            out = T.Compose(self.tensor(), out)
        return out

    def tensor(self) -> T.Term:
        out = self.atom()
        while self.accept('*'):
            out = T.Tensor(out, self.atom())
        return out

    def atom(self) -> T.Term:
        tok = self.tok
        if self.accept('('):
            out = self.term()
            self.eat(')')
            return out
        if tok.kind != 'name':
            self.fail('expected a term')
        word, nxt = tok.text, self.peek().text
        if nxt == '[' and word in _BRACKET:
            self.i += 1
            cls, n, kw = _BRACKET[word]
            return cls(*self.obj_args(n), **kw)
        if nxt == '{' and word in ('trR', 'trL'):
            self.i += 2
            x = self.obj()
            self.eat('}')
            self.eat('(')
            body = self.term()
            self.eat(')')
            return (T.TrR if word == 'trR' else T.TrL)(x, body)
        if nxt == '(' and word in ('dg', 'mate', 'pair', 'copair'):
            self.i += 2
            first = self.term()
            if word in ('pair', 'copair'):
                self.eat(',')
                second = self.term()
                self.eat(')')
                return _Sugar(word, first, second, tok.span)
            self.eat(')')
            return T.Dagger(first) if word == 'dg' else T.Mate(first)
        if word.endswith("'"):
            self.fail(f'unknown constant {word!r}')
        self.i += 1
        return T.Gen(word)


@dataclass(frozen=True)
class _Sugar(T.Term):
    kind: str
    first: T.Term
    second: T.Term
    span: SourceSpan


_BRACKET = {
    'id': (T.Id, 1, {}),
    'alpha': (T.Alpha, 3, {}), "alpha'": (T.Alpha, 3, {'inv': True}),
    'lam': (T.Lambda, 1, {}), "lam'": (T.Lambda, 1, {'inv': True}),
    'rho': (T.Rho, 1, {}), "rho'": (T.Rho, 1, {'inv': True}),
    'sym': (T.Sym, 2, {}), "sym'": (T.Sym, 2, {'inv': True}),
    'twist': (T.Twist, 1, {}), "twist'": (T.Twist, 1, {'inv': True}),
    'eta': (T.Eta, 1, {}), 'eps': (T.Eps, 1, {}),
    'etaL': (T.EtaL, 1, {}), 'epsL': (T.EpsL, 1, {}),
    'piv': (T.Piv, 1, {}), "piv'": (T.Piv, 1, {'inv': True}),
    'copy': (T.Copy, 1, {}), 'erase': (T.Erase, 1, {}),
    'merge': (T.Merge, 1, {}), 'init': (T.Init, 1, {}),
    'proj1': (T.proj1, 2, {}), 'proj2': (T.proj2, 2, {}),
    'inj1': (T.inj1, 2, {}), 'inj2': (T.inj2, 2, {}),
}

_NAMES = {T.Id: 'id', T.Alpha: 'alpha', T.Lambda: 'lam', T.Rho: 'rho', T.Sym: 'sym',
          T.Twist: 'twist', T.Eta: 'eta', T.Eps: 'eps', T.EtaL: 'etaL', T.EpsL: 'epsL',
          T.Piv: 'piv', T.Copy: 'copy', T.Erase: 'erase', T.Merge: 'merge', T.Init: 'init'}


def _desugar(t: T.Term, sig: Signature | None) -> T.Term:
    if isinstance(t, _Sugar):
        a, b = _desugar(t.first, sig), _desugar(t.second, sig)
        if sig is None:
            raise TermSyntaxError(t.span, f'{t.kind} needs a signature to resolve types')
        if t.kind == 'pair':
            return T.pair(a, b, T.infer_type(a, sig).dom)
        return T.copair(a, b, T.infer_type(a, sig).cod)
    if isinstance(t, T.Compose):
        return T.Compose(_desugar(t.after, sig), _desugar(t.before, sig))
    if isinstance(t, T.Tensor):
        return T.Tensor(_desugar(t.left, sig), _desugar(t.right, sig))
    if isinstance(t, (T.TrR, T.TrL)):
        return type(t)(t.x, _desugar(t.body, sig))
    if isinstance(t, (T.Dagger, T.Mate)):
        return type(t)(_desugar(t.body, sig))
    return t


def parse_object(text: str, lineno: int = 1) -> ObjectTerm:
    p = _Parser(text, lineno)
    out = p.obj()
    p.done()
    return out


def parse_term(text: str, sig: Signature | None = None) -> T.Term:
    """Parse a term; generators are checked against `sig` when given."""
    p = _Parser(text)
    out = p.term()
    p.done()
    out = _desugar(out, sig)
    if sig is not None:
        for s in T.subterms(out):
            if isinstance(s, T.Gen) and s.name not in sig.morphisms:
                raise UnknownGenerator(s.name)
    return out


def print_term(t: T.Term) -> str:
    if isinstance(t, T.Compose):
        after = print_term(t.after)
        if isinstance(t.after, T.Compose):
            after = f'({after})'
        return f'{print_term(t.before)} ; {after}'
    if isinstance(t, T.Tensor):
        left, right = print_term(t.left), print_term(t.right)
        if isinstance(t.left, T.Compose):
            left = f'({left})'
        if isinstance(t.right, (T.Compose, T.Tensor)):
            right = f'({right})'
        return f'{left} * {right}'
    if isinstance(t, T.Gen):
        return t.name
    if isinstance(t, (T.TrR, T.TrL)):
        kw = 'trR' if isinstance(t, T.TrR) else 'trL'
        return f'{kw}{{{show_object(t.x)}}}({print_term(t.body)})'
    if isinstance(t, T.Dagger):
        return f'dg({print_term(t.body)})'
    if isinstance(t, T.Mate):
        return f'mate({print_term(t.body)})'
    name = _NAMES[type(t)] + ("'" if getattr(t, 'inv', False) else '')
    if isinstance(t, T.Id):
        args = [t.obj]
    else:
        args = [getattr(t, n) for n in ('a', 'b', 'c') if hasattr(t, n)]
    return f'{name}[{", ".join(show_object(a) for a in args)}]'
