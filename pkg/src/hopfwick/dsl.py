"""Expression language: parser and canonical printer.

Grammar (whitespace insensitive)::

    expr      := ['-'] term (('+' | '-') term)*
    term      := factor ('*' factor)*
    factor    := atom ('^' nat)?
    atom      := rational | generator | kernel | '(' expr ')'
    rational  := nat ['/' nat]
    generator := ['D' '[' nat (',' nat)* ']'] name '@' nat
    kernel    := ('Dplus' | 'Dfey' | 'K{' kname '}') '(' nat ',' nat ';' index ',' index ')'
    index     := '[' nat (',' nat)* ']'
    kname     := any run of characters other than braces and whitespace

Kernel atoms exist so that printed results (which contain propagator
symbols) parse back to the same polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import DimensionMismatch, ExprSyntaxError
from .fields import FieldPoly, Generator, Monomial, generator
from .scalars import FEYNMAN, WIGHTMAN, PropagatorSymbol, ScalarPoly, propagator, render_symbol

# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    field: str
    point: int
    deriv: tuple | None


@dataclass(frozen=True)
class Kernel:
    kind: str
    left: tuple
    right: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Group:
    inner: object


# lexer ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<kname>K\{[^{}\s]*\})|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\]@,;{}]))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", _byte_offset(text, start))
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, _byte_offset(self.text, tok[2]))

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error(f"expected {value!r}, found {self.peek()[1] or 'end of input'!r}")

    def nat(self) -> int:
        tok = self.peek()
        if tok[0] != "int":
            self.error(f"expected a natural number, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return int(tok[1])

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        terms = []
        sign = -1 if self.accept("-") else 1
        terms.append((sign, self.term()))
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = 1 if self.peek()[1] == "+" else -1
            self.i += 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.accept("^"):
            return Pow(base, self.nat())
        return base

    def index(self):
        self.expect("[")
        vals = [self.nat()]
        while self.accept(","):
            vals.append(self.nat())
        self.expect("]")
        return tuple(vals)

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            num = self.nat()
            if self.accept("/"):
                den_tok = self.peek()
                den = self.nat()
                if den == 0:
                    self.error("zero denominator", den_tok)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if tok[1] == "(" and tok[0] == "op":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if tok[0] == "kname":
            name = tok[1][2:-1]
            if not name:
                self.error("empty kernel name")
            self.i += 1
            return self.kernel(name)
        if tok[0] == "name":
            nxt = self.peek(1)[1]
            if tok[1] == "D" and nxt == "[":
                self.i += 1
                deriv = self.index()
                name = self.peek()
                if name[0] != "name":
                    self.error("expected a field name after the derivative index")
                self.i += 1
                self.expect("@")
                return Gen(name[1], self.nat(), deriv)
            if nxt == "@":
                self.i += 2
                return Gen(tok[1], self.nat(), None)
            if tok[1] in ("Dplus", "Dfey") and nxt == "(":
                self.i += 1
                return self.kernel(WIGHTMAN if tok[1] == "Dplus" else FEYNMAN)
        self.error(f"unexpected {tok[1] or 'end of input'!r}")

    def kernel(self, kind):
        self.expect("(")
        p = self.nat()
        self.expect(",")
        q = self.nat()
        self.expect(";")
        a = self.index()
        self.expect(",")
        b = self.index()
        self.expect(")")
        return Kernel(kind, (p, a), (q, b))


def parse_ast(text: str):
    return _Parser(text).parse()


def to_poly(node, dim: int, allow_diagonal: bool = False) -> FieldPoly:
    if isinstance(node, Num):
        return FieldPoly.const(node.value)
    if isinstance(node, Gen):
        if node.point < 1:
            raise ExprSyntaxError(f"point label {node.point} must be >= 1", 0)
        if node.deriv is not None and len(node.deriv) != dim:
            raise DimensionMismatch(f"derivative index {list(node.deriv)} has length {len(node.deriv)}, expected {dim}")
        return FieldPoly.gen(generator(node.field, node.point, node.deriv))
    if isinstance(node, Kernel):
        for _, mi in (node.left, node.right):
            if len(mi) != dim:
                raise DimensionMismatch(f"derivative index {list(mi)} has length {len(mi)}, expected {dim}")
        sym = propagator(node.kind, node.left, node.right, allow_diagonal=allow_diagonal)
        return FieldPoly.const(ScalarPoly.symbol(sym))
    if isinstance(node, Group):
        return to_poly(node.inner, dim, allow_diagonal)
    if isinstance(node, Pow):
        return to_poly(node.base, dim, allow_diagonal) ** node.exp
    if isinstance(node, Prod):
        out = FieldPoly.const(1)
        for f in node.factors:
            out = out * to_poly(f, dim, allow_diagonal)
        return out
    if isinstance(node, Sum):
        out = FieldPoly()
        for sign, t in node.terms:
            p = to_poly(t, dim, allow_diagonal)
            out = out + p if sign > 0 else out - p
        return out
    raise TypeError(node)


def parse(text: str, dim: int | None = None, *, allow_diagonal: bool = False) -> FieldPoly:
    """Parse an expression into a canonical ``FieldPoly``."""
    dim = config.get_dim() if dim is None else dim
    if dim < 1:
        raise ValueError("dim must be >= 1")
    node = parse_ast(text)
    with config.dimension(dim):
        return to_poly(node, dim, allow_diagonal)


# printer ------------------------------------------------------------------


def format_generator(g: Generator) -> str:
    if any(g.deriv):
        return "D[" + ",".join(map(str, g.deriv)) + f"]{g.field}@{g.point}"
    return f"{g.field}@{g.point}"


def _power(s: str, p: int) -> str:
    return s if p == 1 else f"{s}^{p}"


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(_power(format_generator(g), p) for g, p in m)


def _join(parts: list) -> str:
    """``parts`` are (negative, body) pairs."""
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _term(c: Fraction, factors: list) -> tuple:
    mag = abs(c)
    body = "*".join(factors)
    if not body:
        return c < 0, str(mag)
    if mag == 1:
        return c < 0, body
    return c < 0, f"{mag}*{body}"


def _symbol_factors(key) -> list:
    return [_power(render_symbol(s), p) for s, p in key]


def format_scalar(s: ScalarPoly) -> str:
    return _join([_term(c, _symbol_factors(k)) for k, c in s.sorted_terms()])


def format_poly(p: FieldPoly) -> str:
    """Canonical text: higher degree first, factors sorted, reduced rationals."""
    parts = []
    for m, s in p.sorted_terms():
        mono = [] if not m else [format_monomial(m)]
        if len(s) == 1:
            (key, c), = s.items()
            parts.append(_term(c, _symbol_factors(key) + mono))
        else:
            parts.append((False, "*".join(["(" + format_scalar(s) + ")"] + mono)))
    return _join(parts)


def format_symbol(sym: PropagatorSymbol) -> str:
    return render_symbol(sym)
