"""Exact coefficient ring: rationals and polynomials in formal propagator symbols.

A ``ScalarPoly`` stands in for the distribution factor of an element of the
quantized algebra.  Propagator symbols are free commuting indeterminates;
no analytic identity between kernels is ever applied.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

from . import config
from .errors import DiagonalContraction, DimensionMismatch

WIGHTMAN = "wightman"
FEYNMAN = "feynman"
RESERVED_KINDS = (WIGHTMAN, FEYNMAN)


def multi_index(values=None, dim: int | None = None) -> tuple[int, ...]:
    """Validate a derivative multi-index against the session dimension.

    ``None`` gives the zero multi-index.
    """
    d = config.get_dim() if dim is None else dim
    if values is None:
        return (0,) * d
    out = tuple(int(v) for v in values)
    if len(out) != d:
        raise DimensionMismatch(f"multi-index {list(out)} has length {len(out)}, expected {d}")
    if any(v < 0 for v in out):
        raise ValueError(f"multi-index entries must be natural numbers: {list(out)}")
    return out


class PropagatorSymbol(NamedTuple):
    """Formal two-point kernel ``kind((p, alpha), (q, beta))``.

    Build instances with :func:`propagator`, which canonicalizes slot order.
    """

    kind: str
    left: tuple[int, tuple[int, ...]]
    right: tuple[int, tuple[int, ...]]

    @property
    def points(self) -> tuple[int, int]:
        return self.left[0], self.right[0]

    def relabel(self, sigma: Mapping[int, int]) -> "PropagatorSymbol":
        (p, a), (q, b) = self.left, self.right
        return propagator(self.kind, (sigma.get(p, p), a), (sigma.get(q, q), b), allow_diagonal=True)

    def __str__(self):
        return render_symbol(self)


def propagator(kind: str, left, right, *, allow_diagonal: bool = False) -> PropagatorSymbol:
    """Canonical propagator symbol.

    ``left``/``right`` are ``(point, deriv)`` pairs or bare points.  Feynman
    symbols are symmetric and get their slots sorted; Wightman and named
    kernels keep the order given.
    """
    left, right = _slot(left), _slot(right)
    if not kind:
        raise ValueError("kernel kind must be nonempty")
    if left[0] == right[0] and not allow_diagonal:
        raise DiagonalContraction(f"diagonal symbol {kind}({left[0]},{right[0]}) is disabled")
    if right < left and is_symmetric_kind(kind):
        left, right = right, left
    return PropagatorSymbol(kind, left, right)


def time_ordered_kind(forward: str | None, backward: str | None) -> str:
    """Kind of the time-ordered kernel built from two ordered kernels.

    For a left slot of species A and a right slot of species B, ``forward``
    is the kernel registered for (A, B) and ``backward`` the one for (B, A);
    the time-ordered value is ``forward(left, right)`` when the left point
    is later and ``backward(right, left)`` otherwise.  A pair of Wightman
    kernels gives the Feynman kind; anything else is spelled
    ``T[forward|backward]`` with an empty name for a missing kernel.
    """
    if forward == WIGHTMAN and backward == WIGHTMAN:
        return FEYNMAN
    return f"T[{forward or ''}|{backward or ''}]"


def split_time_ordered(kind: str) -> tuple | None:
    """Inverse of ``time_ordered_kind``; None for kinds that are not time-ordered."""
    if kind == FEYNMAN:
        return WIGHTMAN, WIGHTMAN
    if kind.startswith("T[") and kind.endswith("]") and kind.count("|") == 1:
        fwd, bwd = kind[2:-1].split("|")
        return fwd or None, bwd or None
    return None


def is_symmetric_kind(kind: str) -> bool:
    parts = split_time_ordered(kind)
    return parts is not None and parts[0] == parts[1]


def canonical_symbol(sym: PropagatorSymbol) -> PropagatorSymbol:
    return propagator(sym.kind, sym.left, sym.right, allow_diagonal=True)


def _slot(s):
    if isinstance(s, int):
        return (s, multi_index())
    point, deriv = s
    point = int(point)
    if point < 1:
        raise ValueError(f"point labels start at 1, got {point}")
    return (point, multi_index(deriv))


def render_symbol(sym: PropagatorSymbol) -> str:
    (p, a), (q, b) = sym.left, sym.right
    if sym.kind == WIGHTMAN:
        head = "Dplus"
    elif sym.kind == FEYNMAN:
        head = "Dfey"
    else:
        head = "K{%s}" % sym.kind
    fmt = lambda m: "[" + ",".join(map(str, m)) + "]"
    return f"{head}({p},{q};{fmt(a)},{fmt(b)})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


# key of a ScalarPoly term: tuple of (symbol, power) sorted by symbol
SymbolMonomial = tuple


class ScalarPoly:
    """Polynomial with rational coefficients in commuting propagator symbols.

    Immutable.  The empty symbol tuple is the constant term.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[SymbolMonomial, object] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                key = _canonical_key(key)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ScalarPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "ScalarPoly":
        c = _as_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def symbol(cls, sym: PropagatorSymbol, power: int = 1, coeff=1) -> "ScalarPoly":
        if power == 0:
            return cls.const(coeff)
        return cls({((sym, power),): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def symbols(self) -> set:
        return {s for key in self._terms for s, _ in key}

    def points(self) -> set:
        out = set()
        for s in self.symbols():
            out.update(s.points)
        return out

    def degree(self) -> int:
        return max((sum(p for _, p in key) for key in self._terms), default=0)

    # ring structure -------------------------------------------------------

    @staticmethod
    def coerce(x) -> "ScalarPoly":
        if isinstance(x, ScalarPoly):
            return x
        return ScalarPoly.const(x)

    def __add__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            c = out.get(k, 0) + c
            if c:
                out[k] = c
            else:
                del out[k]
        return ScalarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ScalarPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ScalarPoly._raw({})
        if len(b) == 1 and () in b:
            c = b[()]
            return self if c == 1 else ScalarPoly._raw({k: v * c for k, v in a.items()})
        if len(a) == 1 and () in a:
            c = a[()]
            return other if c == 1 else ScalarPoly._raw({k: v * c for k, v in b.items()})
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = merge_powers(ka, kb)
                c = out.get(k, 0) + ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
        return ScalarPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ScalarPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ScalarPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ScalarPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def relabel(self, sigma: Mapping[int, int]) -> "ScalarPoly":
        return ScalarPoly({tuple((s.relabel(sigma), p) for s, p in k): c for k, c in self._terms.items()})

    def sorted_terms(self) -> list:
        """Terms in canonical print order: higher degree first, then by symbols."""
        return sorted(self._terms.items(), key=lambda kc: (-sum(p for _, p in kc[0]), kc[0]))

    def __repr__(self):
        from .dsl import format_scalar

        return f"ScalarPoly({format_scalar(self)})"


def merge_powers(a: tuple, b: tuple) -> tuple:
    """Product of two sorted ``(item, power)`` tuples, kept sorted."""
    if not a:
        return b
    if not b:
        return a
    if a[-1][0] < b[0][0]:
        return a + b
    if b[-1][0] < a[0][0]:
        return b + a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i][0] == b[j][0]:
            out.append((a[i][0], a[i][1] + b[j][1]))
            i += 1
            j += 1
        elif a[i][0] < b[j][0]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _canonical_key(key: Iterable) -> tuple:
    acc = {}
    for item in key:
        if isinstance(item, PropagatorSymbol):
            sym, p = item, 1
        else:
            sym, p = item
        if p < 0:
            raise ValueError("negative symbol power")
        if p:
            acc[sym] = acc.get(sym, 0) + p
    return tuple(sorted(acc.items()))


def scalar_add(a: ScalarPoly, b: ScalarPoly) -> ScalarPoly:
    return a + b


def scalar_mul(a: ScalarPoly, b: ScalarPoly) -> ScalarPoly:
    return a * b


ZERO = ScalarPoly.const(0)
ONE = ScalarPoly.const(1)
