"""Field polynomials at labeled points and their commutative normal product.

A ``FieldPoly`` maps canonical monomials in field generators to ``ScalarPoly``
coefficients.  Elements with constant coefficients form the Fock Hopf
algebra itself; general coefficients give the coefficient-extended algebra
on which the star product acts.

All point-label sets live in one unbounded universe of naturals, so the
inductive system over ``n`` points is a union: embedding into a larger
level only checks the label bound.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import LabelOverflow, NotInjective
from .scalars import ONE, ScalarPoly, merge_powers, multi_index


class Generator(NamedTuple):
    """One field factor ``D^deriv field(x_point)``.

    Tuple order (field, point, deriv) is the canonical sort order.
    """

    field: str
    point: int
    deriv: tuple[int, ...]

    def relabel(self, sigma: Mapping[int, int]) -> "Generator":
        return Generator(self.field, sigma.get(self.point, self.point), self.deriv)

    def __str__(self):
        from .dsl import format_generator

        return format_generator(self)


def generator(field: str = "phi", point: int = 1, deriv=None) -> Generator:
    if not field:
        raise ValueError("field name must be nonempty")
    point = int(point)
    if point < 1:
        raise ValueError(f"point labels start at 1, got {point}")
    return Generator(field, point, multi_index(deriv))


class Monomial(tuple):
    """Canonically sorted tuple of ``(Generator, power)`` pairs; ``()`` is 1."""

    __slots__ = ()

    def __new__(cls, factors: Iterable = ()):
        acc: dict = {}
        for f in factors:
            if isinstance(f, Generator):
                g, p = f, 1
            else:
                g, p = f
            if p < 0:
                raise ValueError("negative generator power")
            if p:
                acc[g] = acc.get(g, 0) + p
        return tuple.__new__(cls, sorted(acc.items()))

    @classmethod
    def _raw(cls, items) -> "Monomial":
        return tuple.__new__(cls, items)

    @property
    def degree(self) -> int:
        return sum(p for _, p in self)

    def points(self) -> set:
        return {g.point for g, _ in self}

    def factors(self) -> list:
        """Generators with repetition, in canonical order."""
        return [g for g, p in self for _ in range(p)]

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial._raw(merge_powers(self, other))
        return NotImplemented

    def __repr__(self):
        from .dsl import format_monomial

        return f"Monomial({format_monomial(self)})"


UNIT = Monomial()


class FieldPoly:
    """Immutable polynomial in generators with ``ScalarPoly`` coefficients.

    ``*`` is the normal (commutative, uncontracted) product.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, Monomial):
                m = Monomial(m)
            c = ScalarPoly.coerce(c)
            if c:
                c = clean[m] + c if m in clean else c
                if c:
                    clean[m] = c
                else:
                    del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "FieldPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "FieldPoly":
        c = ScalarPoly.coerce(c)
        return cls._raw({UNIT: c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "FieldPoly":
        return cls({m: coeff})

    @classmethod
    def gen(cls, g: Generator, power: int = 1) -> "FieldPoly":
        return cls._raw({Monomial([(g, power)]): ONE})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, m) -> ScalarPoly:
        if not isinstance(m, Monomial):
            m = Monomial(m)
        return self._terms.get(m, ScalarPoly.const(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def has_trivial_scalars(self) -> bool:
        return all(c.is_const() for c in self._terms.values())

    def symbols(self) -> set:
        out = set()
        for c in self._terms.values():
            out |= c.symbols()
        return out

    # arithmetic ------------------------------------------------------------

    @staticmethod
    def coerce(x) -> "FieldPoly":
        if isinstance(x, FieldPoly):
            return x
        if isinstance(x, Generator):
            return FieldPoly.gen(x)
        return FieldPoly.const(x)

    def __add__(self, other):
        try:
            other = FieldPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                c = out[m] + c
                if c:
                    out[m] = c
                else:
                    del out[m]
            else:
                out[m] = c
        return FieldPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return FieldPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = FieldPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return FieldPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = FieldPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return normal_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = FieldPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "FieldPoly":
        c = ScalarPoly.coerce(c)
        if not c:
            return FieldPoly._raw({})
        return FieldPoly._raw({m: v * c for m, v in self._terms.items() if v * c})

    def __eq__(self, other):
        if isinstance(other, FieldPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, ScalarPoly, Generator)):
            return self._terms == FieldPoly.coerce(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in canonical print order: higher degree first, then lexicographic."""
        return sorted(self._terms.items(), key=lambda mc: (-mc[0].degree, mc[0]))

    def __repr__(self):
        from .dsl import format_poly

        return f"FieldPoly({format_poly(self)})"


def phi(point: int, deriv=None, field: str = "phi") -> FieldPoly:
    """Shorthand for the single-generator polynomial ``D^deriv field@point``."""
    return FieldPoly.gen(generator(field, point, deriv))


def normal_mul(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    """Commutative normal product: merge generator multisets, multiply coefficients."""
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m = ma * mb
            c = ca * cb
            if m in out:
                c = out[m] + c
                if c:
                    out[m] = c
                else:
                    del out[m]
            elif c:
                out[m] = c
    return FieldPoly._raw(out)


def support(a: FieldPoly) -> set:
    """Point labels of all generators and propagator slots with nonzero coefficient."""
    out = set()
    for m, c in a.items():
        out |= m.points()
        out |= c.points()
    return out


def embed(a: FieldPoly, n: int) -> FieldPoly:
    """View ``a`` at level ``n`` of the inductive system (labels 1..n)."""
    s = support(a)
    if s and max(s) > n:
        raise LabelOverflow(f"support {sorted(s)} does not fit in {{1..{n}}}")
    return a


def relabel(a: FieldPoly, sigma: Mapping[int, int]) -> FieldPoly:
    """Substitute point labels; labels absent from ``sigma`` stay fixed."""
    s = support(a)
    images = {p: sigma.get(p, p) for p in s}
    if len(set(images.values())) != len(images):
        raise NotInjective(f"relabeling {dict(sigma)} collapses labels of support {sorted(s)}")
    if any(int(v) < 1 for v in images.values()):
        raise ValueError("point labels start at 1")
    out: dict = {}
    for m, c in a.items():
        m2 = Monomial((g.relabel(images), p) for g, p in m)
        out[m2] = c.relabel(images)
    return FieldPoly(out)
