"""Laplace pairing (bicharacter) on the field algebra.

The pairing is fixed on generators by a kernel registry and extended by

    (1|a) = (a|1) = eps(a),
    (a|bc) = sum (a1|b)(a2|c),     (ab|c) = sum (a|c1)(b|c2).

``laplace_pair`` uses the closed form (a sum over bijections between the
factors, i.e. a permanent); ``laplace_pair_recursive`` evaluates the two
expansion laws directly through the coproduct.  They are independent and
are cross-checked in the test-suite.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .errors import DiagonalContraction
from .fields import UNIT, FieldPoly, Generator, Monomial
from .hopf import monomial_coproduct
from .scalars import ONE, WIGHTMAN, ZERO, ScalarPoly, propagator, time_ordered_kind


def _default_entries():
    return {("phi", "phi"): WIGHTMAN}


@dataclass(frozen=True)
class KernelRegistry:
    """Which kernel pairs two field species; unregistered pairs give 0.

    Lookup is by the ordered pair ``(left field, right field)``.
    """

    entries: dict = field(default_factory=_default_entries)
    allow_diagonal: bool = False

    def kind(self, field_a: str, field_b: str) -> str | None:
        return self.entries.get((field_a, field_b))

    def pairs_species(self, field_a: str, field_b: str) -> bool:
        return (field_a, field_b) in self.entries or (field_b, field_a) in self.entries

    def time_ordered(self, field_a: str, field_b: str) -> tuple | None:
        """``(kind, swap)`` of the time-ordered kernel between two species.

        The slot of the alphabetically first species goes on the left, so
        ``swap`` says whether the caller's (a, b) order must be reversed.
        None when neither order is registered.
        """
        if not self.pairs_species(field_a, field_b):
            return None
        swap = field_b < field_a
        if swap:
            field_a, field_b = field_b, field_a
        return time_ordered_kind(self.kind(field_a, field_b), self.kind(field_b, field_a)), swap

    def with_diagonal(self, allow: bool) -> "KernelRegistry":
        return self if allow == self.allow_diagonal else replace(self, allow_diagonal=allow)

    def __hash__(self):
        return hash((tuple(sorted(self.entries.items())), self.allow_diagonal))

    # JSON: {"pairs": [{"fieldA", "fieldB", "kind"}], "allow_diagonal": false}

    def to_json(self) -> dict:
        return {
            "pairs": [{"fieldA": a, "fieldB": b, "kind": k} for (a, b), k in sorted(self.entries.items())],
            "allow_diagonal": self.allow_diagonal,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "KernelRegistry":
        entries = {}
        for p in obj.get("pairs", []):
            entries[(p["fieldA"], p["fieldB"])] = p.get("kind", WIGHTMAN)
        return cls(entries, bool(obj.get("allow_diagonal", False)))

    @classmethod
    def load(cls, path) -> "KernelRegistry":
        with open(path) as f:
            return cls.from_json(json.load(f))


DEFAULT_REGISTRY = KernelRegistry()


def pair_generators(g: Generator, h: Generator, reg: KernelRegistry = DEFAULT_REGISTRY) -> ScalarPoly:
    kind = reg.kind(g.field, h.field)
    if kind is None:
        return ZERO
    if g.point == h.point and not reg.allow_diagonal:
        raise DiagonalContraction(f"cannot contract {g.field}@{g.point} with {h.field}@{h.point}")
    sym = propagator(kind, (g.point, g.deriv), (h.point, h.deriv), allow_diagonal=True)
    return ScalarPoly.symbol(sym)


def _bilinear(pair_monomials, a: FieldPoly, b: FieldPoly) -> ScalarPoly:
    total = ZERO
    for ma, ca in a.items():
        for mb, cb in b.items():
            v = pair_monomials(ma, mb)
            if v:
                total = total + ca * cb * v
    return total


def pair_monomials(ma: Monomial, mb: Monomial, reg: KernelRegistry = DEFAULT_REGISTRY) -> ScalarPoly:
    """Sum over bijections from the factors of ``ma`` to those of ``mb``."""
    if ma.degree != mb.degree:
        return ZERO
    left = ma.factors()
    gens = [g for g, _ in mb]
    table = [[pair_generators(g, h, reg) for h in gens] for g in left]

    @lru_cache(maxsize=None)
    def perm(i: int, counts: tuple) -> ScalarPoly:
        if i == len(left):
            return ONE
        total = ZERO
        for j, n in enumerate(counts):
            if n and table[i][j]:
                rest = perm(i + 1, counts[:j] + (n - 1,) + counts[j + 1:])
                if rest:
                    # n interchangeable copies of the j-th generator
                    total = total + table[i][j] * rest * n
        return total

    return perm(0, tuple(p for _, p in mb))


def laplace_pair(a: FieldPoly, b: FieldPoly, reg: KernelRegistry = DEFAULT_REGISTRY) -> ScalarPoly:
    """Closed-form pairing, bilinear over scalar coefficients."""
    return _bilinear(lambda x, y: pair_monomials(x, y, reg), a, b)


def _split_first(m: Monomial):
    g, p = m[0]
    rest = Monomial._raw(((g, p - 1),) + m[1:]) if p > 1 else Monomial._raw(m[1:])
    return Monomial._raw(((g, 1),)), rest


def pair_monomials_recursive(ma: Monomial, mb: Monomial, reg: KernelRegistry = DEFAULT_REGISTRY) -> ScalarPoly:
    """Pairing evaluated only from the unit and expansion laws."""

    @lru_cache(maxsize=None)
    def rec(x: Monomial, y: Monomial) -> ScalarPoly:
        if y == UNIT:
            return ONE if x == UNIT else ZERO
        if x == UNIT:
            return ZERO
        if x.degree == 1 and y.degree == 1:
            return pair_generators(x[0][0], y[0][0], reg)
        total = ZERO
        if y.degree >= 2:
            h, rest = _split_first(y)
            for mult, x1, x2 in monomial_coproduct(x):
                t = rec(x1, h)
                if t:
                    t = t * rec(x2, rest)
                    if t:
                        total = total + t * mult
        else:
            g, rest = _split_first(x)
            for mult, y1, y2 in monomial_coproduct(y):
                t = rec(g, y1)
                if t:
                    t = t * rec(rest, y2)
                    if t:
                        total = total + t * mult
        return total

    return rec(ma, mb)


def laplace_pair_recursive(a: FieldPoly, b: FieldPoly, reg: KernelRegistry = DEFAULT_REGISTRY) -> ScalarPoly:
    return _bilinear(lambda x, y: pair_monomials_recursive(x, y, reg), a, b)
