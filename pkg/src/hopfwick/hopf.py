"""Hopf structure of the field algebra: primitive generators.

Generators satisfy ``Delta(g) = g (x) 1 + 1 (x) g``, ``eps(g) = 0`` and
``S(g) = -g``; everything else follows from multiplicativity.  Scalar
coefficients ride on the tensor as a whole (they stay with the first leg
under the coaction), so tensors are maps from tuples of monomials to
``ScalarPoly``.
"""
from __future__ import annotations

from itertools import product
from math import comb
from typing import NamedTuple

from .fields import UNIT, FieldPoly, Monomial
from .scalars import ScalarPoly


class TensorPair(NamedTuple):
    coeff: ScalarPoly
    left: Monomial
    right: Monomial


class Tensor:
    """Normalized element of the k-fold tensor power (monomial legs)."""

    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: dict | None = None):
        self.k = k
        self._terms = {}
        for legs, c in (terms or {}).items():
            self.add(legs, c)

    def add(self, legs: tuple, c) -> None:
        assert len(legs) == self.k, (legs, self.k)
        c = ScalarPoly.coerce(c)
        if legs in self._terms:
            c = self._terms[legs] + c
            if c:
                self._terms[legs] = c
            else:
                del self._terms[legs]
        elif c:
            self._terms[legs] = c

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda lc: lc[0])

    def swap(self) -> "Tensor":
        """Reverse the order of the legs (the flip map for k = 2)."""
        return Tensor(self.k, {legs[::-1]: c for legs, c in self._terms.items()})

    def __repr__(self):
        return f"Tensor(k={self.k}, {len(self)} terms)"


def monomial_coproduct(m: Monomial):
    """Yield ``(multiplicity, left, right)`` for ``Delta(m)``.

    A power ``g^e`` splits as ``sum_k C(e, k) g^k (x) g^(e-k)``.
    """
    choices = [[(k, comb(e, k)) for k in range(e + 1)] for _, e in m]
    for pick in product(*choices):
        mult = 1
        left, right = [], []
        for (g, e), (k, c) in zip(m, pick):
            mult *= c
            if k:
                left.append((g, k))
            if e - k:
                right.append((g, e - k))
        yield mult, Monomial._raw(tuple(left)), Monomial._raw(tuple(right))


def coproduct_tensor(a: FieldPoly) -> Tensor:
    t = Tensor(2)
    for m, c in a.items():
        for mult, l, r in monomial_coproduct(m):
            t.add((l, r), c * mult)
    return t


def coproduct(a: FieldPoly) -> list[TensorPair]:
    """Normalized Sweedler decomposition, sorted by (left, right)."""
    return [TensorPair(c, l, r) for (l, r), c in coproduct_tensor(a).sorted_items()]


def counit(a: FieldPoly) -> ScalarPoly:
    return a.coeff(UNIT)


def antipode(a: FieldPoly) -> FieldPoly:
    return FieldPoly({m: (-c if m.degree % 2 else c) for m, c in a.items()})


def delta_at(t: Tensor, i: int) -> Tensor:
    """Apply the coproduct to leg ``i``, producing a (k+1)-fold tensor."""
    out = Tensor(t.k + 1)
    for legs, c in t.items():
        for mult, l, r in monomial_coproduct(legs[i]):
            out.add(legs[:i] + (l, r) + legs[i + 1:], c * mult)
    return out


def sweedler_iter(a: FieldPoly, k: int) -> list[tuple[ScalarPoly, tuple]]:
    """Iterated coproduct ``Delta^(k-1)`` as sorted ``(coeff, legs)`` pairs."""
    if k < 1:
        raise ValueError("k must be >= 1")
    t = Tensor(1, {(m,): c for m, c in a.items()})
    for _ in range(k - 1):
        t = delta_at(t, t.k - 1)
    return [(c, legs) for legs, c in t.sorted_items()]


def tensor_of(a: FieldPoly) -> Tensor:
    return Tensor(1, {(m,): c for m, c in a.items()})


# axiom checks --------------------------------------------------------------


def check_coassociative(a: FieldPoly) -> bool:
    d = coproduct_tensor(a)
    return delta_at(d, 0) == delta_at(d, 1)


def check_counit(a: FieldPoly) -> bool:
    left = FieldPoly()
    right = FieldPoly()
    for (l, r), c in coproduct_tensor(a).items():
        # eps kills every non-unit leg
        if l == UNIT:
            left = left + FieldPoly.monomial(r, c)
        if r == UNIT:
            right = right + FieldPoly.monomial(l, c)
    return left == a and right == a


def check_antipode(a: FieldPoly) -> bool:
    eps = FieldPoly.const(counit(a))
    lhs = FieldPoly()
    rhs = FieldPoly()
    for (l, r), c in coproduct_tensor(a).items():
        L, R = FieldPoly.monomial(l), FieldPoly.monomial(r)
        lhs = lhs + (antipode(L) * R).scale(c)
        rhs = rhs + (L * antipode(R)).scale(c)
    return lhs == eps and rhs == eps


def check_cocommutative(a: FieldPoly) -> bool:
    d = coproduct_tensor(a)
    return d.swap() == d
