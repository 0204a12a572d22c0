"""Star product on the coefficient-extended field algebra.

For ``c = u h`` and ``d = v k`` (scalar times monomial)

    c * d = sum  u v (h2|k2)  h1 k1

over the Sweedler decompositions of ``h`` and ``k``.  The production path
enumerates contraction patterns with exact multiplicities;
``star_via_coproduct`` is the literal coproduct formula, kept as a
cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import factorial, lcm
from typing import Sequence

from .fields import FieldPoly, Monomial
from .hopf import counit, monomial_coproduct
from .laplace import DEFAULT_REGISTRY, KernelRegistry, pair_generators, pair_monomials
from .scalars import ScalarPoly, merge_powers

REJECT = "reject"
FORMAL_SYMBOL = "formal"


@dataclass(frozen=True)
class StarContext:
    """Kernel registry plus the policy for same-point contractions."""

    registry: KernelRegistry = field(default_factory=lambda: DEFAULT_REGISTRY)
    diagonal_policy: str = REJECT

    def __post_init__(self):
        if self.diagonal_policy not in (REJECT, FORMAL_SYMBOL):
            raise ValueError(f"unknown diagonal policy {self.diagonal_policy!r}")

    @property
    def pairing(self) -> KernelRegistry:
        return self.registry.with_diagonal(self.diagonal_policy == FORMAL_SYMBOL)

    @classmethod
    def from_registry(cls, reg: KernelRegistry) -> "StarContext":
        return cls(reg, FORMAL_SYMBOL if reg.allow_diagonal else REJECT)

    def describe(self) -> dict:
        return {"registry": self.registry.to_json(), "diagonal_policy": self.diagonal_policy}


DEFAULT_CONTEXT = StarContext()


def _contractions(h: Monomial, k: Monomial, reg: KernelRegistry) -> dict:
    """``{remaining monomial: {symbol key: multiplicity}}`` over all contraction patterns.

    A pattern is a matrix ``n[i][j]`` of how many copies of the i-th generator
    of ``h`` contract with copies of the j-th generator of ``k``.  Its
    multiplicity is prod e_i!/(e_i-r_i)! * prod f_j!/(f_j-c_j)! / prod n_ij!.
    """
    cells = []
    for i, (g, _) in enumerate(h):
        for j, (g2, _) in enumerate(k):
            s = pair_generators(g, g2, reg)
            if s:
                (((sym, _),), _), = s.items()
                cells.append((sym, i, j))
    # sorted by symbol, so keys come out canonical when no symbol repeats
    cells.sort()
    distinct = len({c[0] for c in cells}) == len(cells)
    row = [e for _, e in h]
    col = [f for _, f in k]
    chosen = [0] * len(cells)
    states: dict = {}  # (row, col) -> (remaining monomial, falling factorials)
    acc: dict = {}

    def state():
        rc = (tuple(row), tuple(col))
        found = states.get(rc)
        if found is None:
            mult = 1
            for (_, e), r in zip(h, row):
                if r != e:
                    mult *= factorial(e) // factorial(r)
            for (_, f), c in zip(k, col):
                if c != f:
                    mult *= factorial(f) // factorial(c)
            rest = Monomial._raw(tuple((g, r) for (g, _), r in zip(h, row) if r)) * Monomial._raw(
                tuple((g, c) for (g, _), c in zip(k, col) if c)
            )
            found = states[rc] = (rest, mult)
        return found

    ncells = len(cells)

    def rec(idx, denom):
        # skip cells whose row or column is already used up
        while idx < ncells:
            _, i, j = cells[idx]
            top = min(row[i], col[j])
            if top:
                break
            idx += 1
        else:
            rest, mult = state()
            if distinct:
                key = tuple((c[0], n) for c, n in zip(cells, chosen) if n)
            else:
                powers: dict = {}
                for c, n in zip(cells, chosen):
                    if n:
                        powers[c[0]] = powers.get(c[0], 0) + n
                key = tuple(sorted(powers.items()))
            bucket = acc.setdefault(rest, {})
            bucket[key] = bucket.get(key, 0) + mult // denom
            return
        rec(idx + 1, denom)
        for n in range(1, top + 1):
            row[i] -= n
            col[j] -= n
            chosen[idx] = n
            rec(idx + 1, denom * factorial(n))
            row[i] += n
            col[j] += n
        chosen[idx] = 0

    rec(0, 1)
    return acc


def _denominator_lcm(a: FieldPoly) -> int:
    out = 1
    for _, s in a.items():
        for _, c in s.items():
            out = lcm(out, c.denominator)
    return out


def star(c: FieldPoly, d: FieldPoly, ctx: StarContext = DEFAULT_CONTEXT) -> FieldPoly:
    reg = ctx.pairing
    # work with integers scaled by a common denominator; Fractions are slow
    scale = _denominator_lcm(c) * _denominator_lcm(d)
    out: dict = {}  # monomial -> {symbol key: scaled coefficient}, mutated in place
    for h, u in c.items():
        for k, v in d.items():
            uv = [(ku, int(cu * scale)) for ku, cu in (u * v).items()]
            for rest, bucket in _contractions(h, k, reg).items():
                tgt = out.setdefault(rest, {})
                for ku, cu in uv:
                    for kc, m in bucket.items():
                        key = merge_powers(ku, kc)
                        tgt[key] = tgt.get(key, 0) + cu * m
    result = {}
    for rest, terms in out.items():
        if scale == 1:
            terms = {key: Fraction(x) for key, x in terms.items() if x}
        else:
            terms = {key: Fraction(x, scale) for key, x in terms.items() if x}
        if terms:
            result[rest] = ScalarPoly._raw(terms)
    return FieldPoly._raw(result)


def star_via_coproduct(c: FieldPoly, d: FieldPoly, ctx: StarContext = DEFAULT_CONTEXT) -> FieldPoly:
    """Reference implementation: ``sum u v (h2|k2) h1 k1`` literally."""
    reg = ctx.pairing
    out = FieldPoly()
    for h, u in c.items():
        dh = list(monomial_coproduct(h))
        for k, v in d.items():
            uv = u * v
            for mh, h1, h2 in dh:
                for mk, k1, k2 in monomial_coproduct(k):
                    p = pair_monomials(h2, k2, reg)
                    if p:
                        out = out + FieldPoly.monomial(h1 * k1, uv * p * (mh * mk))
    return out


def vacuum(c: FieldPoly) -> ScalarPoly:
    """Scalar part: the counit applied to the field factor."""
    return counit(c)


def star_power(factors: Sequence[FieldPoly], ctx: StarContext = DEFAULT_CONTEXT) -> FieldPoly:
    if not factors:
        return FieldPoly.const(1)
    return reduce(lambda x, y: star(x, y, ctx), factors)
