"""Time-ordered products and Green functions at distinct points.

``T`` is the Wick expansion with time-ordered kernels: every partial
pairing of the factors contributes the product of its kernel symbols times
the unpaired factors.  Species paired by Wightman kernels in both orders
contract through the symmetric Feynman symbol D_F; other registrations
give ``T[forward|backward]`` kinds (see ``scalars.time_ordered_kind``).  The causal factorization ``T(cd) = T(c) * T(d)``
(``c`` not earlier than ``d``) is not built in; ``causal_check`` verifies
it numerically.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DiagonalPoint
from .fields import FieldPoly, Generator, Monomial, generator, support
from .quantize import DEFAULT_CONTEXT, FORMAL_SYMBOL, StarContext, star
from .scalars import ScalarPoly, propagator


def _feynman_table(factors: list, ctx: StarContext, local_vertices: bool):
    """Symbol (or None) for every position pair i < j."""
    reg = ctx.registry
    n = len(factors)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        gi = factors[i]
        for j in range(i + 1, n):
            gj = factors[j]
            to = reg.time_ordered(gi.field, gj.field)
            if to is None:
                continue
            if gi.point == gj.point:
                if local_vertices:
                    continue
                if ctx.diagonal_policy != FORMAL_SYMBOL:
                    raise DiagonalPoint(f"two factors at point {gi.point} in a time-ordered product")
            kind, swap = to
            a, b = (gi.point, gi.deriv), (gj.point, gj.deriv)
            if swap:
                a, b = b, a
            table[i][j] = propagator(kind, a, b, allow_diagonal=True)
    return table


def _pairings(n: int, table, full_only: bool) -> dict:
    """All (partial) pairings as ``{free_mask: [symbol keys]}``.

    Perfect matchings of each position subset are memoized by bitmask: the
    lowest free position pairs with each later partner.  Keys are built in
    row order, which is canonical when the rows of ``table`` are strictly
    increasing; otherwise the caller re-sorts them.
    """
    entries = [[None if s is None else (s, 1) for s in row] for row in table]
    memo: dict = {0: [()]}

    def pm(mask):
        found = memo.get(mask)
        if found is not None:
            return found
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        row = entries[i]
        out = []
        m = rest
        while m:
            low = m & -m
            m ^= low
            e = row[low.bit_length() - 1]
            if e is not None:
                sub = pm(rest ^ low)
                if sub:
                    out.extend([(e,) + t for t in sub])
        memo[mask] = out
        return out

    full = (1 << n) - 1
    if full_only:
        return {0: pm(full)} if n % 2 == 0 else {}
    acc = {}
    for contracted in range(full + 1):
        if bin(contracted).count("1") % 2:
            continue
        keys = pm(contracted)
        if keys:
            acc[full ^ contracted] = keys
    return acc


def _rows_increasing(table) -> bool:
    last = None
    for row in table:
        row_syms = sorted(s for s in row if s is not None)
        if len(set(row_syms)) != len(row_syms):
            return False
        if row_syms:
            if last is not None and row_syms[0] <= last:
                return False
            last = row_syms[-1]
    return True


def _symbol_key(entries: list) -> tuple:
    return tuple(sorted(Counter(s for s, _ in entries).items()))


_SMALL = [Fraction(0), Fraction(1)]


def _monomial_of(factors: list, mask: int) -> Monomial:
    # factors are canonically sorted, so equal generators are adjacent
    items = []
    for p, g in enumerate(factors):
        if mask >> p & 1:
            if items and items[-1][0] == g:
                items[-1][1] += 1
            else:
                items.append([g, 1])
    return Monomial._raw(tuple((g, k) for g, k in items))


def _expand(c: FieldPoly, ctx: StarContext, local_vertices: bool, full_only: bool):
    """Yield ``(monomial, scalar)`` contributions, one batch per input monomial."""
    for m, coeff in c.items():
        factors = m.factors()
        table = _feynman_table(factors, ctx, local_vertices)
        acc = _pairings(len(factors), table, full_only)
        canonical = _rows_increasing(table)
        merged: dict = {}
        for free, keys in acc.items():
            tgt = merged.setdefault(_monomial_of(factors, free), {})
            if canonical and not tgt:
                tgt.update(dict.fromkeys(keys, _SMALL[1]))
                continue
            for k in keys:
                if not canonical:
                    k = _symbol_key(k)
                tgt[k] = tgt.get(k, 0) + 1
        for mono, bucket in merged.items():
            s = ScalarPoly._raw({k: Fraction(v) for k, v in bucket.items()})
            yield mono, (s if coeff == 1 else s * coeff)


def tproduct(c: FieldPoly, ctx: StarContext = DEFAULT_CONTEXT, *, local_vertices: bool = False) -> FieldPoly:
    """Wick expansion of the time-ordered product of each monomial of ``c``.

    Factors at a shared point label raise ``DiagonalPoint``, unless
    ``local_vertices`` treats each point as a normal-ordered vertex (no
    self-contractions) or the context allows formal diagonal symbols.
    """
    out: dict = {}
    for mono, s in _expand(c, ctx, local_vertices, full_only=False):
        if mono in out:
            s = out[mono] + s
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return FieldPoly._raw(out)


def _as_generator(p) -> Generator:
    if isinstance(p, Generator):
        return p
    if isinstance(p, int):
        return generator("phi", p)
    return generator(*p)


def green(points: Iterable, ctx: StarContext = DEFAULT_CONTEXT) -> ScalarPoly:
    """Vacuum expectation of the time-ordered product of the given generators.

    ``points`` holds Generators, ``(field, point, deriv)`` triples or bare
    labels (meaning ``phi``).
    """
    gens = [_as_generator(p) for p in points]
    labels = [g.point for g in gens]
    if len(set(labels)) != len(labels):
        raise DiagonalPoint(f"green needs pairwise distinct labels, got {labels}")
    if len(gens) % 2:
        return ScalarPoly.const(0)
    m = FieldPoly.monomial(Monomial(gens))
    total = ScalarPoly.const(0)
    for mono, s in _expand(m, ctx, False, full_only=True):
        total = total + s
    return total


# causal factorization --------------------------------------------------------


@dataclass
class CausalReport:
    status: str  # "pass", "fail" or "order_violated"
    max_deviation: float
    tol: float
    order_ok: bool
    lhs: FieldPoly = field(repr=False, default=None)
    rhs: FieldPoly = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "passed": self.passed,
            "order_ok": self.order_ok,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
        }


def time_separated(c: FieldPoly, d: FieldPoly, times: Mapping[int, float]) -> bool:
    """Strictly: every point of ``c`` is later than every point of ``d``."""
    sc, sd = support(c), support(d)
    if not sc or not sd:
        return True
    return min(times[p] for p in sc) > max(times[p] for p in sd)


def causal_check(c, d, times, table, tol: float = 1e-9, ctx: StarContext = DEFAULT_CONTEXT) -> CausalReport:
    """Compare ``T(cd)`` with ``T(c) * T(d)`` numerically.

    Points sharing a label inside one operand are local vertices.  An order
    violation is reported in the status; both sides are still evaluated.
    """
    from .numeric import max_deviation

    sc, sd = support(c), support(d)
    if sc & sd:
        raise ValueError(f"operands share point labels {sorted(sc & sd)}")
    missing = (sc | sd) - set(times)
    if missing:
        raise ValueError(f"no time assigned to labels {sorted(missing)}")
    order_ok = time_separated(c, d, times)
    lhs = tproduct(c * d, ctx, local_vertices=True)
    rhs = star(tproduct(c, ctx, local_vertices=True), tproduct(d, ctx, local_vertices=True), ctx)
    dev = max_deviation(lhs, rhs, table)
    if not order_ok:
        status = "order_violated"
    else:
        status = "pass" if dev <= tol else "fail"
    return CausalReport(status, dev, tol, order_ok, lhs, rhs)
