"""Numeric instantiation of formal scalars, plus brute-force oracles.

Kernel tables assign complex numbers to canonical propagator symbols.
Lookups are strict: a symbol without an entry raises ``MissingKernelValue``.
"""
from __future__ import annotations

import cmath
import json
import random
from typing import Iterable, Mapping

from .errors import MissingKernelValue, OddCount
from .fields import FieldPoly
from .scalars import PropagatorSymbol, ScalarPoly, canonical_symbol, propagator, split_time_ordered


class KernelTable:
    """Mapping from propagator symbols to finite complex values."""

    def __init__(self, values: Mapping[PropagatorSymbol, complex] | None = None):
        self._values: dict = {}
        for sym, v in (values or {}).items():
            self[sym] = v

    def __setitem__(self, sym: PropagatorSymbol, value) -> None:
        value = complex(value)
        if not (cmath.isfinite(value)):
            raise ValueError(f"kernel value for {sym} is not finite: {value}")
        self._values[canonical_symbol(sym)] = value

    def __getitem__(self, sym: PropagatorSymbol) -> complex:
        try:
            return self._values[sym]
        except KeyError:
            raise MissingKernelValue(sym) from None

    def __contains__(self, sym) -> bool:
        return sym in self._values

    def __len__(self):
        return len(self._values)

    def items(self):
        return self._values.items()

    def to_json(self) -> dict:
        rows = []
        for sym, v in sorted(self._values.items()):
            (p, a), (q, b) = sym.left, sym.right
            rows.append({
                "kind": sym.kind,
                "left": {"point": p, "deriv": list(a)},
                "right": {"point": q, "deriv": list(b)},
                "re": v.real,
                "im": v.imag,
            })
        return {"kernels": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "KernelTable":
        table = cls()
        for row in obj["kernels"]:
            sym = propagator(
                row["kind"],
                (row["left"]["point"], row["left"]["deriv"]),
                (row["right"]["point"], row["right"]["deriv"]),
                allow_diagonal=True,
            )
            table[sym] = complex(row.get("re", 0.0), row.get("im", 0.0))
        return table

    @classmethod
    def load(cls, path) -> "KernelTable":
        with open(path) as f:
            return cls.from_json(json.load(f))


def load_times(path) -> dict[int, float]:
    """Read ``{"times": {"1": 0.0, ...}}``."""
    with open(path) as f:
        return times_from_json(json.load(f))


def times_from_json(obj: dict) -> dict[int, float]:
    out = {}
    for k, v in obj["times"].items():
        t = float(v)
        if not cmath.isfinite(t):
            raise ValueError(f"time for label {k} is not finite")
        out[int(k)] = t
    return out


def eval_scalar(s: ScalarPoly, table: KernelTable) -> complex:
    total = 0j
    for key, c in s.items():
        term = complex(float(c))
        for sym, p in key:
            term *= table[sym] ** p
        total += term
    return total


def eval_poly(a: FieldPoly, table: KernelTable) -> dict:
    """Numeric coefficient of every monomial of ``a``."""
    return {m: eval_scalar(c, table) for m, c in a.items()}


def max_deviation(a: FieldPoly, b: FieldPoly, table: KernelTable) -> float:
    ea, eb = eval_poly(a, table), eval_poly(b, table)
    return max((abs(ea.get(m, 0j) - eb.get(m, 0j)) for m in set(ea) | set(eb)), default=0.0)


def _random_value(rng: random.Random) -> complex:
    return complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))


def consistent_kernel_table(symbols: Iterable[PropagatorSymbol], times: Mapping[int, float],
                            rng: random.Random | None = None, table: KernelTable | None = None) -> KernelTable:
    """Random values obeying D_F(i,j) = D+(later, earlier).

    Ordered kernels get independent random values.  Each time-ordered
    symbol ``T[fwd|bwd](x, y)`` copies ``fwd(x, y)`` when x is later and
    ``bwd(y, x)`` otherwise (0 if that kernel is not registered); the
    Feynman kind is the case fwd = bwd = Wightman.
    """
    rng = rng or random.Random()
    table = table if table is not None else KernelTable()
    ordered = []
    for sym in sorted(set(symbols)):
        if split_time_ordered(sym.kind) is not None:
            ordered.append(sym)
        elif sym not in table:
            table[sym] = _random_value(rng)
    for sym in ordered:
        fwd, bwd = split_time_ordered(sym.kind)
        (p, a), (q, b) = sym.left, sym.right
        if times[p] == times[q]:
            raise ValueError(f"equal times at labels {p} and {q}: time-ordered value undetermined")
        kind, slots = (fwd, ((p, a), (q, b))) if times[p] > times[q] else (bwd, ((q, b), (p, a)))
        if kind is None:
            table[sym] = 0
            continue
        w = propagator(kind, *slots, allow_diagonal=True)
        if w not in table:
            table[w] = _random_value(rng)
        table[sym] = table[w]
    return table


def pair_partition_oracle(n2: int) -> list[tuple[tuple[int, int], ...]]:
    """All perfect matchings of {1..n2}: the smallest free element pairs with each larger one."""
    if n2 % 2:
        raise OddCount(f"{n2} elements admit no perfect matching")
    if n2 < 0 or n2 > 16:
        raise ValueError("oracle is limited to 0 <= n2 <= 16")

    def rec(items):
        if not items:
            return [()]
        first, rest = items[0], items[1:]
        out = []
        for i, other in enumerate(rest):
            for tail in rec(rest[:i] + rest[i + 1:]):
                out.append(((first, other),) + tail)
        return out

    return rec(tuple(range(1, n2 + 1)))


def gaussian_moment_check(n2: int, c: complex) -> complex:
    """Green function on ``n2`` points with every Feynman kernel set to ``c``."""
    from .timeorder import green

    if n2 < 0 or n2 > 16:
        raise ValueError("n2 must lie in 0..16")
    g = green(range(1, n2 + 1))
    table = KernelTable({s: c for s in g.symbols()})
    return eval_scalar(g, table)
