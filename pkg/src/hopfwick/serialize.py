"""JSON forms of symbols, scalar polynomials, field polynomials and tensors."""
from __future__ import annotations

from fractions import Fraction

from .fields import FieldPoly, Generator, Monomial, generator
from .hopf import TensorPair
from .scalars import PropagatorSymbol, ScalarPoly, propagator


def _slot_json(slot) -> dict:
    return {"point": slot[0], "deriv": list(slot[1])}


def symbol_to_json(sym: PropagatorSymbol, power: int | None = None) -> dict:
    out = {"kind": sym.kind, "left": _slot_json(sym.left), "right": _slot_json(sym.right)}
    if power is not None:
        out["power"] = power
    return out


def symbol_from_json(obj: dict) -> PropagatorSymbol:
    return propagator(
        obj["kind"],
        (obj["left"]["point"], obj["left"]["deriv"]),
        (obj["right"]["point"], obj["right"]["deriv"]),
        allow_diagonal=True,
    )


def _frac(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def scalar_to_json(s: ScalarPoly) -> list:
    """``[{"coeff": "p/q", "symbols": [{kind, left, right, power}]}]``"""
    return [{"coeff": _frac(c), "symbols": [symbol_to_json(sym, p) for sym, p in key]} for key, c in s.sorted_terms()]


def scalar_from_json(rows: list) -> ScalarPoly:
    terms = {}
    for row in rows:
        key = tuple((symbol_from_json(sym), int(sym.get("power", 1))) for sym in row["symbols"])
        terms[key] = terms.get(key, 0) + Fraction(row["coeff"])
    return ScalarPoly(terms)


def generator_to_json(g: Generator) -> dict:
    return {"field": g.field, "point": g.point, "deriv": list(g.deriv)}


def generator_from_json(obj: dict) -> Generator:
    return generator(obj["field"], obj["point"], obj["deriv"])


def monomial_to_json(m: Monomial) -> list:
    return [dict(generator_to_json(g), power=p) for g, p in m]


def monomial_from_json(rows: list) -> Monomial:
    return Monomial((generator_from_json(r), int(r.get("power", 1))) for r in rows)


def poly_to_json(p: FieldPoly) -> dict:
    return {"terms": [{"coeff": scalar_to_json(c), "monomial": monomial_to_json(m)} for m, c in p.sorted_terms()]}


def poly_from_json(obj: dict) -> FieldPoly:
    out = FieldPoly()
    for t in obj["terms"]:
        out = out + FieldPoly.monomial(monomial_from_json(t["monomial"]), scalar_from_json(t["coeff"]))
    return out


def coproduct_to_json(pairs: list[TensorPair]) -> dict:
    return {
        "pairs": [
            {"coeff": scalar_to_json(tp.coeff), "left": monomial_to_json(tp.left), "right": monomial_to_json(tp.right)}
            for tp in pairs
        ]
    }
