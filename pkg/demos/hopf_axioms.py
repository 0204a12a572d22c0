"""The Hopf algebra on field polynomials, checked on random elements.

Run with ``python3 demos/hopf_axioms.py``.

Generators are primitive, so the coproduct of a power is a binomial
sum, the counit keeps only the scalar part and the antipode flips the
sign of odd monomials.
"""
import random

from hopfwick import coproduct, parse
from hopfwick.dsl import format_monomial, format_scalar
from hopfwick.fields import FieldPoly, Monomial, generator
from hopfwick.hopf import check_antipode, check_coassociative, check_cocommutative, check_counit


def show_coproduct(text):
    print(f"Delta({text}) =")
    for tp in coproduct(parse(text)):
        print(f"    {format_scalar(tp.coeff):>3}  {format_monomial(tp.left)} (x) {format_monomial(tp.right)}")


def random_poly(rng, n_terms=3):
    out = FieldPoly()
    for _ in range(n_terms):
        gens = [generator(rng.choice(["phi", "psi"]), rng.randint(1, 3)) for _ in range(rng.randint(0, 4))]
        out = out + FieldPoly.monomial(Monomial(gens), rng.randint(-3, 3))
    return out


def main():
    show_coproduct("phi@1^3")
    show_coproduct("phi@1*psi@2")

    rng = random.Random(7)
    checks = [check_coassociative, check_counit, check_antipode, check_cocommutative]
    ok = {c.__name__: 0 for c in checks}
    for _ in range(100):
        a = random_poly(rng)
        for c in checks:
            ok[c.__name__] += bool(c(a))
    print()
    for name, n in ok.items():
        print(f"{name:22s} {n}/100")


if __name__ == "__main__":
    main()
