from collections import Counter
from itertools import product
from math import comb

import pytest

from hopfwick.fields import UNIT, FieldPoly, Monomial, generator, phi
from hopfwick.hopf import (
    antipode,
    check_antipode,
    check_coassociative,
    check_cocommutative,
    check_counit,
    coproduct,
    counit,
    sweedler_iter,
)

from randgen import rand_monomial, rand_poly, rng


def subset_coproduct(m: Monomial) -> Counter:
    """Oracle: every subset of factor positions goes left, the rest right."""
    fac = m.factors()
    out = Counter()
    for mask in product((0, 1), repeat=len(fac)):
        left = Monomial(g for g, b in zip(fac, mask) if b)
        right = Monomial(g for g, b in zip(fac, mask) if not b)
        out[(left, right)] += 1
    return out


def as_counter(pairs) -> Counter:
    out = Counter()
    for tp in pairs:
        assert tp.coeff.is_const()
        out[(tp.left, tp.right)] += int(tp.coeff.constant_term())
    return out


def mono(*gens):
    return Monomial(gens)


phi1, phi2 = generator("phi", 1), generator("phi", 2)


def test_primitive_generator():
    assert as_counter(coproduct(phi(1))) == {(mono(phi1), UNIT): 1, (UNIT, mono(phi1)): 1}


def test_square():
    assert as_counter(coproduct(phi(1) ** 2)) == {
        (mono(phi1, phi1), UNIT): 1,
        (mono(phi1), mono(phi1)): 2,
        (UNIT, mono(phi1, phi1)): 1,
    }


def test_two_points():
    assert as_counter(coproduct(phi(1) * phi(2))) == {
        (mono(phi1, phi2), UNIT): 1,
        (mono(phi1), mono(phi2)): 1,
        (mono(phi2), mono(phi1)): 1,
        (UNIT, mono(phi1, phi2)): 1,
    }


@pytest.mark.parametrize("seed", range(40))
def test_coproduct_matches_subset_oracle(seed):
    m = rand_monomial(rng(seed), 5)
    assert as_counter(coproduct(FieldPoly.monomial(m))) == subset_coproduct(m)


def test_coproduct_is_sorted_and_normalized():
    pairs = coproduct(phi(1) ** 3 * phi(2))
    keys = [(tp.left, tp.right) for tp in pairs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_counit():
    assert counit(FieldPoly.const(1)) == 1
    assert counit(phi(1)) == 0
    assert counit(3 + 2 * phi(1)) == 3


def test_antipode():
    assert antipode(FieldPoly.const(1)) == FieldPoly.const(1)
    assert antipode(phi(1)) == -phi(1)
    assert antipode(phi(1) ** 2 * phi(2)) == -(phi(1) ** 2 * phi(2))


def test_antipode_is_multiplicative():
    r = rng(2)
    for _ in range(30):
        a, b = rand_poly(r, max_degree=3), rand_poly(r, max_degree=3)
        assert antipode(a * b) == antipode(a) * antipode(b)


def test_sweedler_iter():
    a = phi(1)
    assert sweedler_iter(a, 1) == [(1, (mono(phi1),))]
    assert [legs for _, legs in sweedler_iter(a, 2)] == sorted([(mono(phi1), UNIT), (UNIT, mono(phi1))])
    three = {legs for _, legs in sweedler_iter(a, 3)}
    assert three == {(mono(phi1), UNIT, UNIT), (UNIT, mono(phi1), UNIT), (UNIT, UNIT, mono(phi1))}


@pytest.mark.parametrize("seed", range(50))
def test_hopf_axioms(seed):
    a = rand_poly(rng(seed), max_degree=5, scalars=True)
    assert check_coassociative(a)
    assert check_counit(a)
    assert check_antipode(a)
    assert check_cocommutative(a)


@pytest.mark.parametrize("n", range(9))
def test_binomial(n):
    got = as_counter(coproduct(phi(1) ** n))
    want = {(mono(*[phi1] * k), mono(*[phi1] * (n - k))): comb(n, k) for k in range(n + 1)}
    assert got == want
