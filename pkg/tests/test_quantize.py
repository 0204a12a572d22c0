from itertools import combinations, permutations

import pytest

from hopfwick.errors import DiagonalContraction
from hopfwick.fields import FieldPoly, Monomial, normal_mul, phi
from hopfwick.laplace import KernelRegistry, laplace_pair, pair_generators
from hopfwick.numeric import pair_partition_oracle
from hopfwick.quantize import FORMAL_SYMBOL, StarContext, star, star_power, star_via_coproduct, vacuum
from hopfwick.scalars import WIGHTMAN, ScalarPoly, propagator

from randgen import rand_monomial, rand_poly, rng

REG2 = KernelRegistry({("phi", "phi"): WIGHTMAN, ("phi", "psi"): "Wpp", ("psi", "phi"): "Wqp"})
CTX2 = StarContext(REG2)


def D(p, q):
    return ScalarPoly.symbol(propagator(WIGHTMAN, p, q))


def brute_star_monomials(h: Monomial, k: Monomial, reg) -> FieldPoly:
    """Oracle: partial matchings between factor positions, enumerated directly."""
    fh, fk = h.factors(), k.factors()
    out = FieldPoly()
    for j in range(min(len(fh), len(fk)) + 1):
        for A in combinations(range(len(fh)), j):
            for B in combinations(range(len(fk)), j):
                for perm in permutations(B):
                    coeff = ScalarPoly.const(1)
                    for i, jj in zip(A, perm):
                        coeff = coeff * pair_generators(fh[i], fk[jj], reg)
                    rest = Monomial([g for i, g in enumerate(fh) if i not in A] +
                                    [g for i, g in enumerate(fk) if i not in B])
                    out = out + FieldPoly.monomial(rest, coeff)
    return out


def brute_star(c, d, reg):
    out = FieldPoly()
    for h, u in c.items():
        for k, v in d.items():
            out = out + brute_star_monomials(h, k, reg).scale(u * v)
    return out


def test_wick_theorem():
    assert star(phi(1), phi(2)) == phi(1) * phi(2) + D(1, 2)


def test_unit():
    c = rand_poly(rng(0), scalars=True)
    one = FieldPoly.const(1)
    assert star(one, c) == c == star(c, one)


def test_square_square():
    want = phi(1) ** 2 * phi(2) ** 2 + (phi(1) * phi(2)).scale(4 * D(1, 2)) + FieldPoly.const(2 * D(1, 2) ** 2)
    assert star(phi(1) ** 2, phi(2) ** 2) == want
    assert brute_star(phi(1) ** 2, phi(2) ** 2, REG2) == want


@pytest.mark.parametrize("seed", range(40))
def test_star_matches_oracles(seed):
    r = rng(seed)
    c = rand_poly(r, max_degree=4, points=(1, 2), scalars=True)
    d = rand_poly(r, max_degree=4, points=(3, 4), scalars=True)
    got = star(c, d, CTX2)
    assert got == brute_star(c, d, REG2)
    assert got == star_via_coproduct(c, d, CTX2)


def test_overlapping_support_rejected():
    with pytest.raises(DiagonalContraction):
        star(phi(1), phi(1))
    ctx = StarContext(diagonal_policy=FORMAL_SYMBOL)
    d11 = ScalarPoly.symbol(propagator(WIGHTMAN, 1, 1, allow_diagonal=True))
    assert star(phi(1), phi(1), ctx) == phi(1) ** 2 + d11


def test_vacuum():
    assert vacuum(star(phi(1), phi(2))) == D(1, 2)
    assert vacuum(FieldPoly.const(1)) == 1
    assert vacuum(star_power([phi(1), phi(2), phi(3)])) == 0


def test_star_power():
    assert star_power([phi(1)]) == phi(1)
    assert star_power([phi(1), phi(2)]) == star(phi(1), phi(2))
    want = D(1, 2) * D(3, 4) + D(1, 3) * D(2, 4) + D(1, 4) * D(2, 3)
    assert vacuum(star_power([phi(i) for i in range(1, 5)])) == want


@pytest.mark.parametrize("n", range(1, 6))
def test_ordered_isserlis(n):
    got = vacuum(star_power([phi(i) for i in range(1, 2 * n + 1)]))
    want = ScalarPoly.const(0)
    for matching in pair_partition_oracle(2 * n):
        term = ScalarPoly.const(1)
        for i, j in matching:
            term = term * D(i, j)
        want = want + term
    assert got == want
    assert all(c == 1 for _, c in got.items())


def disjoint_triple(seed, max_degree=4):
    r = rng(seed)
    return tuple(
        rand_poly(r, max_terms=2, max_degree=max_degree, points=pts, species=("phi", "psi"), scalars=r.random() < 0.3)
        for pts in ((1, 2), (3, 4), (5, 6))
    )


@pytest.mark.parametrize("seed", range(30))
def test_associativity(seed):
    a, b, c = disjoint_triple(seed, 3)
    assert star(star(a, b, CTX2), c, CTX2) == star(a, star(b, c, CTX2), CTX2)


@pytest.mark.parametrize("seed", range(30))
def test_frobenius(seed):
    a, b, c = disjoint_triple(seed, 3)
    assert laplace_pair(star(a, b, CTX2), c, REG2) == laplace_pair(a, star(b, c, CTX2), REG2)


@pytest.mark.parametrize("seed", range(30))
def test_vacuum_of_equal_degree_product_is_pairing(seed):
    r = rng(seed)
    deg = r.randint(0, 4)
    a = FieldPoly.monomial(rand_monomial(r, points=(1, 2), degree=deg), 2)
    b = FieldPoly.monomial(rand_monomial(r, points=(3, 4), degree=deg)) + FieldPoly.monomial(
        rand_monomial(r, points=(3, 4), degree=deg), -1)
    assert vacuum(star(a, b, CTX2)) == laplace_pair(a, b, REG2)


@pytest.mark.parametrize("seed", range(20))
def test_leading_term_is_normal_product(seed):
    r = rng(seed)
    h = rand_monomial(r, 4, points=(1, 2))
    k = rand_monomial(r, 4, points=(3, 4))
    got = star(FieldPoly.monomial(h), FieldPoly.monomial(k), CTX2)
    assert got.coeff(h * k) == 1
    assert FieldPoly.monomial(h) * FieldPoly.monomial(k) == normal_mul(FieldPoly.monomial(h), FieldPoly.monomial(k))


def test_context_description_is_recorded():
    desc = StarContext().describe()
    assert desc["diagonal_policy"] == "reject"
    assert desc["registry"]["pairs"] == [{"fieldA": "phi", "fieldB": "phi", "kind": "wightman"}]
