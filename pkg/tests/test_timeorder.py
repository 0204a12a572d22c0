import random
from itertools import combinations

import pytest

from hopfwick.errors import DiagonalPoint
from hopfwick.fields import FieldPoly, Monomial, generator, phi, relabel
from hopfwick.laplace import KernelRegistry
from hopfwick.numeric import KernelTable, consistent_kernel_table, pair_partition_oracle
from hopfwick.quantize import FORMAL_SYMBOL, StarContext, vacuum
from hopfwick.scalars import FEYNMAN, WIGHTMAN, ScalarPoly, propagator
from hopfwick.timeorder import causal_check, green, tproduct


def DF(p, q):
    return ScalarPoly.symbol(propagator(FEYNMAN, p, q))


def points(n):
    return FieldPoly.monomial(Monomial(generator("phi", i) for i in range(1, n + 1)))


def brute_tproduct(n: int) -> FieldPoly:
    """Oracle: for each even subset of labels, every perfect matching of it."""
    out = FieldPoly()
    labels = list(range(1, n + 1))
    for size in range(0, n + 1, 2):
        for subset in combinations(labels, size):
            rest = Monomial(generator("phi", i) for i in labels if i not in subset)
            for matching in pair_partition_oracle(size):
                coeff = ScalarPoly.const(1)
                for a, b in matching:
                    coeff = coeff * DF(subset[a - 1], subset[b - 1])
                out = out + FieldPoly.monomial(rest, coeff)
    return out


def test_single_generator():
    assert tproduct(phi(1)) == phi(1)
    assert tproduct(FieldPoly.const(1)) == FieldPoly.const(1)


def test_two_points():
    assert tproduct(phi(1) * phi(2)) == phi(1) * phi(2) + DF(1, 2)


def test_four_point_vacuum():
    want = DF(1, 2) * DF(3, 4) + DF(1, 3) * DF(2, 4) + DF(1, 4) * DF(2, 3)
    assert vacuum(tproduct(points(4))) == want


def test_feynman_symbol_is_symmetric():
    a = tproduct(phi(2) * phi(1, (1, 0, 0, 0)))
    b = tproduct(phi(1, (1, 0, 0, 0)) * phi(2))
    assert a == b


@pytest.mark.parametrize("n", range(0, 8))
def test_matches_brute_force(n):
    assert tproduct(points(n)) == brute_tproduct(n)


def test_term_count_degree_four():
    t = tproduct(points(4))
    assert sum(len(c) for _, c in t.items()) == 10


def test_diagonal_point():
    with pytest.raises(DiagonalPoint):
        tproduct(phi(1) ** 2)
    assert tproduct(phi(1) ** 2 * phi(2), local_vertices=True) == phi(1) ** 2 * phi(2) + (phi(1) * 2).scale(DF(1, 2))
    d11 = ScalarPoly.symbol(propagator(FEYNMAN, 1, 1, allow_diagonal=True))
    ctx = StarContext(diagonal_policy=FORMAL_SYMBOL)
    assert tproduct(phi(1) ** 2, ctx) == phi(1) ** 2 + d11


def test_green_examples():
    assert green([1, 2]) == DF(1, 2)
    assert len(green(range(1, 7))) == 15
    assert green([1, 2, 3]) == 0
    with pytest.raises(DiagonalPoint):
        green([1, 1])


@pytest.mark.parametrize("n", range(1, 7))
def test_green_counts_and_squarefree(n):
    g = green(range(1, 2 * n + 1))
    want = 1
    for k in range(1, 2 * n, 2):
        want *= k
    assert len(g) == want
    for key, c in g.items():
        assert c == 1
        assert all(p == 1 for _, p in key) and len(key) == n


def test_green_relabel_covariance():
    r = random.Random(4)
    gens = [generator("phi", i, r.choice([None, (1, 0, 0, 0)])) for i in range(1, 7)]
    base = green(gens)
    for _ in range(10):
        perm = list(range(1, 7))
        r.shuffle(perm)
        sigma = dict(zip(range(1, 7), perm))
        moved = green([g.relabel(sigma) for g in gens])
        assert FieldPoly.const(moved) == relabel(FieldPoly.const(base), sigma)


def test_green_with_derivatives_and_species():
    g = green([("phi", 1, (1, 0, 0, 0)), ("phi", 2, None)])
    assert g == ScalarPoly.symbol(propagator(FEYNMAN, (1, (1, 0, 0, 0)), (2, None)))
    assert green([("phi", 1, None), ("psi", 2, None)]) == 0


def test_causal_pair_of_generators():
    times = {1: 1.0, 2: 0.0}
    table = KernelTable({
        propagator(WIGHTMAN, 1, 2): 0.25 + 0.5j,
        propagator(WIGHTMAN, 2, 1): -0.75 + 0.1j,
        propagator(FEYNMAN, 1, 2): 0.25 + 0.5j,
    })
    rep = causal_check(phi(1), phi(2), times, table, 1e-12)
    assert rep.passed and rep.max_deviation <= 1e-12


def test_causal_squares():
    times = {1: 2.0, 2: -1.0}
    c, d = phi(1) ** 2, phi(2) ** 2
    table = consistent_kernel_table([propagator(FEYNMAN, 1, 2)], times, random.Random(0))
    rep = causal_check(c, d, times, table, 1e-9)
    assert rep.passed
    assert len(rep.lhs) == len(rep.rhs) == 3


def test_causal_counterexample_when_order_reversed():
    times = {1: 0.0, 2: 1.0}
    table = consistent_kernel_table([propagator(FEYNMAN, 1, 2), propagator(WIGHTMAN, 1, 2)], times, random.Random(1))
    assert table[propagator(WIGHTMAN, 1, 2)] != table[propagator(WIGHTMAN, 2, 1)]
    rep = causal_check(phi(1), phi(2), times, table, 1e-9)
    assert not rep.passed
    assert rep.status == "order_violated"
    assert rep.max_deviation > 1e-3


def test_causal_check_rejects_shared_labels():
    with pytest.raises(ValueError):
        causal_check(phi(1), phi(1), {1: 0.0}, KernelTable(), 1e-9)


CROSS = StarContext(KernelRegistry({("phi", "psi"): "Wpp", ("psi", "phi"): "Wqp"}))


def test_cross_species_kernel_kind_and_orientation():
    # the phi slot goes left whichever order the factors come in
    want = ScalarPoly.symbol(propagator("T[Wpp|Wqp]", 2, 1))
    assert green([("psi", 1, None), ("phi", 2, None)], CROSS) == want
    assert green([("phi", 2, None), ("psi", 1, None)], CROSS) == want
    assert green([("phi", 1, None), ("phi", 2, None)], CROSS) == 0


def test_symmetric_named_kind_sorts_slots():
    ctx = StarContext(KernelRegistry({("chi", "chi"): "Kc"}))
    g = green([("chi", 2, None), ("chi", 1, None)], ctx)
    assert g == ScalarPoly.symbol(propagator("T[Kc|Kc]", 1, 2))
    assert propagator("T[Kc|Kc]", 2, 1) == propagator("T[Kc|Kc]", 1, 2)
    assert propagator("T[Kc|Kd]", 2, 1) != propagator("T[Kc|Kd]", 1, 2)


@pytest.mark.parametrize("later", [1, 2])
@pytest.mark.parametrize("one_sided", [False, True])
def test_cross_species_causal(later, one_sided):
    entries = {("phi", "psi"): "Wpp"} if one_sided else {("phi", "psi"): "Wpp", ("psi", "phi"): "Wqp"}
    ctx = StarContext(KernelRegistry(entries))
    first, second = (phi(1), phi(2, field="psi")) if later == 1 else (phi(1, field="psi"), phi(2))
    times = {1: 1.0, 2: 0.0}
    lhs = tproduct(first * second, ctx)
    rhs_syms = {s for _, c in lhs.items() for s in c.symbols()}
    table = consistent_kernel_table(rhs_syms | {propagator("Wpp", 1, 2), propagator("Wpp", 2, 1),
                                                propagator("Wqp", 1, 2), propagator("Wqp", 2, 1)}, times, random.Random(5))
    rep = causal_check(first, second, times, table, 1e-12, ctx)
    assert rep.passed, rep


def test_one_sided_registration_vanishes_for_wrong_order():
    sym = propagator("T[Wpp|]", 1, 2)  # phi@1, psi@2
    table = consistent_kernel_table([sym], {1: 0.0, 2: 1.0}, random.Random(0))
    assert table[sym] == 0
    table = consistent_kernel_table([sym], {1: 1.0, 2: 0.0}, random.Random(0))
    assert table[sym] == table[propagator("Wpp", 1, 2)] != 0
