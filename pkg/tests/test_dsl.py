from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfwick import config
from hopfwick.dsl import Gen, Num, Pow, Prod, Sum, format_poly, parse, parse_ast
from hopfwick.errors import DimensionMismatch, ExprSyntaxError
from hopfwick.fields import FieldPoly, generator, phi
from hopfwick.quantize import star

from randgen import rand_poly, rng


def test_square():
    assert parse("phi@1 * phi@1") == phi(1) ** 2


def test_normal_product_example():
    p = parse("phi@1^4 * D[1,0,0,0]phi@2 * D[1,0,0,0]phi@2")
    (m, c), = p.items()
    assert c == 1 and m.degree == 6
    assert dict(m) == {generator("phi", 1): 4, generator("phi", 2, (1, 0, 0, 0)): 2}


def test_linear_combination():
    p = parse("1/2 * phi@1 + phi@2")
    assert p.coeff([generator("phi", 1)]) == Fraction(1, 2)
    assert p.coeff([generator("phi", 2)]) == 1


def test_ast_shapes():
    assert parse_ast("2") == Num(Fraction(2))
    assert parse_ast("phi@3^2") == Pow(Gen("phi", 3, None), 2)
    assert isinstance(parse_ast("a@1*b@2"), Prod)
    assert isinstance(parse_ast("-a@1"), Sum)


def test_print_examples():
    assert format_poly(parse("phi@2 * phi@1")) == "phi@1*phi@2"
    assert format_poly(FieldPoly.const(1)) == "1"
    assert format_poly(FieldPoly()) == "0"
    assert format_poly(star(phi(1), phi(2))) == "phi@1*phi@2 + Dplus(1,2;[0,0,0,0],[0,0,0,0])"


def test_whitespace_insensitive():
    assert parse("  phi @ 1*\tphi@2 ") == parse("phi@1*phi@2")


@pytest.mark.parametrize("text, offset", [("phi@1 +", 7), ("phi@", 4), ("phi@1 $ 2", 6), ("1/0", 2), ("(phi@1", 6),
                                          ("é + x", 0), ("phi@1 + é", 8)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as exc:
        parse(text)
    assert exc.value.offset == offset


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        parse("D[1,0]phi@1")
    with config.dimension(2):
        want = FieldPoly.gen(generator("phi", 1, (1, 0)))
    assert parse("D[1,0]phi@1", dim=2) == want


@pytest.mark.parametrize("seed", range(100))
def test_round_trip(seed):
    p = rand_poly(rng(seed), max_terms=4, max_degree=5, scalars=True)
    text = format_poly(p)
    assert parse(text) == p
    assert format_poly(parse(text)) == text


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=100)
def test_print_parse_idempotent(seed):
    text = format_poly(rand_poly(rng(seed), scalars=True))
    once = format_poly(parse(text))
    assert format_poly(parse(once)) == once == text


def test_named_kernels_round_trip():
    text = "K{Wpp}(1,2;[0,0,0,0],[1,0,0,0])*phi@3 - 3/4"
    assert format_poly(parse(text)) == text


def test_time_ordered_kernel_names_round_trip():
    text = "K{T[Wpp|Wqp]}(2,1;[0,0,0,0],[0,0,0,0]) + K{T[Wpp|]}(1,3;[0,0,0,0],[0,0,0,0])*psi@4"
    p = parse(text)
    assert parse(format_poly(p)) == p


def test_empty_kernel_name_rejected():
    with pytest.raises(ExprSyntaxError):
        parse("K{}(1,2;[0,0,0,0],[0,0,0,0])")
