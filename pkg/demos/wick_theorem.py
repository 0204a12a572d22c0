"""Wick's theorem from the star product.

Run with ``python3 demos/wick_theorem.py``.

The star product of generators at distinct points expands into normal
products plus every way of contracting pairs with Wightman kernels.
Taking the vacuum (scalar) part leaves only the complete contractions.
"""
from hopfwick import format_poly, format_scalar, parse, phi, star, star_power, vacuum


def main():
    a, b = phi(1), phi(2)
    print("phi@1 * phi@2 =", format_poly(star(a, b)))

    # four points: 3 complete pairings survive in the vacuum, each ordered
    # so that the earlier factor sits in the left slot
    four = star_power([phi(i) for i in range(1, 5)])
    print("\ndistinct monomials in phi@1*...*phi@4:", len(four))
    print("<phi@1 ... phi@4> =", format_scalar(vacuum(four)))

    # a square is a normal product, so it never contracts with itself
    sq = parse("phi@1^2")
    print("\nphi@1^2 * phi@2^2 =")
    print("   ", format_poly(star(sq, parse("phi@2^2"))))

    # derivatives ride along as multi-indices on the kernel slots
    d = parse("D[1,0,0,0]phi@1")
    print("\nD[1,0,0,0]phi@1 * phi@2 =", format_poly(star(d, b)))


if __name__ == "__main__":
    main()
