"""Time-ordered products and Green functions.

Run with ``python3 demos/green_functions.py``.

The Green function of 2n distinct points is the sum over the (2n-1)!!
pair partitions of products of Feynman symbols.  Setting every kernel to
one value c turns it into the Gaussian moment (2n-1)!! c^n.
"""
import math
import time

from hopfwick import format_poly, format_scalar, green, parse, tproduct
from hopfwick.numeric import gaussian_moment_check


def main():
    print("T(phi@1*phi@2*phi@3) =", format_poly(tproduct(parse("phi@1*phi@2*phi@3"))))
    print("G(1,2,3,4) =", format_scalar(green([1, 2, 3, 4])))

    print("\n 2n   terms   (2n-1)!!   seconds")
    for n in range(1, 7):
        t0 = time.perf_counter()
        g = green(range(1, 2 * n + 1))
        dt = time.perf_counter() - t0
        print(f"{2 * n:3d} {len(g):7d} {math.prod(range(2 * n - 1, 0, -2)):10d}   {dt:.3f}")

    c = 0.8 + 0.3j
    print("\nGaussian moments with every kernel equal to", c)
    for n in range(0, 5):
        got = gaussian_moment_check(2 * n, c)
        want = math.prod(range(2 * n - 1, 0, -2)) * c ** n
        print(f"  n={n}: {got:.6f}  (expected {want:.6f})")


if __name__ == "__main__":
    main()
