"""Two field species with their own kernels.

Run with ``python3 demos/two_species.py``.

A registry says which species pairs contract and through which kernel.
Unregistered pairs simply do not contract.  Inside a time-ordered product
a cross-species pair uses a kernel named after both orderings.
"""
from hopfwick import KernelRegistry, StarContext, format_poly, format_scalar, green, parse, star
from hopfwick.laplace import laplace_pair


def main():
    reg = KernelRegistry({("phi", "phi"): "wightman", ("psi", "psi"): "wightman",
                          ("phi", "psi"): "Wpp", ("psi", "phi"): "Wqp"})
    ctx = StarContext(reg)
    a, b = parse("phi@1*psi@1"), parse("psi@2")

    print("default registry (phi only):")
    print("    (phi@1*psi@1) * psi@2 =", format_poly(star(a, b)))
    print("with psi and cross kernels:")
    print("    (phi@1*psi@1) * psi@2 =", format_poly(star(a, b, ctx)))

    print("\npairing (phi@1*psi@2 | phi@3*psi@4) =",
          format_scalar(laplace_pair(parse("phi@1*psi@2"), parse("phi@3*psi@4"), reg)))
    print("G(psi@1, phi@2) =", format_scalar(green([("psi", 1, None), ("phi", 2, None)], ctx)))


if __name__ == "__main__":
    main()
