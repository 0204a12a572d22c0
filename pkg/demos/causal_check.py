"""Causal factorization T(cd) = T(c) * T(d), tested numerically.

Run with ``python3 demos/causal_check.py``.

The identity only holds when every point of c is later than every point
of d.  Kernel values are random, but each Feynman value is tied to the
Wightman value with the later point on the left.  Reversing the times
breaks the identity, and the check reports it.
"""
import random

from hopfwick import causal_check, parse, tproduct
from hopfwick.numeric import consistent_kernel_table
from hopfwick.scalars import WIGHTMAN, propagator


def run(c_text, d_text, times, seed=0):
    c, d = parse(c_text), parse(d_text)
    syms = set()
    for _, s in tproduct(c * d, local_vertices=True).items():
        syms |= s.symbols()
    # Wightman values in both orders, so the star product side is covered too
    pts = sorted(times)
    syms |= {propagator(WIGHTMAN, p, q) for p in pts for q in pts if p != q}
    table = consistent_kernel_table(syms, times, random.Random(seed))
    rep = causal_check(c, d, times, table)
    print(f"c = {c_text:12s} d = {d_text:12s} times {times}: {rep.status}, max deviation {rep.max_deviation:.2e}")


def main():
    run("phi@1", "phi@2", {1: 1.0, 2: 0.0})
    run("phi@1^2", "phi@2^2", {1: 1.0, 2: 0.0})
    run("phi@1*phi@2", "phi@3^3", {1: 2.0, 2: 1.5, 3: -1.0})
    # same operands, wrong time order
    run("phi@1", "phi@2", {1: 0.0, 2: 1.0})
    run("phi@1^2", "phi@2^2", {1: 0.0, 2: 1.0})


if __name__ == "__main__":
    main()
