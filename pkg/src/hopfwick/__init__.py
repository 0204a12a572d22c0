"""Hopf-algebraic Wick calculus: field polynomials at labeled points,
the Laplace pairing, the star product and time-ordered products."""

from .config import dimension, get_dim, set_dim
from .dsl import format_poly, format_scalar, parse
from .errors import (
    DiagonalContraction,
    DiagonalPoint,
    DimensionMismatch,
    ExprSyntaxError,
    HopfWickError,
    LabelOverflow,
    MissingKernelValue,
    NotInjective,
    OddCount,
)
from .fields import FieldPoly, Generator, Monomial, embed, generator, normal_mul, phi, relabel, support
from .hopf import TensorPair, antipode, coproduct, counit, sweedler_iter
from .laplace import KernelRegistry, laplace_pair, laplace_pair_recursive, pair_generators
from .numeric import (
    KernelTable,
    consistent_kernel_table,
    eval_poly,
    eval_scalar,
    gaussian_moment_check,
    pair_partition_oracle,
)
from .quantize import StarContext, star, star_power, star_via_coproduct, vacuum
from .scalars import (
    FEYNMAN,
    WIGHTMAN,
    PropagatorSymbol,
    ScalarPoly,
    propagator,
    scalar_add,
    scalar_mul,
    time_ordered_kind,
)
from .timeorder import CausalReport, causal_check, green, tproduct

__version__ = "0.1.0"
