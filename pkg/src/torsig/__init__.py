"""Exact-arithmetic toolkit for simple rational polytopes and their normal fans.

Everything is computed over exact rationals (`fractions.Fraction` scalars,
integer lattice vectors): convex hulls and face lattices of rational
polytopes, complete simplicial fans with a three-level convexity classifier,
f/h-vector invariants, and toric intersection numbers that recover the
alternating h-vector sum as a signature.

All public values are immutable after construction and all operations are
pure functions, so the API is safe to use from concurrent contexts.
"""

from torsig.errors import (
    EmptyError,
    NotABasisError,
    NotSimpleError,
    NotSimplicialError,
    OddDimensionError,
    StepLimitError,
    TorsigError,
    UnboundedError,
    WrongDegreeError,
    ZeroVectorError,
)
from torsig.polytope import AngleClass, Facet, Polytope, product
from torsig.fan import ConvexityClass, Fan, arrangement_fan, classify, normal_fan

__all__ = [
    "AngleClass",
    "ConvexityClass",
    "EmptyError",
    "Facet",
    "Fan",
    "NotABasisError",
    "NotSimpleError",
    "NotSimplicialError",
    "OddDimensionError",
    "Polytope",
    "StepLimitError",
    "TorsigError",
    "UnboundedError",
    "WrongDegreeError",
    "ZeroVectorError",
    "arrangement_fan",
    "classify",
    "normal_fan",
    "product",
]
