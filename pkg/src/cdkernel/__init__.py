"""Exact multivariable Christoffel-Darboux kernels for discrete measures."""

from .errors import (
    CDKernelError,
    CoincidentPoints,
    DegenerateBasis,
    DegenerateMeasure,
    InvalidArgument,
    InvalidArity,
    InvalidMeasure,
    InvalidPartition,
    NotAntisymmetric,
    ParseError,
    SingularInput,
)
from .identities import (
    FreeInput,
    cauchy_sides,
    iw_sides,
    rains_sides,
    ssc_sides,
    sundquist_sides,
)
from .kernels import (
    ROUTES,
    SchurExpansion,
    SqrtChoice,
    ZetaChoice,
    contraction_check,
    general_expansion,
    hodge_check,
    hodge_star,
    km_confluent,
    km_eval,
    km_pfaffian,
    km_polynomial,
    schur_expansion,
)
from .linalg import determinant, pfaffian
from .measure import Measure, integrate_sym, moment, pair, parse_measure
from .ortho import OrthoSystem, basis_minor, build_system, cd_kernel
from .poly import (
    MultiPoly,
    divide_by_vandermonde,
    poly_derivative,
    poly_eval,
    schur_polynomial,
    vandermonde_poly,
)

__version__ = "0.1.0"

__all__ = [
    "CDKernelError",
    "CoincidentPoints",
    "DegenerateBasis",
    "DegenerateMeasure",
    "FreeInput",
    "InvalidArgument",
    "InvalidArity",
    "InvalidMeasure",
    "InvalidPartition",
    "Measure",
    "MultiPoly",
    "NotAntisymmetric",
    "OrthoSystem",
    "ParseError",
    "ROUTES",
    "SchurExpansion",
    "SingularInput",
    "SqrtChoice",
    "ZetaChoice",
    "basis_minor",
    "build_system",
    "cauchy_sides",
    "cd_kernel",
    "contraction_check",
    "determinant",
    "divide_by_vandermonde",
    "general_expansion",
    "hodge_check",
    "hodge_star",
    "integrate_sym",
    "iw_sides",
    "km_confluent",
    "km_eval",
    "km_pfaffian",
    "km_polynomial",
    "moment",
    "pair",
    "parse_measure",
    "pfaffian",
    "poly_derivative",
    "poly_eval",
    "rains_sides",
    "schur_expansion",
    "schur_polynomial",
    "ssc_sides",
    "sundquist_sides",
    "vandermonde_poly",
]
