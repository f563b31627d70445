"""Exact symbolic engine for generalized quantum Zernike Hamiltonians.

Subpackages cover the normal-ordered Weyl algebra, the higher-order
symmetries and their polynomial Higgs-type algebra, the deformed-oscillator
structure functions, the algebraic spectrum solver, an exact graded-matrix
oracle, and the curved-oscillator applications.
"""

from ._kernels import KERNEL_NAME
from .scalars import GaussianRational, MissingParameterError, ParamScalar, gamma
from .weyl import (
    P1,
    P2,
    Q1,
    Q2,
    WeylOperator,
    commutator,
    grade_spectrum,
    identity,
    normal_product,
    substitute_params,
)

__version__ = "0.1.0"
SCHEMA_VERSION = "1.0.0"

__all__ = [
    "KERNEL_NAME",
    "SCHEMA_VERSION",
    "GaussianRational",
    "ParamScalar",
    "MissingParameterError",
    "gamma",
    "WeylOperator",
    "Q1",
    "Q2",
    "P1",
    "P2",
    "identity",
    "normal_product",
    "commutator",
    "grade_spectrum",
    "substitute_params",
    "__version__",
]
