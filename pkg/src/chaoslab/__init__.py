"""Exact desk-scale calculus for finite Rademacher sequences.

The package computes, without sampling error, everything a fourth-moment
analysis of discrete chaos needs at small horizons: exact laws and
distances to the normal, discrete Malliavin operators with their
structural identities, moment engines, explicit distance bounds, and the
counterexample constructions that separate the fourth-moment condition
from asymptotic normality.
"""

from .chaos import (
    ChaosVector,
    ValueTable,
    basis_coefficients,
    basis_synthesis,
    conditional_expectation,
    constant_table,
    evaluate_integral,
    expectation,
    integral_table,
    multiply,
    ou_semigroup,
    project,
    stroock_decompose,
    to_table,
    variance,
)
from .combinat import gamma_m
from .config import Caps, DEFAULT_CAPS, worker_count
from .errors import CapacityError, ChaoslabError, DomainError, FormatError
from .kernels import (
    Kernel,
    SymmetrizedTensor,
    basis_kernel,
    constant_kernel,
    off_diagonal_defect,
    random_kernel,
    symmetrized_tensor,
    tensor_square_residual,
    zero_kernel,
)
from .model import (
    Outcome,
    RademacherModel,
    enumerate_outcomes,
    normalized_value,
    sample,
    sample_y_matrix,
    y_moment,
)

__all__ = [
    "Caps",
    "CapacityError",
    "ChaosVector",
    "ChaoslabError",
    "DEFAULT_CAPS",
    "DomainError",
    "FormatError",
    "Kernel",
    "Outcome",
    "RademacherModel",
    "SymmetrizedTensor",
    "ValueTable",
    "basis_coefficients",
    "basis_kernel",
    "basis_synthesis",
    "conditional_expectation",
    "constant_kernel",
    "constant_table",
    "enumerate_outcomes",
    "evaluate_integral",
    "expectation",
    "gamma_m",
    "integral_table",
    "multiply",
    "normalized_value",
    "off_diagonal_defect",
    "ou_semigroup",
    "project",
    "random_kernel",
    "sample",
    "sample_y_matrix",
    "stroock_decompose",
    "symmetrized_tensor",
    "tensor_square_residual",
    "to_table",
    "variance",
    "worker_count",
    "y_moment",
    "zero_kernel",
]
