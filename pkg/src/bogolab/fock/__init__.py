"""Occupation-number spaces, sparse operators and the excitation map."""

from .basis import FockBasis, basis, basis_size, fixed_N, truncated
from .eigen import eig_dense, eig_lowest
from .excitation import (
    ExcitationFrame,
    excitation_hamiltonian,
    excitation_map,
    nplus_expectation,
    one_body_density,
)
from .operators import (
    SparseOperator,
    apply_string,
    assemble,
    build_hn,
    read_matrix_market,
    write_matrix_market,
)
from .residual import residual_operator, residual_bound_matrix, residual_bound_min_eig

__all__ = [
    "FockBasis",
    "basis",
    "basis_size",
    "fixed_N",
    "truncated",
    "eig_dense",
    "eig_lowest",
    "ExcitationFrame",
    "excitation_hamiltonian",
    "excitation_map",
    "nplus_expectation",
    "one_body_density",
    "SparseOperator",
    "apply_string",
    "assemble",
    "build_hn",
    "read_matrix_market",
    "write_matrix_market",
    "residual_operator",
    "residual_bound_matrix",
    "residual_bound_min_eig",
]
