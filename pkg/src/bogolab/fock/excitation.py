"""The excitation map and particle-number observables.

The excitation map sends an ``N``-particle vector to the excited Fock space
truncated at ``N`` quanta.  After the one-body rotation ``R`` with
``R c = e_0`` the ``j``-quanta sector of the image is the part of the
rotated vector with ``n_0 = N - j``, with the condensate register dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from ..errors import DimensionMismatch
from ..frame import condensate_frame
from ..hartree import HartreeState, energy_and_gradient
from ..model import ModeProblem, rotate_problem
from .basis import DEFAULT_CAP, FockBasis, fixed_N, truncated
from .operators import SparseOperator, apply_string, assemble, hn_from_arrays, one_body_terms

__all__ = [
    "ExcitationFrame",
    "unitary_log",
    "excitation_map",
    "excitation_hamiltonian",
    "nplus_expectation",
    "one_body_density",
    "infer_particle_number",
]

DENSE_ROTATION_LIMIT = 3000


def unitary_log(R) -> np.ndarray:
    """Anti-Hermitian ``X`` with ``expm(X) = R`` via the complex Schur form."""
    Tm, Z = scipy.linalg.schur(np.asarray(R, dtype=complex), output="complex")
    phases = np.angle(np.diag(Tm))
    X = (Z * (1j * phases)) @ Z.conj().T
    return (X - X.conj().T) / 2


class _Rotation:
    """Action of the second-quantized one-body unitary on a fixed-``N`` space."""

    def __init__(self, R, b: FockBasis):
        self.dim = b.dim
        G = assemble(b, list(one_body_terms(unitary_log(R)))).matrix
        self.generator = G
        if b.dim <= DENSE_ROTATION_LIMIT:
            H = 1j * G.toarray()
            H = (H + H.conj().T) / 2
            w, V = scipy.linalg.eigh(H)
            self.dense = (V * np.exp(-1j * w)) @ V.conj().T
        else:
            self.dense = None

    def apply(self, x, adjoint=False):
        if self.dense is not None:
            return (self.dense.conj().T if adjoint else self.dense) @ x
        G = -self.generator if adjoint else self.generator
        return expm_multiply(G, x)


@dataclass(frozen=True, eq=False)
class ExcitationFrame:
    """Precomputed data for the excitation map at fixed ``N``."""

    problem: ModeProblem
    c: np.ndarray
    N: int
    cap: int = DEFAULT_CAP

    @cached_property
    def R(self) -> np.ndarray:
        return condensate_frame(self.c)

    @cached_property
    def fixed(self) -> FockBasis:
        return fixed_N(self.problem.d, self.N, cap=self.cap)

    @cached_property
    def excited(self) -> FockBasis:
        return truncated(self.problem.d - 1, self.N, cap=self.cap)

    @cached_property
    def to_excited(self) -> np.ndarray:
        """Index in the excited basis of every fixed-``N`` state (rotated frame)."""
        return self.excited.ranks(self.fixed.states[:, 1:])

    @cached_property
    def rotation(self) -> _Rotation:
        return _Rotation(self.R, self.fixed)

    @cached_property
    def rotated(self):
        return rotate_problem(self.problem, self.R)

    def forward(self, psi):
        psi = np.asarray(psi, dtype=complex)
        if psi.shape[0] != self.fixed.dim:
            raise DimensionMismatch(
                f"vector of length {psi.shape[0]} on a fixed-N space of dimension {self.fixed.dim}"
            )
        rotated = self.rotation.apply(psi)
        out = np.zeros_like(rotated)
        out[self.to_excited] = rotated
        return out

    def inverse(self, phi):
        phi = np.asarray(phi, dtype=complex)
        if phi.shape[0] != self.excited.dim:
            raise DimensionMismatch(
                f"vector of length {phi.shape[0]} on an excited space of dimension {self.excited.dim}"
            )
        return self.rotation.apply(phi[self.to_excited], adjoint=True)

    def hamiltonian(self) -> SparseOperator:
        """``U_N H_N U_N^+ - N E_H`` on the excited space truncated at ``N``."""
        Tp, Wp = self.rotated
        H = hn_from_arrays(Tp, Wp, self.N, self.fixed).matrix.tocoo()
        energy = energy_and_gradient(self.problem, self.c)[0]
        p = self.to_excited
        m = H.copy()
        m.row, m.col = p[H.row], p[H.col]
        out = SparseOperator(m.tocsr(), self.excited)
        return out - (self.N * energy) * _identity(self.excited.dim)


def _identity(n):
    return sp.identity(n, dtype=complex, format="csr")


def excitation_map(
    problem: ModeProblem, state: HartreeState, psi, direction: str = "forward", *, N=None
):
    """Apply the excitation map or its inverse.

    ``psi`` may be a vector or a matrix of column vectors.  For the forward
    direction ``N`` is inferred from the length of ``psi``; for the inverse
    it is inferred from the size of the excited space.
    """
    psi = np.asarray(psi, dtype=complex)
    d = problem.d
    if direction == "forward":
        N = infer_particle_number(d, psi.shape[0]) if N is None else N
        return ExcitationFrame(problem, state.c, N).forward(psi)
    if direction == "inverse":
        N = _infer_cutoff(d - 1, psi.shape[0]) if N is None else N
        return ExcitationFrame(problem, state.c, N).inverse(psi)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def excitation_hamiltonian(problem: ModeProblem, state: HartreeState, N: int) -> SparseOperator:
    return ExcitationFrame(problem, state.c, N).hamiltonian()


def infer_particle_number(d: int, dim: int) -> int:
    N = 0
    while comb(N + d - 1, d - 1) < dim:
        N += 1
    if comb(N + d - 1, d - 1) != dim:
        raise DimensionMismatch(f"{dim} is not the size of any fixed-N space over {d} modes")
    return N


def _infer_cutoff(d: int, dim: int) -> int:
    M = 0
    while comb(M + d, d) < dim:
        M += 1
    if comb(M + d, d) != dim:
        raise DimensionMismatch(f"{dim} is not the size of any truncated space over {d} modes")
    return M


def one_body_density(psi, b: FockBasis | None = None) -> np.ndarray:
    """``gamma[m, n] = <psi, a+_n a_m psi> / N`` on a fixed-``N`` space."""
    psi = np.asarray(psi, dtype=complex)
    if b is None:
        raise ValueError("the fixed-N basis of psi is required")
    if psi.shape[0] != b.dim:
        raise DimensionMismatch(f"vector of length {psi.shape[0]} on a basis of dimension {b.dim}")
    gamma = np.zeros((b.d, b.d), dtype=complex)
    for m in range(b.d):
        for n in range(b.d):
            new, factor, ok = apply_string(b.states, (n,), (m,))
            rows = b.ranks(new[ok])
            gamma[m, n] = np.sum(psi[rows].conj() * np.sqrt(factor[ok]) * psi[ok])
    N = b.n if b.n > 0 else 1
    gamma = gamma / N
    return (gamma + gamma.conj().T) / 2


def nplus_expectation(state: HartreeState, psi, b: FockBasis | None = None) -> float:
    """Expected number of particles outside the condensate."""
    psi = np.asarray(psi, dtype=complex)
    c = np.asarray(state.c, dtype=complex)
    c = c / np.linalg.norm(c)
    if b is None:
        b = fixed_N(len(c), infer_particle_number(len(c), psi.shape[0]))
    gamma = one_body_density(psi, b)
    n0 = b.n * np.vdot(c, gamma @ c).real
    return float(b.n * np.vdot(psi, psi).real - n0)
