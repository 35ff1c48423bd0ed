"""Residual between the conjugated N-body Hamiltonian and its quadratic part.

On the excited space truncated at ``N`` quanta,

    M = U_N H_N U_N^+ - N E_H - bH,

and ``M`` splits into six terms ``R_0 .. R_5`` with
``M = 1/2 sum_j (R_j + R_j^+)``.  All functions of the number of excited
particles act on the input state, so they enter the assembly as column
weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import IdentityDefect
from ..hartree import HartreeState
from ..model import ModeProblem
from .basis import DEFAULT_CAP
from .excitation import ExcitationFrame
from .operators import SparseOperator, assemble, one_body_terms

__all__ = ["ResidualTerms", "residual_operator", "residual_bound_matrix", "residual_bound_min_eig", "IDENTITY_TOL"]

IDENTITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ResidualTerms:
    M: SparseOperator
    terms: list  # R_0 .. R_5, not symmetrized
    identity_defect: float


def _terms(frame: ExcitationFrame):
    Tp, Wp = frame.rotated
    N = frame.N
    b = frame.excited
    n = b.totals.astype(float)
    sq = np.sqrt(np.maximum(N - n, 0.0))
    E = range(1, frame.problem.d)

    def lab(*idx):
        return tuple(i - 1 for i in idx)

    R0 = assemble(b, [(0.5 * Wp[0, 0, 0, 0], (), ())], column_weight=n * (n - 1) / (N - 1))

    X1 = Wp[1:, 0, 1:, 0] + Wp[1:, 0, 0, 1:]
    R1 = assemble(b, list(one_body_terms(X1)), column_weight=-(n - 1) / (N - 1))

    v = Wp[1:, 0, 0, 0]
    R2 = assemble(
        b,
        [(v[k], (k,), ()) for k in range(len(v)) if v[k] != 0],
        column_weight=-2.0 * n * sq / (N - 1),
    )

    pair = np.sqrt(np.maximum((N - n) * (N - n - 1), 0.0)) / (N - 1) - 1.0
    R3 = assemble(
        b,
        [(Wp[k, l, 0, 0], lab(k, l), ()) for k in E for l in E if Wp[k, l, 0, 0] != 0],
        column_weight=pair,
    )

    R4 = assemble(
        b,
        [
            (Wp[k, l, m, q] / (2 * (N - 1)), lab(k, l), lab(m, q))
            for k in E
            for l in E
            for m in E
            for q in E
            if Wp[k, l, m, q] != 0
        ],
    )

    R5 = assemble(
        b,
        [
            (2.0 * Wp[k, l, m, 0] / (N - 1), lab(k, l), lab(m))
            for k in E
            for l in E
            for m in E
            if Wp[k, l, m, 0] != 0
        ],
        column_weight=sq,
    )
    return [R0, R1, R2, R3, R4, R5]


def residual_operator(
    problem: ModeProblem,
    state: HartreeState,
    N: int,
    termwise: bool = False,
    *,
    cap: int = DEFAULT_CAP,
):
    """Residual ``M`` on the excited space truncated at ``N``.

    With ``termwise`` the six terms are assembled separately and the
    identity ``M = 1/2 sum (R_j + R_j^+)`` is checked entrywise.

    Raises
    ------
    NotStationary
        From the quadratic form when ``state`` is not stationary.
    IdentityDefect
        If the termwise decomposition misses ``M`` by more than 1e-10.
    """
    from ..bogoliubov import fock_representation, quadratic_form

    qf = quadratic_form(problem, state)
    frame = ExcitationFrame(problem, state.c, N, cap=cap)
    M = frame.hamiltonian() - fock_representation(qf, N)
    if not termwise:
        return M
    terms = _terms(frame)
    total = terms[0] + terms[0].adjoint()
    for R in terms[1:]:
        total = total + R + R.adjoint()
    diff = (M - total.scaled(0.5)).matrix
    defect = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    if defect > IDENTITY_TOL:
        raise IdentityDefect(f"termwise decomposition misses the residual by {defect:.3e}")
    return ResidualTerms(M=M, terms=terms, identity_defect=defect)


def residual_bound_matrix(problem: ModeProblem, state: HartreeState, N: int, C: float) -> np.ndarray:
    """Dense ``(C/N)(dGamma(Q T Q) N_+^2 + 1) - M^2`` on the truncated excited space.

    The kinetic matrix is the shifted one, so ``dGamma(Q T Q) >= N_+``.
    """
    frame = ExcitationFrame(problem, state.c, N)
    M = residual_operator(problem, state, N).to_dense()
    Tp, _ = frame.rotated
    Ts = Tp[1:, 1:] + problem.shift * np.eye(problem.d - 1)
    b = frame.excited
    kin = assemble(b, list(one_body_terms(Ts))).to_dense()
    n2 = b.totals.astype(float) ** 2
    lhs = (C / N) * (kin * n2[None, :] + np.eye(b.dim))
    out = lhs - M @ M
    return (out + out.conj().T) / 2


def residual_bound_min_eig(problem: ModeProblem, state: HartreeState, N: int, C: float) -> float:
    return float(scipy.linalg.eigvalsh(residual_bound_matrix(problem, state, N, C))[0])
