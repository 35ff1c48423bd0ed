"""Hessian of the Hartree functional and the Bogoliubov Hamiltonian.

At a stationary condensate ``c`` the quadratic Hamiltonian on the excited
Fock space is

    bH = sum A[k, l] a+_k a_l + 1/2 sum (B[k, l] a+_k a+_l + conj(B[k, l]) a_k a_l),

with ``A`` the matrix of ``h + K1`` and ``B`` the pair kernel ``K2``, both
written in an orthonormal basis of the complement of ``c``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotStable, NotStationary
from .fock.basis import truncated
from .fock.operators import SparseOperator, assemble, one_body_terms
from .frame import condensate_frame
from .hartree import HartreeState, energy_and_gradient
from .model import ModeProblem

__all__ = [
    "QuadraticForm",
    "BogoliubovSpectrum",
    "STATIONARY_TOL",
    "quadratic_form",
    "hessian_matrix",
    "hessian_min_eig",
    "diagonalize",
    "enumerate_levels",
    "enumerate_by_quanta",
    "fock_representation",
    "depletion",
    "spectrum_to_json",
]

STATIONARY_TOL = 1e-6
STABLE, LANDAU, UNSTABLE, DEGENERATE = "stable", "landau", "dynamically_unstable", "degenerate"


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """Hessian blocks on the excited subspace.

    Row ``k`` of ``qbasis`` holds the conjugated coefficients of the
    ``k``-th excited mode, so ``qbasis @ c = 0`` and
    ``A = qbasis X qbasis^+`` for a one-body matrix ``X``.
    """

    qbasis: np.ndarray | None
    A: np.ndarray
    B: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @classmethod
    def from_blocks(cls, A, B) -> "QuadraticForm":
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        B = np.atleast_2d(np.asarray(B, dtype=complex))
        if A.shape != B.shape or A.shape[0] != A.shape[1]:
            raise ValueError("A and B must be square matrices of the same size")
        return cls(qbasis=None, A=A, B=B)


@dataclass(frozen=True, eq=False)
class BogoliubovSpectrum:
    """Symplectic diagonalization of a quadratic form.

    ``stability`` is one of ``stable``, ``landau``, ``dynamically_unstable``
    and ``degenerate``.  ``E0`` is NaN and ``E0_defined`` is False when the
    spectrum is complex.  ``Umat`` and ``Vmat`` hold the positive-norm mode
    vectors ``(u_k, v_k)`` as columns, normalized to
    ``U^+ U - V^+ V = 1``.
    """

    e: np.ndarray
    E0: float
    Umat: np.ndarray
    Vmat: np.ndarray
    stability: str
    eta: float
    zero_modes: int = 0
    E0_defined: bool = True
    traceA: float = 0.0


def quadratic_form(problem: ModeProblem, state: HartreeState) -> QuadraticForm:
    """Assemble ``A = h + K1`` and ``B = K2`` on the complement of the condensate.

    Raises
    ------
    NotStationary
        If the Hartree residual at ``state.c`` is not below 1e-6.
    """
    c = np.asarray(state.c, dtype=complex)
    c = c / np.linalg.norm(c)
    _, mf, mu, residual = energy_and_gradient(problem, c)
    if not residual < STATIONARY_TOL:
        raise NotStationary(residual)
    qbasis = condensate_frame(c)[1:]
    k1 = np.einsum("p,q,mqpn->mn", c, c.conj(), problem.W)
    K2 = np.einsum("p,q,mnpq->mn", c, c, problem.W)
    X = problem.T + mf - mu * np.eye(problem.d) + k1
    A = qbasis @ X @ qbasis.conj().T
    B = qbasis @ K2 @ qbasis.T
    A = (A + A.conj().T) / 2
    B = (B + B.T) / 2
    return QuadraticForm(qbasis=qbasis, A=A, B=B)


def hessian_matrix(qf: QuadraticForm) -> np.ndarray:
    """The Hermitian block matrix ``[[A, B], [conj(B), conj(A)]]``."""
    return np.block([[qf.A, qf.B], [qf.B.conj(), qf.A.conj()]])


def hessian_min_eig(qf: QuadraticForm) -> float:
    if qf.n == 0:
        return np.inf
    return float(scipy.linalg.eigvalsh(hessian_matrix(qf))[0])


def _stable_route(S, n):
    K = scipy.linalg.cholesky(S, lower=False)  # S = K^+ K
    J = np.concatenate([np.ones(n), -np.ones(n)])
    G = (K * J) @ K.conj().T
    G = (G + G.conj().T) / 2
    L, Wv = scipy.linalg.eigh(G)
    order = np.concatenate([np.flatnonzero(L > 0), np.flatnonzero(L <= 0)[::-1]])
    L, Wv = L[order], Wv[:, order]
    Tm = scipy.linalg.solve_triangular(K, Wv * np.sqrt(np.abs(L)))
    return L[:n], Tm[:n, :n], Tm[n:, :n]


def _indefinite_route(S, n, scale, imag_tol, zero_tol):
    J = np.concatenate([np.ones(n), -np.ones(n)])
    omega, X = scipy.linalg.eig(J[:, None] * S)
    if np.any(np.abs(omega.imag) > imag_tol * scale):
        return None
    omega = omega.real
    zero = np.abs(omega) <= zero_tol * scale
    zero_modes = int(zero.sum()) // 2
    idx = np.flatnonzero(~zero)
    idx = idx[np.argsort(omega[idx])]
    energies, cols = [], []
    start = 0
    while start < len(idx):
        # cluster numerically equal frequencies and split them by symplectic norm
        stop = start + 1
        while stop < len(idx) and omega[idx[stop]] - omega[idx[stop - 1]] <= 1e-8 * scale:
            stop += 1
        block = X[:, idx[start:stop]]
        block = scipy.linalg.orth(block)
        gram = block.conj().T @ (J[:, None] * block)
        g, y = scipy.linalg.eigh((gram + gram.conj().T) / 2)
        w = float(np.mean(omega[idx[start:stop]]))
        for gi, yi in zip(g, y.T):
            if gi > 1e-12:
                energies.append(w)
                cols.append(block @ yi / np.sqrt(gi))
        start = stop
    if not energies:
        return np.zeros(0), np.zeros((n, 0)), np.zeros((n, 0)), zero_modes
    e = np.array(energies)
    Tm = np.column_stack(cols)
    order = np.lexsort((e, np.abs(e)))
    e, Tm = e[order], Tm[:, order]
    return e, Tm[:n], Tm[n:], zero_modes


def diagonalize(qf: QuadraticForm, tol_degenerate: float = 1e-9) -> BogoliubovSpectrum:
    """Symplectic diagonalization and stability classification.

    Positive-definite Hessians use a Cholesky factorization followed by a
    Hermitian eigenproblem.  Indefinite Hessians go through the
    non-symmetric eigenproblem of ``J S``; complex frequencies flag a
    dynamically unstable state, zero frequencies a degenerate one, and a
    real spectrum of mixed sign a Landau-type state.
    """
    n = qf.n
    S = hessian_matrix(qf)
    S = (S + S.conj().T) / 2
    traceA = float(np.trace(qf.A).real)
    eta = hessian_min_eig(qf)
    if n == 0:
        empty = np.zeros((0, 0), dtype=complex)
        return BogoliubovSpectrum(np.zeros(0), 0.0, empty, empty, STABLE, eta, traceA=traceA)
    scale = max(1.0, float(np.max(np.abs(S))))
    if eta > tol_degenerate:
        e, U, V = _stable_route(S, n)
        E0 = 0.5 * (float(np.sum(e)) - traceA)
        return BogoliubovSpectrum(e, E0, U, V, STABLE, eta, traceA=traceA)
    out = _indefinite_route(S, n, scale, imag_tol=1e-8, zero_tol=max(1e-7, tol_degenerate))
    if out is None:
        empty = np.zeros((n, 0), dtype=complex)
        return BogoliubovSpectrum(
            np.zeros(0), float("nan"), empty, empty, UNSTABLE, eta, E0_defined=False, traceA=traceA
        )
    e, U, V, zero_modes = out
    stability = DEGENERATE if zero_modes > 0 else LANDAU
    E0 = 0.5 * (float(np.sum(e)) - traceA)
    return BogoliubovSpectrum(e, E0, U, V, stability, eta, zero_modes=zero_modes, traceA=traceA)


def enumerate_levels(spec: BogoliubovSpectrum, count: int) -> list[float]:
    """The ``count`` smallest values of ``E0 + sum_k n_k e_k``.

    Best-first search over occupation vectors; a configuration only
    increments modes at or after the last one it incremented, so each
    vector is visited once.  Exact ties are ordered by occupation vector.
    """
    return [v for v, _ in enumerate_configurations(spec, count)]


def enumerate_configurations(spec: BogoliubovSpectrum, count: int):
    """Like :func:`enumerate_levels` but also returns the occupation vectors."""
    if spec.stability != STABLE:
        raise NotStable(f"levels can only be enumerated for stable spectra, got {spec.stability}")
    if count < 1:
        raise ValueError("count must be positive")
    e = np.asarray(spec.e, dtype=float)
    n = len(e)

    def value(occ):
        return float(spec.E0 + np.dot(occ, e))

    zero = (0,) * n
    heap = [(value(zero), zero, 0)]
    out = []
    while heap and len(out) < count:
        v, occ, last = heapq.heappop(heap)
        out.append((v, occ))
        for k in range(last, n):
            nxt = list(occ)
            nxt[k] += 1
            nxt = tuple(nxt)
            heapq.heappush(heap, (value(nxt), nxt, k))
    return out


def enumerate_by_quanta(spec: BogoliubovSpectrum, max_quanta: int):
    """All ``(value, occupation)`` pairs with at most ``max_quanta`` quanta.

    Works for stable, Landau and degenerate spectra alike; ordered by total
    number of quanta, then value, then occupation vector.
    """
    if spec.stability == UNSTABLE:
        raise NotStable("spectrum is dynamically unstable")
    e = np.asarray(spec.e, dtype=float)
    n = len(e)
    out = []
    if n == 0:
        return [(float(spec.E0), ())]
    b = truncated(n, max_quanta)
    for occ in b.states:
        occ = tuple(int(x) for x in occ)
        out.append((sum(occ), float(spec.E0 + np.dot(occ, e)), occ))
    out.sort()
    return [(v, occ) for _, v, occ in out]


def fock_representation(qf: QuadraticForm, cutoff: int) -> SparseOperator:
    """Matrix of ``bH`` on excited occupation vectors with at most ``cutoff`` quanta.

    Pair creation out of the truncated space is dropped, which gives the
    compression of ``bH`` to that space.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    b = truncated(qf.n, cutoff)
    terms = list(one_body_terms(qf.A))
    for m, l in zip(*np.nonzero(np.abs(qf.B) > 0)):
        terms.append((0.5 * qf.B[m, l], (m, l), ()))
        terms.append((0.5 * np.conj(qf.B[m, l]), (), (m, l)))
    return assemble(b, terms)


def depletion(spec: BogoliubovSpectrum) -> float:
    """Ground-state expectation of the number of excited particles."""
    if spec.stability != STABLE:
        raise NotStable(f"depletion needs a stable spectrum, got {spec.stability}")
    return float(np.trace(spec.Vmat.conj().T @ spec.Vmat).real)


def spectrum_to_json(spec: BogoliubovSpectrum) -> dict:
    return {
        "e": [float(x) for x in spec.e],
        "E0": float(spec.E0) if spec.E0_defined else None,
        "stability": spec.stability,
        "eta": float(spec.eta),
        "zero_modes": spec.zero_modes,
        "depletion": depletion(spec) if spec.stability == STABLE else None,
    }
