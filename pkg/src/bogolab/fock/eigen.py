"""Lowest eigenpairs of sparse Hermitian operators."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ..errors import ConvergenceFailure
from .operators import SparseOperator

__all__ = ["eig_lowest", "eig_dense"]


def _as_matrix(op):
    return op.matrix if isinstance(op, SparseOperator) else op


def eig_dense(op):
    """All eigenpairs via a dense Hermitian solve."""
    m = _as_matrix(op)
    a = m.toarray() if hasattr(m, "toarray") else np.asarray(m)
    a = (a + a.conj().T) / 2
    return scipy.linalg.eigh(a)


def _orthonormalize(X, Q=None):
    """Orthonormalize the columns of ``X`` against ``Q`` and among themselves.

    Two passes of classical Gram-Schmidt against ``Q`` followed by a
    rank-revealing QR; directions that vanish are dropped.
    """
    for _ in range(2):
        if Q is not None and Q.shape[1]:
            X = X - Q @ (Q.conj().T @ X)
    if X.shape[1] == 0:
        return X
    scale = max(1.0, float(np.max(np.linalg.norm(X, axis=0))))
    q, r, _ = scipy.linalg.qr(X, mode="economic", pivoting=True)
    keep = np.abs(np.diag(r)) > 1e-10 * scale
    q = q[:, keep]
    if Q is not None and Q.shape[1] and q.shape[1]:
        q = q - Q @ (Q.conj().T @ q)
        q, _ = np.linalg.qr(q)
    return q


def eig_lowest(
    op,
    k: int,
    *,
    seed: int = 0,
    tol: float = 1e-8,
    dense_threshold: int = 400,
    block_size: int | None = None,
    max_basis: int | None = None,
    max_restarts: int = 200,
):
    """Lowest ``k`` eigenpairs of a Hermitian operator.

    Block Lanczos with full reorthogonalization and explicit Rayleigh-Ritz
    projection, restarted from the current best Ritz vectors when the
    Krylov basis reaches ``max_basis``.  Blocks resolve degenerate levels
    that a single-vector recurrence would miss.  Operators of dimension at
    most ``dense_threshold`` are solved densely.

    Returns
    -------
    values : (k,) ndarray, ascending
    vectors : (dim, k) ndarray with orthonormal columns

    Raises
    ------
    ConvergenceFailure
        If not every pair reaches ``||A v - lambda v|| < tol * ||A||``;
        carries the number of pairs that did converge.
    """
    A = _as_matrix(op)
    n = A.shape[0]
    if k < 1:
        raise ValueError("k must be positive")
    if k > n:
        raise ValueError(f"requested {k} eigenpairs of a {n}-dimensional operator")
    if n <= dense_threshold:
        w, v = eig_dense(A)
        return w[:k], v[:, :k]

    if isinstance(op, SparseOperator):
        anorm = op.norm_estimate()
    else:
        anorm = float(np.max(np.asarray(abs(A).sum(axis=1))))
    anorm = max(anorm, 1e-300)
    b = block_size or min(n, max(k + 2, 4))
    max_basis = min(n, max_basis or max(30 * b, 300))
    rng = np.random.default_rng(seed)
    start = rng.normal(size=(n, b)) + 1j * rng.normal(size=(n, b))
    block = _orthonormalize(start)
    n_conv = 0
    for _ in range(max_restarts + 1):
        Q = np.zeros((n, 0), dtype=complex)
        AQ = np.zeros((n, 0), dtype=complex)
        while True:
            Q = np.hstack([Q, block])
            AQ = np.hstack([AQ, A @ block])
            if Q.shape[1] >= max_basis:
                break
            nxt = _orthonormalize(AQ[:, -block.shape[1] :], Q)
            if nxt.shape[1] < b:
                extra = rng.normal(size=(n, b - nxt.shape[1])) + 0j
                nxt = _orthonormalize(np.hstack([nxt, extra]), Q)
            if nxt.shape[1] == 0:
                break
            block = nxt
        H = Q.conj().T @ AQ
        H = (H + H.conj().T) / 2
        theta, S = scipy.linalg.eigh(H)
        X = Q @ S[:, :k]
        R = AQ @ S[:, :k] - X * theta[:k]
        res = np.linalg.norm(R, axis=0)
        ok = res < tol * anorm
        n_conv = int(np.argmin(ok)) if not ok.all() else k
        if ok.all():
            return theta[:k], X
        if Q.shape[1] >= n:
            break
        keep = min(S.shape[1], k + b)
        block = _orthonormalize(Q @ S[:, :keep])
    raise ConvergenceFailure(n_conv)
