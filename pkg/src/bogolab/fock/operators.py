"""Sparse second-quantized operators on occupation-number bases."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from ..model import ModeProblem
from .basis import DEFAULT_CAP, FockBasis, fixed_N

__all__ = [
    "SparseOperator",
    "apply_string",
    "assemble",
    "one_body_terms",
    "two_body_terms",
    "number_operator",
    "build_hn",
    "hn_from_arrays",
    "write_matrix_market",
    "read_matrix_market",
]

ZERO_CUTOFF = 1e-15


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """Compressed-row matrix over a Fock basis."""

    matrix: sp.csr_matrix
    basis: FockBasis | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def row_offsets(self):
        return self.matrix.indptr

    @property
    def col_indices(self):
        return self.matrix.indices

    @property
    def values(self):
        return self.matrix.data

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def hermiticity_defect(self) -> float:
        diff = self.matrix - self.matrix.conj().T
        return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0

    def norm_estimate(self) -> float:
        """Maximal absolute row sum, an upper bound on the spectral norm."""
        if self.matrix.nnz == 0:
            return 0.0
        return float(np.max(np.asarray(abs(self.matrix).sum(axis=1))))

    def __matmul__(self, other):
        return self.matrix @ other

    def __add__(self, other):
        return SparseOperator(_clean(self.matrix + _mat(other)), self.basis)

    def __sub__(self, other):
        return SparseOperator(_clean(self.matrix - _mat(other)), self.basis)

    def scaled(self, s) -> "SparseOperator":
        return SparseOperator(_clean(self.matrix * s), self.basis)

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(_clean(self.matrix.conj().T.tocsr()), self.basis)


def _mat(x):
    return x.matrix if isinstance(x, SparseOperator) else sp.csr_matrix(x)


def _clean(m) -> sp.csr_matrix:
    m = sp.csr_matrix(m, dtype=complex)
    m.sum_duplicates()
    m.data[np.abs(m.data) <= ZERO_CUTOFF] = 0
    m.eliminate_zeros()
    m.sort_indices()
    return m


def apply_string(states, creators, annihilators):
    """Apply ``a+_{c1} a+_{c2} ... a_{a1} a_{a2} ...`` to every row of ``states``.

    Operators act right to left.  Returns ``(new_states, factor, ok)`` where
    ``factor`` is the integer product of occupation factors (the amplitude
    is its square root) and ``ok`` flags rows not annihilated.
    """
    occ = np.array(states, dtype=np.int64, copy=True)
    factor = np.ones(len(occ), dtype=np.int64)
    ok = np.ones(len(occ), dtype=bool)
    for q in reversed(annihilators):
        f = occ[:, q]
        ok &= f > 0
        factor *= np.maximum(f, 0)
        occ[:, q] -= 1
    for m in reversed(creators):
        occ[:, m] += 1
        factor *= np.maximum(occ[:, m], 0)
    return occ, factor, ok


def assemble(basis_in: FockBasis, terms, basis_out: FockBasis | None = None, column_weight=None):
    """Row-generated sparse assembly of ``sum coef * string``.

    ``terms`` is an iterable of ``(coef, creators, annihilators)``.
    ``column_weight`` is an optional real array over ``basis_in`` applied
    before the strings (a function of the occupations of the input state).
    Images outside ``basis_out`` are dropped, which realizes truncation.
    """
    basis_out = basis_in if basis_out is None else basis_out
    states = basis_in.states
    cols_all = np.arange(basis_in.dim)
    weight = None if column_weight is None else np.asarray(column_weight)
    rows, cols, vals = [], [], []
    for coef, cre, ann in terms:
        new, factor, ok = apply_string(states, cre, ann)
        r = np.full(len(states), -1, dtype=np.int64)
        r[ok] = basis_out.ranks(new[ok])
        keep = r >= 0
        amp = coef * np.sqrt(factor[keep].astype(float))
        if weight is not None:
            amp = amp * weight[keep]
        rows.append(r[keep])
        cols.append(cols_all[keep])
        vals.append(amp)
    shape = (basis_out.dim, basis_in.dim)
    if not rows:
        return SparseOperator(sp.csr_matrix(shape, dtype=complex), basis_out)
    m = sp.coo_matrix(
        (np.concatenate(vals).astype(complex), (np.concatenate(rows), np.concatenate(cols))),
        shape=shape,
    )
    return SparseOperator(_clean(m.tocsr()), basis_out)


def one_body_terms(X, offset=0, tol=0.0):
    """Terms of ``sum X[m, n] a+_m a_n``; mode labels shifted by ``-offset``."""
    X = np.asarray(X)
    for m, n in zip(*np.nonzero(np.abs(X) > tol)):
        yield X[m, n], (m - offset,), (n - offset,)


def two_body_terms(W, scale, tol=0.0):
    """Terms of ``scale * sum W[m,n,p,q] a+_m a+_n a_p a_q``."""
    W = np.asarray(W)
    for m, n, p, q in zip(*np.nonzero(np.abs(W) > tol)):
        yield scale * W[m, n, p, q], (m, n), (p, q)


def number_operator(b: FockBasis) -> np.ndarray:
    """Diagonal of the total number operator on ``b``."""
    return b.totals.astype(float)


def hn_from_arrays(T, W, N: int, b: FockBasis) -> SparseOperator:
    terms = list(one_body_terms(T)) + list(two_body_terms(W, 1.0 / (2 * (N - 1))))
    return assemble(b, terms)


def build_hn(problem: ModeProblem, N: int, *, cap: int = DEFAULT_CAP) -> SparseOperator:
    """Mean-field N-body Hamiltonian on the fixed-``N`` occupation basis."""
    if N < 2:
        raise ValueError("N must be at least 2")
    b = fixed_N(problem.d, N, cap=cap)
    return hn_from_arrays(problem.T, problem.W, N, b)


def write_matrix_market(op: SparseOperator, path) -> None:
    scipy.io.mmwrite(str(path), op.matrix, precision=17, symmetry="general")


def read_matrix_market(path, basis: FockBasis | None = None) -> SparseOperator:
    path = Path(path)
    if not path.exists() and path.with_suffix(".mtx").exists():
        path = path.with_suffix(".mtx")
    m = scipy.io.mmread(str(path))
    return SparseOperator(_clean(sp.csr_matrix(m)), basis)
