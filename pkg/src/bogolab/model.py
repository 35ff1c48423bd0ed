"""Finite-mode mean-field boson problems.

A problem lives on a ``d``-dimensional one-body space with orthonormal modes
``u_0 .. u_{d-1}``.  It is fixed by the kinetic matrix ``T[m, n] = <u_m, T u_n>``
and the interaction tensor

    W[m, n, p, q] = <u_m (x) u_n, w u_p (x) u_q>,

so that the N-body Hamiltonian reads
``sum T[m,n] a+_m a_n + 1/(2(N-1)) sum W[m,n,p,q] a+_m a+_n a_p a_q``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .errors import (
    MissingW2,
    ModelFormatError,
    NonFinite,
    NonHermitianKinetic,
    NonPositiveKinetic,
    ProfileNotEven,
    SymmetryViolation,
)

__all__ = [
    "ModeProblem",
    "validate_problem",
    "build_dimer",
    "build_ring",
    "build_random",
    "check_assumption_c0",
    "symmetry_defects",
    "rotate_problem",
    "load_problem",
    "save_problem",
    "problem_to_json",
    "problem_from_json",
]

SYMMETRY_RTOL = 1e-12


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ModeProblem:
    """Validated one-body data of a mean-field boson problem.

    ``T`` is stored exactly as given.  ``shift`` is the uniform amount that
    has to be added to ``T`` to make its smallest eigenvalue equal to one;
    it is zero when ``T >= 1`` already.  All energies reported by the
    package use the unshifted ``T``; :attr:`T_shifted` is used only where a
    positive kinetic operator is required.
    """

    d: int
    T: np.ndarray
    W: np.ndarray
    W2: np.ndarray | None = None
    shift: float = 0.0

    @property
    def T_shifted(self) -> np.ndarray:
        return self.T + self.shift * np.eye(self.d)

    def same_as(self, other: "ModeProblem") -> bool:
        """Bitwise equality of all stored arrays."""
        if self.d != other.d or self.shift != other.shift:
            return False
        if (self.W2 is None) != (other.W2 is None):
            return False
        pairs = [(self.T, other.T), (self.W, other.W)]
        if self.W2 is not None:
            pairs.append((self.W2, other.W2))
        return all(np.array_equal(a, b) for a, b in pairs)


def symmetry_defects(W):
    """Worst violation of the two tensor symmetries.

    Returns ``{"pair_exchange": (magnitude, index), "hermiticity": (...)}``
    where ``pair_exchange`` is ``W[m,n,p,q] = W[n,m,q,p]`` and
    ``hermiticity`` is ``conj(W[m,n,p,q]) = W[p,q,m,n]``.
    """
    W = np.asarray(W)
    out = {}
    for name, partner in (
        ("pair_exchange", W.transpose(1, 0, 3, 2)),
        ("hermiticity", W.transpose(2, 3, 0, 1).conj()),
    ):
        diff = np.abs(W - partner)
        idx = np.unravel_index(int(np.argmax(diff)), W.shape)
        out[name] = (float(diff[idx]), idx)
    return out


def _check_tensor(W, d, label):
    W = np.asarray(W, dtype=complex)
    if W.shape != (d, d, d, d):
        raise ModelFormatError(f"{label} must have shape {(d,) * 4}, got {W.shape}")
    if not np.all(np.isfinite(W)):
        raise NonFinite(f"{label} contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(W))))
    for name, (mag, idx) in symmetry_defects(W).items():
        if mag > SYMMETRY_RTOL * scale:
            sym = "PairExchange" if name == "pair_exchange" else "Hermiticity"
            raise SymmetryViolation(f"{sym}({label})", idx, mag)
    return W


def validate_problem(T, W, W2=None) -> ModeProblem:
    """Check a kinetic matrix and interaction tensor and wrap them.

    Raises
    ------
    NonFinite, NonHermitianKinetic, SymmetryViolation, ModelFormatError
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ModelFormatError(f"T must be square, got shape {T.shape}")
    d = T.shape[0]
    if d < 2:
        raise ModelFormatError("at least two modes are required")
    if not np.all(np.isfinite(T)):
        raise NonFinite("T contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(T))))
    defect = float(np.max(np.abs(T - T.conj().T)))
    if defect > SYMMETRY_RTOL * scale:
        raise NonHermitianKinetic(f"T is not Hermitian (defect {defect:.3e})")
    W = _check_tensor(W, d, "W")
    if W2 is not None:
        W2 = _check_tensor(W2, d, "W2")
    lam_min = float(np.linalg.eigvalsh(T)[0])
    shift = max(0.0, 1.0 - lam_min)
    return ModeProblem(
        d=d, T=_frozen(T), W=_frozen(W), W2=None if W2 is None else _frozen(W2), shift=shift
    )


def build_dimer(t: float, U: float) -> ModeProblem:
    """Two sites with hopping ``t`` and on-site coupling ``U``."""
    T = np.array([[0.0, -t], [-t, 0.0]])
    W = np.zeros((2, 2, 2, 2))
    W2 = np.zeros((2, 2, 2, 2))
    for m in range(2):
        W[m, m, m, m] = U
        W2[m, m, m, m] = U * U
    return validate_problem(T, W, W2)


def _momentum_tensor(vhat):
    L = len(vhat)
    k = np.arange(L)
    m, n, p, q = np.meshgrid(k, k, k, k, indexing="ij")
    conserved = (m + n - p - q) % L == 0
    return np.where(conserved, np.asarray(vhat)[(m - p) % L] / L, 0.0)


def build_ring(L: int, t: float, vhat) -> ModeProblem:
    """Translation-invariant ring of ``L`` sites in the plane-wave basis.

    ``vhat[k] = sum_r w(r) exp(-2 pi i k r / L)`` is the Fourier profile of
    the real, even pair interaction; a constant profile is a contact
    interaction.
    """
    if L < 3:
        raise ModelFormatError("a ring needs at least three sites")
    vhat = np.asarray(vhat, dtype=float)
    if vhat.shape != (L,):
        raise ModelFormatError(f"vhat must have length {L}")
    if not np.all(np.isfinite(vhat)):
        raise NonFinite("vhat contains non-finite entries")
    mirrored = vhat[(-np.arange(L)) % L]
    if not np.allclose(vhat, mirrored, rtol=0, atol=1e-12):
        raise ProfileNotEven(f"vhat is not even: {vhat.tolist()}")
    k = np.arange(L)
    T = np.diag(-2.0 * t * np.cos(2 * np.pi * k / L))
    # squared interaction, via real space
    w_r = np.fft.ifft(vhat).real
    vhat2 = np.fft.fft(w_r**2).real
    return validate_problem(T, _momentum_tensor(vhat), _momentum_tensor(vhat2))


def build_random(seed: int, d: int, strength: float) -> ModeProblem:
    """Seeded random problem with ``T >= 1`` and a symmetrized tensor."""
    if d < 2:
        raise ModelFormatError("at least two modes are required")
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    T = (X + X.conj().T) / 2
    T = T + (1.0 - np.linalg.eigvalsh(T)[0]) * np.eye(d)
    G = rng.normal(size=(d,) * 4) + 1j * rng.normal(size=(d,) * 4)
    W = (
        G
        + G.transpose(1, 0, 3, 2)
        + G.transpose(2, 3, 0, 1).conj()
        + G.transpose(3, 2, 1, 0).conj()
    ) / 4
    return validate_problem(T, strength * W)


def check_assumption_c0(problem: ModeProblem) -> float:
    """Smallest ``C0`` with ``w^2 <= C0 (1 x T + T x 1)`` on the two-body space.

    Uses the shifted kinetic matrix, so the right-hand side is positive
    definite.
    """
    if problem.W2 is None:
        raise MissingW2("the problem carries no squared-interaction tensor")
    d = problem.d
    Ts = problem.T_shifted
    rhs = np.kron(np.eye(d), Ts) + np.kron(Ts, np.eye(d))
    rhs = (rhs + rhs.conj().T) / 2
    if np.linalg.eigvalsh(rhs)[0] <= 0:
        raise NonPositiveKinetic("1 x T + T x 1 is not positive definite")
    lhs = problem.W2.reshape(d * d, d * d)
    lhs = (lhs + lhs.conj().T) / 2
    lam = scipy.linalg.eigh(lhs, rhs, eigvals_only=True)
    return max(0.0, float(lam[-1]))


def rotate_problem(problem: ModeProblem, R) -> tuple[np.ndarray, np.ndarray]:
    """Kinetic matrix and tensor in the modes ``u'_k = sum_j conj(R[k, j]) u_j``.

    Returns ``(R T R^+, W')`` with
    ``W'[k,l,m,n] = sum R[k,a] R[l,b] W[a,b,c,e] conj(R[m,c]) conj(R[n,e])``.
    """
    R = np.asarray(R)
    Rc = R.conj()
    Tp = R @ problem.T @ R.conj().T
    Wp = np.einsum("ka,abce->kbce", R, problem.W)
    Wp = np.einsum("lb,kbce->klce", R, Wp)
    Wp = np.einsum("mc,klce->klme", Rc, Wp)
    Wp = np.einsum("ne,klme->klmn", Rc, Wp)
    return Tp, Wp


# ---------------------------------------------------------------- file format


def _pairs(a):
    return [[float(z.real), float(z.imag)] for z in np.ravel(a)]


def _unpairs(items, count, label):
    try:
        arr = np.asarray(items, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(f"{label}: expected a list of [re, im] pairs") from exc
    if arr.shape != (count, 2):
        raise ModelFormatError(f"{label}: expected {count} [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


def problem_to_json(problem: ModeProblem) -> dict:
    doc = {"d": problem.d, "T": _pairs(problem.T), "W": _pairs(problem.W)}
    if problem.W2 is not None:
        doc["W2"] = _pairs(problem.W2)
    doc["shift"] = problem.shift
    return doc


def problem_from_json(doc) -> ModeProblem:
    if not isinstance(doc, dict) or "d" not in doc or "T" not in doc or "W" not in doc:
        raise ModelFormatError("model document needs keys 'd', 'T' and 'W'")
    d = doc["d"]
    if not isinstance(d, int) or d < 2:
        raise ModelFormatError(f"'d' must be an integer >= 2, got {d!r}")
    T = _unpairs(doc["T"], d * d, "T").reshape(d, d)
    W = _unpairs(doc["W"], d**4, "W").reshape((d,) * 4)
    W2 = doc.get("W2")
    if W2 is not None:
        W2 = _unpairs(W2, d**4, "W2").reshape((d,) * 4)
    return validate_problem(T, W, W2)


def save_problem(problem: ModeProblem, path) -> None:
    Path(path).write_text(json.dumps(problem_to_json(problem), indent=1) + "\n")


def load_problem(path) -> ModeProblem:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not valid JSON ({exc})") from exc
    return problem_from_json(doc)
