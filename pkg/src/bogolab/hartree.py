"""Hartree functional, stationary states and minimizer search."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import NoConvergence, ZeroVector
from .model import ModeProblem

__all__ = [
    "HartreeState",
    "ContinuousFamilySuspected",
    "energy_and_gradient",
    "meanfield",
    "gauge_fix",
    "make_state",
    "solve_stationary",
    "find_minimizers",
    "state_to_json",
    "state_from_json",
]


FLAT_HESSIAN = 1e-8


class ContinuousFamilySuspected(UserWarning):
    """Minimizers look like members of a continuous family.

    Raised when two retained minimizers are close but not identical up to
    phase, or when a minimizer has a flat Hessian direction.
    """


@dataclass(frozen=True, eq=False)
class HartreeState:
    c: np.ndarray
    energy: float
    mu0: float
    residual: float
    kind: str = "unknown"
    hessian_min_eig: float | None = None


def meanfield(problem: ModeProblem, c) -> np.ndarray:
    """Matrix of the mean-field potential: ``MF[m, n] = sum conj(c_q) c_p W[m, q, n, p]``."""
    c = np.asarray(c, dtype=complex)
    return np.einsum("q,p,mqnp->mn", c.conj(), c, problem.W)


def energy_and_gradient(problem: ModeProblem, c):
    """Hartree energy, mean-field matrix, chemical potential and residual at ``c``.

    The residual is the norm of ``(T + MF - mu) c``, which is the gradient of
    the energy with respect to ``conj(c)`` projected onto the tangent space
    of the unit sphere.
    """
    c = np.asarray(c, dtype=complex)
    norm = np.linalg.norm(c)
    if norm == 0:
        raise ZeroVector("coefficient vector is zero")
    c = c / norm
    mf = meanfield(problem, c)
    kinetic = np.vdot(c, problem.T @ c).real
    quartic = np.vdot(c, mf @ c).real
    energy = kinetic + 0.5 * quartic
    F = problem.T + mf
    Fc = F @ c
    mu = np.vdot(c, Fc).real
    residual = float(np.linalg.norm(Fc - mu * c))
    return float(energy), mf, float(mu), residual


def gauge_fix(c) -> np.ndarray:
    """Normalize and rotate the global phase so the largest entry is real positive.

    Entries whose modulus is within 1e-9 of the largest one count as tied;
    the lowest such index wins.
    """
    c = np.asarray(c, dtype=complex)
    c = c / np.linalg.norm(c)
    mags = np.abs(c)
    j = int(np.flatnonzero(mags >= mags.max() - 1e-9)[0])
    return c * (np.conj(c[j]) / mags[j])


def make_state(problem: ModeProblem, c, kind="unknown") -> HartreeState:
    c = gauge_fix(c)
    energy, _, mu, residual = energy_and_gradient(problem, c)
    return HartreeState(c=c, energy=energy, mu0=mu, residual=residual, kind=kind)


def solve_stationary(
    problem: ModeProblem,
    init,
    *,
    max_iter: int = 20000,
    tol: float = 1e-10,
    damping: float = 0.5,
    polish: int = 60,
) -> HartreeState:
    """Damped self-consistent iteration with overlap tracking.

    Each step diagonalizes ``T + MF(c)`` and moves towards the eigenvector
    with the largest overlap with the current iterate, which is not
    necessarily the lowest one.  This keeps the iteration on excited
    branches.  Once the residual is below ``tol`` up to ``polish`` further
    steps are taken and the iterate with the smallest residual is returned.
    """
    c = np.asarray(init, dtype=complex)
    if np.linalg.norm(c) == 0:
        raise ZeroVector("initial vector is zero")
    c = gauge_fix(c)
    residual = np.inf
    best = None
    polish_left = polish
    for _ in range(max_iter):
        _, mf, _, residual = energy_and_gradient(problem, c)
        if residual < tol:
            # keep iterating while it still helps, so downstream identities
            # that use the Hartree equation hold to rounding
            if best is None or residual < best[0]:
                best = (residual, c)
            polish_left -= 1
            if polish_left < 0 or residual < 1e-15:
                break
        elif best is not None:
            break
        _, vecs = np.linalg.eigh(problem.T + mf)
        overlaps = vecs.conj().T @ c
        j = int(np.argmax(np.abs(overlaps)))
        v = vecs[:, j] * (overlaps[j] / abs(overlaps[j]))
        c = (1.0 - damping) * c + damping * v
        c = gauge_fix(c)
    if best is None:
        raise NoConvergence(max_iter, residual)
    return make_state(problem, best[1], kind="stationary")


def _canonical_key(c):
    return tuple(np.round(np.column_stack([c.real, c.imag]).ravel(), 9))


def find_minimizers(
    problem: ModeProblem,
    *,
    n_starts: int = 32,
    seed: int = 0,
    tol: float = 1e-10,
    dedup_tol: float = 1e-8,
    damping: float = 0.5,
    max_iter: int = 20000,
    energy_tol: float = 1e-8,
) -> list[HartreeState]:
    """Multistart search for all Hartree minimizers up to a global phase.

    Starts are the lowest eigenvector of ``T`` followed by ``n_starts``
    seeded random complex vectors.  Retained states are tagged
    ``kind="minimizer"`` and carry the smallest Hessian eigenvalue.

    Warns
    -----
    ContinuousFamilySuspected
        If two minimizers have overlap in ``(0.999, 1 - dedup_tol]`` or a
        minimizer has a Hessian eigenvalue below 1e-8.
    """
    from .bogoliubov import quadratic_form, hessian_min_eig

    rng = np.random.default_rng(seed)
    starts = [np.linalg.eigh(problem.T)[1][:, 0]]
    for _ in range(n_starts):
        starts.append(rng.normal(size=problem.d) + 1j * rng.normal(size=problem.d))
    found = []
    last_error = None
    for init in starts:
        try:
            found.append(
                solve_stationary(problem, init, max_iter=max_iter, tol=tol, damping=damping)
            )
        except NoConvergence as exc:
            last_error = exc
    if not found:
        raise last_error
    best = min(s.energy for s in found)
    kept: list[HartreeState] = []
    for s in sorted(found, key=lambda s: s.energy):
        if s.energy > best + energy_tol:
            continue
        if any(abs(np.vdot(k.c, s.c)) > 1 - dedup_tol for k in kept):
            continue
        kept.append(s)
    for i, a in enumerate(kept):
        for b in kept[i + 1 :]:
            ov = abs(np.vdot(a.c, b.c))
            if 0.999 < ov <= 1 - dedup_tol:
                warnings.warn(
                    f"minimizers with overlap {ov:.6f}: a continuous family is suspected",
                    ContinuousFamilySuspected,
                    stacklevel=2,
                )
    out = []
    for s in kept:
        eta = hessian_min_eig(quadratic_form(problem, s))
        if eta <= FLAT_HESSIAN:
            warnings.warn(
                f"Hessian has a flat direction (smallest eigenvalue {eta:.3e}): "
                "a continuous family is suspected",
                ContinuousFamilySuspected,
                stacklevel=2,
            )
        out.append(replace(s, kind="minimizer", hessian_min_eig=eta))
    out.sort(key=lambda s: _canonical_key(s.c))
    return out


def state_to_json(state: HartreeState) -> dict:
    return {
        "c": [[float(z.real), float(z.imag)] for z in state.c],
        "energy": state.energy,
        "mu0": state.mu0,
        "residual": state.residual,
        "kind": state.kind,
        "hessian_min_eig": state.hessian_min_eig,
    }


def state_from_json(doc) -> HartreeState:
    c = np.asarray(doc["c"], dtype=float)
    return HartreeState(
        c=c[:, 0] + 1j * c[:, 1],
        energy=float(doc["energy"]),
        mu0=float(doc["mu0"]),
        residual=float(doc["residual"]),
        kind=doc.get("kind", "unknown"),
        hessian_min_eig=doc.get("hessian_min_eig"),
    )
