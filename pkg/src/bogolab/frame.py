"""Rotation of the mode basis into the condensate frame."""

import numpy as np


def condensate_frame(c) -> np.ndarray:
    """Unitary ``R`` with ``R @ c = e_0``, built from a Householder reflection.

    Row ``k`` of ``R`` is the conjugate of the ``k``-th rotated mode written
    in the original modes, so ``R[0] = conj(c)`` and ``R[1:]`` spans the
    orthogonal complement of ``c``.
    """
    c = np.asarray(c, dtype=complex)
    c = c / np.linalg.norm(c)
    d = c.shape[0]
    phase = c[0] / abs(c[0]) if abs(c[0]) > 0 else 1.0
    alpha = -phase
    v = c.copy()
    v[0] -= alpha
    H = np.eye(d, dtype=complex) - 2.0 * np.outer(v, v.conj()) / np.vdot(v, v).real
    # H c = alpha e_0; rescale the first row so the image is exactly e_0
    H[0] *= np.conj(alpha)
    return H
