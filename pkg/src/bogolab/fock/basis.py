"""Occupation-number bases with combinatorial-number-system ranking.

States are ordered graded colexicographically: first by total occupation,
then colex on the multiset of occupied modes.  For occupation vectors of a
fixed total this is lexicographic order on the reversed vector, e.g. for
two modes and three particles ``[3,0], [2,1], [1,2], [0,3]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from ..errors import SizeOverflow

__all__ = ["FockBasis", "basis", "fixed_N", "truncated", "basis_size", "DEFAULT_CAP"]

DEFAULT_CAP = 5_000_000


def basis_size(d: int, kind: str, n: int) -> int:
    if kind == "fixed_N":
        return comb(n + d - 1, d - 1)
    if kind == "truncated":
        return comb(n + d, d)
    raise ValueError(f"unknown basis kind {kind!r}")


@lru_cache(maxsize=64)
def _binom_table(amax: int, bmax: int) -> np.ndarray:
    tab = np.zeros((amax + 1, bmax + 1), dtype=np.int64)
    for a in range(amax + 1):
        for b in range(min(a, bmax) + 1):
            tab[a, b] = comb(a, b)
    tab.setflags(write=False)
    return tab


@lru_cache(maxsize=256)
def _compositions(n: int, d: int) -> np.ndarray:
    """All length-``d`` occupation vectors summing to ``n``, reversed-lex order."""
    if d == 1:
        return np.array([[n]], dtype=np.int64)
    blocks = []
    for last in range(n + 1):
        head = _compositions(n - last, d - 1)
        blocks.append(np.column_stack([head, np.full(len(head), last, dtype=np.int64)]))
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Ordered occupation-number basis.

    ``kind`` is ``"fixed_N"`` (all entries sum to ``n``) or ``"truncated"``
    (entries sum to at most ``n``).
    """

    d: int
    kind: str
    n: int
    states: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def totals(self) -> np.ndarray:
        return self.states.sum(axis=1)

    def _table(self):
        return _binom_table(self.n + self.d, self.d)

    def ranks(self, occ) -> np.ndarray:
        """Vectorized rank of occupation vectors; ``-1`` for vectors outside the basis."""
        occ = np.asarray(occ, dtype=np.int64)
        single = occ.ndim == 1
        occ = np.atleast_2d(occ)
        tot = occ.sum(axis=1)
        inside = np.all(occ >= 0, axis=1)
        if self.kind == "fixed_N":
            inside &= tot == self.n
        else:
            inside &= tot <= self.n
        occ = np.where(inside[:, None], occ, 0)
        tot = np.where(inside, tot, 0)
        tab = self._table()
        prefix = np.cumsum(occ, axis=1) - occ
        i = np.arange(self.d)[None, :]
        # sum over modes of C(i+s+n_i, i) - C(i+s, i)
        r = (tab[i + prefix + occ, i] - tab[i + prefix, i]).sum(axis=1)
        if self.kind == "truncated":
            r = r + tab[tot + self.d - 1, self.d]
        r = np.where(inside, r, -1)
        return int(r[0]) if single else r

    def rank(self, occ) -> int:
        return int(self.ranks(np.asarray(occ, dtype=np.int64)))

    def unrank(self, r: int) -> tuple:
        """Inverse of :meth:`rank` through the colex combination of the multiset."""
        r = int(r)
        if not 0 <= r < self.dim:
            raise IndexError(r)
        d = self.d
        if self.kind == "truncated":
            n = 0
            while comb(n + 1 + d - 1, d) <= r:
                n += 1
            r -= comb(n + d - 1, d)
        else:
            n = self.n
        occ = [0] * d
        # combination j_1 < ... < j_n of range(n + d - 1); j_k = i_k + k - 1
        for k in range(n, 0, -1):
            j = k - 1
            while comb(j + 1, k) <= r:
                j += 1
            r -= comb(j, k)
            occ[j - (k - 1)] += 1
        return tuple(occ)


def basis(d: int, kind: str, n: int, *, cap: int = DEFAULT_CAP) -> FockBasis:
    """Build a fixed-particle-number or total-occupation-truncated basis."""
    if n < 0 or d < 1:
        raise ValueError("need d >= 1 and a non-negative particle number / cutoff")
    size = basis_size(d, kind, n)
    if size > cap:
        raise SizeOverflow(f"basis of {size} states exceeds the cap of {cap}")
    if kind == "fixed_N":
        states = np.array(_compositions(n, d))
    else:
        states = np.concatenate([_compositions(j, d) for j in range(n + 1)])
    states.setflags(write=False)
    return FockBasis(d=d, kind=kind, n=n, states=states)


def fixed_N(d: int, N: int, **kw) -> FockBasis:
    return basis(d, "fixed_N", N, **kw)


def truncated(d: int, M: int, **kw) -> FockBasis:
    return basis(d, "truncated", M, **kw)
