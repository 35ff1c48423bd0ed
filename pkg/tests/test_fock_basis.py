from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bogolab.errors import SizeOverflow
from bogolab.fock import basis, basis_size, fixed_N, truncated


def test_fixed_ordering_example():
    assert fixed_N(2, 3).states.tolist() == [[3, 0], [2, 1], [1, 2], [0, 3]]
    assert fixed_N(3, 2).states.tolist() == [
        [2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]
    ]


def test_truncated_ordering_example():
    assert truncated(2, 2).states.tolist() == [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]]


@pytest.mark.parametrize("d,n", [(1, 4), (2, 0), (3, 5), (4, 3), (5, 2)])
def test_sizes(d, n):
    assert fixed_N(d, n).dim == comb(n + d - 1, d - 1) == basis_size(d, "fixed_N", n)
    assert truncated(d, n).dim == comb(n + d, d) == basis_size(d, "truncated", n)
    assert np.all(fixed_N(d, n).totals == n)


@pytest.mark.parametrize("kind", ["fixed_N", "truncated"])
@pytest.mark.parametrize("d,n", [(2, 6), (3, 4), (4, 3)])
def test_rank_is_position(kind, d, n):
    b = basis(d, kind, n)
    np.testing.assert_array_equal(b.ranks(b.states), np.arange(b.dim))
    for r in range(b.dim):
        assert b.unrank(r) == tuple(b.states[r])
        assert b.rank(b.unrank(r)) == r


@given(st.integers(1, 5), st.integers(0, 6), st.data())
def test_rank_unrank_roundtrip(d, n, data):
    for kind in ("fixed_N", "truncated"):
        b = basis(d, kind, n)
        r = data.draw(st.integers(0, b.dim - 1))
        assert b.rank(b.unrank(r)) == r


@given(st.integers(1, 4), st.integers(1, 5))
def test_truncated_prefix_property(d, n):
    # the basis truncated at n - 1 is a prefix of the one truncated at n
    small, big = truncated(d, n - 1), truncated(d, n)
    np.testing.assert_array_equal(big.states[: small.dim], small.states)
    np.testing.assert_array_equal(big.ranks(small.states), np.arange(small.dim))


def test_outside_states_rank_minus_one():
    b = fixed_N(3, 2)
    assert b.rank([1, 1, 1]) == -1
    assert b.rank([3, -1, 0]) == -1
    assert truncated(2, 2).rank([2, 1]) == -1


def test_unrank_out_of_range():
    with pytest.raises(IndexError):
        fixed_N(2, 2).unrank(3)


def test_cap():
    with pytest.raises(SizeOverflow):
        fixed_N(10, 10, cap=1000)
