import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bogolab.fock import apply_string, assemble, build_hn, fixed_N, read_matrix_market, truncated, write_matrix_market
from bogolab.fock.operators import one_body_terms
from bogolab.model import build_random, validate_problem
from oracles import dense_hamiltonian


def test_dimer_two_particles(dimer):
    H = build_hn(dimer, 2).to_dense()
    r2 = np.sqrt(2)
    np.testing.assert_allclose(H, [[1, -r2, 0], [-r2, 0, -r2], [0, -r2, 1]], atol=1e-14)


@pytest.mark.parametrize("seed", [3, 11])
def test_against_kronecker_oracle(seed):
    p = build_random(seed, 3, 0.8)
    N = 4
    H = build_hn(p, N)
    ref = dense_hamiltonian(p.T, p.W, N, H.basis.states)
    np.testing.assert_allclose(H.to_dense(), ref, atol=1e-12)


def test_free_hamiltonian_is_diagonal_sum(free3):
    H = build_hn(free3, 5)
    np.testing.assert_allclose(H.to_dense(), np.diag(H.basis.states @ np.array([0.0, 1.0, 2.0])), atol=1e-15)


@given(st.integers(0, 1000), st.integers(2, 4), st.integers(2, 5))
def test_hermitian(seed, d, N):
    H = build_hn(build_random(seed, d, 1.0), N)
    assert H.hermiticity_defect() < 1e-12


def test_one_body_sums_match_particle_number():
    p = build_random(1, 3, 0.0)
    b = fixed_N(3, 3)
    Nop = assemble(b, list(one_body_terms(np.eye(3)))).to_dense()
    np.testing.assert_allclose(Nop, 3 * np.eye(b.dim), atol=1e-14)


def test_apply_string_factors():
    states = np.array([[2, 1], [0, 3]])
    new, factor, ok = apply_string(states, (0,), (1,))
    assert ok.tolist() == [True, True]
    assert new.tolist() == [[3, 0], [1, 2]]
    assert factor.tolist() == [3, 3]
    _, _, ok = apply_string(states, (), (0,))
    assert ok.tolist() == [True, False]


def test_truncation_drops_images():
    b = truncated(1, 2)
    adag = assemble(b, [(1.0, (0,), ())]).to_dense()
    np.testing.assert_allclose(adag, [[0, 0, 0], [1, 0, 0], [0, np.sqrt(2), 0]])


def test_sparse_layout(dimer):
    H = build_hn(dimer, 3)
    assert H.row_offsets[0] == 0 and H.row_offsets[-1] == len(H.values) == len(H.col_indices)
    x = np.arange(H.dim, dtype=complex)
    np.testing.assert_allclose(H @ x, H.to_dense() @ x)


def test_matrix_market_roundtrip(tmp_path):
    H = build_hn(build_random(4, 3, 1.0), 4)
    path = tmp_path / "h.mtx"
    write_matrix_market(H, path)
    back = read_matrix_market(path)
    assert np.array_equal(back.to_dense(), H.to_dense())


def test_rejects_small_N(dimer):
    with pytest.raises(ValueError):
        build_hn(dimer, 1)
