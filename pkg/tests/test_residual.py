import numpy as np
import pytest

from bogolab.errors import NotStationary
from bogolab.fock import residual_operator, residual_bound_matrix, residual_bound_min_eig
from bogolab.hartree import find_minimizers, make_state, solve_stationary
from bogolab.harness import thm1_scan
from bogolab.model import build_random, build_ring


def test_free_problem_has_no_residual(free3, free3_state):
    for N in (2, 5):
        M = residual_operator(free3, free3_state, N)
        assert M.matrix.nnz == 0 or np.max(np.abs(M.values)) < 1e-13


@pytest.mark.parametrize(
    "problem,init",
    [
        (build_random(3, 3, 0.4), None),
        (build_random(7, 4, 0.2), None),
        (build_ring(3, 1.0, [1.0, 1.0, 1.0]), None),
        (build_ring(3, 1.0, [0.3, 0.3, 0.3]), [0, 1, 0]),
    ],
)
def test_termwise_identity(problem, init):
    state = find_minimizers(problem, n_starts=8)[0] if init is None else solve_stationary(problem, init)
    for N in (3, 6):
        out = residual_operator(problem, state, N, termwise=True)
        assert out.identity_defect < 1e-12
        assert len(out.terms) == 6
        assert out.M.hermiticity_defect() < 1e-12


def test_termwise_identity_dimer(dimer, dimer_state):
    out = residual_operator(dimer, dimer_state, 10, termwise=True)
    assert out.identity_defect < 1e-12
    # odd terms vanish by the site-swap parity of the symmetric condensate
    assert out.terms[2].matrix.nnz == 0 and out.terms[5].matrix.nnz == 0


def test_requires_stationary_state(dimer):
    with pytest.raises(NotStationary):
        residual_operator(dimer, make_state(dimer, [1, 0]), 4)


@pytest.mark.parametrize("name", ["dimer", "ring3"])
@pytest.mark.parametrize("N", [8, 16])
def test_operator_inequality(request, name, N):
    p = request.getfixturevalue(name)
    s = find_minimizers(p)[0]
    lam = residual_bound_min_eig(p, s, N, 100.0)
    assert lam >= 0
    # the matrix is Hermitian and the bound is tight enough to fail for a tiny constant
    X = residual_bound_matrix(p, s, N, 1e-3)
    assert np.linalg.eigvalsh(X)[0] < 0


def test_excited_probes_decay_like_inverse_square_root(ring3):
    s = find_minimizers(ring3)[0]
    scan = thm1_scan(ring3, s, [16, 32, 64, 128], [(1, 0), (0, 1), (1, 1)], termwise_N=8)
    for probe in [(1, 0), (0, 1), (1, 1)]:
        assert scan.slopes[probe] == pytest.approx(-0.5, abs=0.05)
    assert scan.identity_defect < 1e-12


def test_random_model_probe_slopes():
    p = build_random(3, 3, 0.4)
    s = find_minimizers(p)[0]
    scan = thm1_scan(p, s, [16, 32, 64, 128], [(1, 0), (0, 1)])
    assert all(v == pytest.approx(-0.5, abs=0.05) for v in scan.slopes.values())


def test_vacuum_probe_decays_faster(ring3):
    s = find_minimizers(ring3)[0]
    scan = thm1_scan(ring3, s, [16, 32, 64], [(0, 0)])
    assert scan.slopes[(0, 0)] < -0.9
