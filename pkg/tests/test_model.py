import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bogolab.errors import (
    MissingW2,
    ModelFormatError,
    NonFinite,
    NonHermitianKinetic,
    ProfileNotEven,
    SymmetryViolation,
)
from bogolab.model import (
    build_dimer,
    build_random,
    build_ring,
    check_assumption_c0,
    load_problem,
    problem_from_json,
    problem_to_json,
    rotate_problem,
    save_problem,
    symmetry_defects,
    validate_problem,
)
from oracles import generalized_max_eig, random_unitary

HOP = np.array([[0.0, -1.0], [-1.0, 0.0]])


def contact(d=2, U=1.0):
    W = np.zeros((d,) * 4)
    for m in range(d):
        W[m, m, m, m] = U
    return W


def test_validate_accepts_dimer_and_records_shift():
    p = validate_problem(HOP, contact())
    assert p.shift == pytest.approx(2.0)
    assert np.linalg.eigvalsh(p.T_shifted)[0] == pytest.approx(1.0)
    # stored data is untouched
    assert np.array_equal(p.T, HOP)


def test_validate_reports_hermiticity_violation():
    W = np.zeros((2,) * 4, dtype=complex)
    W[0, 0, 1, 1] = 1.0
    W[1, 1, 0, 0] = 2.0
    with pytest.raises(SymmetryViolation) as err:
        validate_problem(HOP, W)
    assert err.value.symmetry == "Hermiticity(W)"
    assert err.value.magnitude == pytest.approx(1.0)
    assert err.value.code == "SymmetryViolation"


def test_validate_reports_pair_exchange_violation():
    W = np.zeros((2,) * 4)
    W[0, 1, 0, 1] = 1.0
    with pytest.raises(SymmetryViolation, match="PairExchange"):
        validate_problem(HOP, W)


def test_non_hermitian_kinetic():
    with pytest.raises(NonHermitianKinetic):
        validate_problem(np.array([[0, 1j], [1j, 0]]), contact())


def test_non_finite():
    T = HOP.copy()
    T[0, 0] = np.nan
    with pytest.raises(NonFinite):
        validate_problem(T, contact())
    W = contact()
    W[0, 0, 0, 0] = np.inf
    with pytest.raises(NonFinite):
        validate_problem(HOP, W)


def test_dimer_builder():
    p = build_dimer(1.0, 1.0)
    assert p.W[0, 0, 0, 0] == 1 and p.W[1, 1, 1, 1] == 1
    assert np.count_nonzero(p.W) == 2
    assert np.array_equal(p.W2, p.W)
    assert np.array_equal(build_dimer(0, 0).T, np.zeros((2, 2)))
    assert build_dimer(1, -3).W2[0, 0, 0, 0] == 9


def test_ring_builder():
    p = build_ring(3, 1.0, [1, 1, 1])
    np.testing.assert_allclose(np.diag(p.T).real, [-2, 1, 1], atol=1e-15)
    # momentum conservation and contact value 1/L
    assert p.W[0, 0, 0, 0] == pytest.approx(1 / 3)
    assert p.W[1, 2, 0, 0] == pytest.approx(1 / 3)
    assert p.W[1, 1, 0, 0] == 0
    assert not np.any(build_ring(4, 0.0, np.zeros(4)).W)
    with pytest.raises(ProfileNotEven):
        build_ring(3, 1.0, [1, 2, 1])


def test_ring_squared_interaction_of_contact_is_contact():
    # w(r) = g delta(r) so w^2 = g^2 delta(r)
    p = build_ring(4, 1.0, [2.0] * 4)
    np.testing.assert_allclose(p.W2, 2.0 * p.W, atol=1e-14)


def test_random_builder_is_deterministic():
    a, b = build_random(7, 4, 0.1), build_random(7, 4, 0.1)
    assert a.same_as(b)
    assert not np.any(build_random(7, 4, 0.0).W)
    assert a.W2 is None
    assert np.linalg.eigvalsh(a.T)[0] == pytest.approx(1.0)


@given(st.integers(0, 10_000), st.integers(2, 4), st.floats(0, 3))
def test_random_problems_satisfy_symmetries(seed, d, strength):
    p = build_random(seed, d, strength)
    for mag, _ in symmetry_defects(p.W).values():
        assert mag <= 1e-12 * max(1.0, np.abs(p.W).max())
    validate_problem(p.T, p.W)


def test_c0_dimer_free_is_zero():
    assert check_assumption_c0(build_dimer(1, 0)) == 0.0


def test_c0_dimer_against_whitening_oracle():
    p = build_dimer(1, 1)
    Ts = p.T_shifted
    rhs = np.kron(np.eye(2), Ts) + np.kron(Ts, np.eye(2))
    expected = generalized_max_eig(p.W2.reshape(4, 4), rhs)
    assert check_assumption_c0(p) == pytest.approx(expected, abs=1e-12)
    assert check_assumption_c0(p) == pytest.approx(1 / 3, abs=1e-12)


def test_c0_ring_is_finite_and_relabeling_invariant():
    p = build_ring(3, 1.0, [1, 1, 1])
    c0 = check_assumption_c0(p)
    assert c0 == pytest.approx(0.25, abs=1e-12)
    # a cyclic relabeling of sites is a unitary change of the plane-wave basis
    F = np.exp(-2j * np.pi * np.outer(np.arange(3), np.arange(3)) / 3) / np.sqrt(3)
    S = np.roll(np.eye(3), 1, axis=0)
    U = F @ S @ F.conj().T
    Tp, Wp = rotate_problem(p, U)
    _, W2p = rotate_problem(validate_problem(p.T, p.W2), U)
    q = validate_problem(Tp, Wp, W2p)
    assert check_assumption_c0(q) == pytest.approx(c0, abs=1e-10)


@given(st.integers(0, 1000))
def test_c0_unitary_invariance(seed):
    p = build_dimer(1, 1.5)
    U = random_unitary(np.random.default_rng(seed), 2)
    Tp, Wp = rotate_problem(p, U)
    _, W2p = rotate_problem(validate_problem(p.T, p.W2), U)
    q = validate_problem(Tp, Wp, W2p)
    assert check_assumption_c0(q) == pytest.approx(check_assumption_c0(p), abs=1e-8)


def test_c0_needs_w2():
    with pytest.raises(MissingW2):
        check_assumption_c0(build_random(1, 3, 0.1))


def test_json_roundtrip(tmp_path):
    for p in (build_dimer(1, 1), build_ring(3, 1, [1, 0.5, 0.5]), build_random(3, 3, 0.2)):
        path = tmp_path / "m.json"
        save_problem(p, path)
        q = load_problem(path)
        assert q.same_as(p)
        assert json.loads(path.read_text())["shift"] == p.shift


def test_json_rejects_bad_documents(tmp_path):
    doc = problem_to_json(build_dimer(1, 1))
    doc["W"] = doc["W"][:-1]
    with pytest.raises(ModelFormatError):
        problem_from_json(doc)
    bad = problem_to_json(build_dimer(1, 1))
    bad["W"][0 * 8 + 0 * 4 + 1 * 2 + 1] = [1.0, 0.0]
    bad["W"][1 * 8 + 1 * 4 + 0 * 2 + 0] = [2.0, 0.0]
    with pytest.raises(SymmetryViolation):
        problem_from_json(bad)
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ModelFormatError):
        load_problem(path)
