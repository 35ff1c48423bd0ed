import json

import numpy as np
import pytest

from bogolab import harness
from bogolab.bogoliubov import diagonalize, enumerate_levels, quadratic_form
from bogolab.errors import (
    DegenerateMinimizer,
    HypothesisViolated,
    InsufficientData,
    InsufficientN,
    TargetUnstable,
    UnstableCondensate,
)
from bogolab.fock import build_hn, eig_dense
from bogolab.hartree import make_state, solve_stationary
from bogolab.harness import (
    ComparisonReport,
    ComparisonRow,
    compare_spectra,
    convergence_fit,
    localization_profile,
    read_csv,
    report_to_json,
    thm2_check,
    thm3_check,
    write_csv,
    write_gnuplot,
    write_json,
)
from bogolab.model import build_ring, validate_problem


def test_free_problem_compare_is_exact(free3, free3_state):
    report = compare_spectra(free3, free3_state, [4, 6], 6)
    assert all(abs(r.gap) < 1e-10 for r in report.rows)
    assert report.metadata["targeting"] == "lowest"


def test_compare_gaps_shrink(dimer, dimer_state):
    report = compare_spectra(dimer, dimer_state, [8, 16, 32], 3)
    for ell in (1, 2, 3):
        g = [abs(x) for _, x in report.gaps(ell)]
        assert g[0] > g[1] > g[2]
    levels = enumerate_levels(diagonalize(quadratic_form(dimer, dimer_state)), 3)
    assert [r.bog_level for r in report.at(8)] == pytest.approx(levels)
    for r in report.rows:
        assert r.gap == pytest.approx(r.exact_excitation - r.bog_level, abs=1e-14)
        assert 0 <= r.nplus < r.N


def test_compare_is_deterministic(ring3):
    s = harness.find_minimizers(ring3)[0]
    a = harness.csv_text(compare_spectra(ring3, s, [6, 8], 3))
    b = harness.csv_text(compare_spectra(ring3, s, [6, 8], 3))
    assert a == b


def test_compare_nearest_on_landau_state():
    p = build_ring(3, 1.0, [0.3, 0.3, 0.3])
    s = solve_stationary(p, [0, 1, 0])
    report = compare_spectra(p, s, [8, 16], 3)
    assert report.metadata["targeting"] == "nearest"
    for ell in (1, 2, 3):
        g = [abs(x) for _, x in report.gaps(ell)]
        assert g[1] < g[0]


def test_compare_rejects_unstable():
    # single-mode free problem with strong attraction in the excited channel
    T = np.diag([0.0, 0.1])
    W = np.zeros((2, 2, 2, 2))
    W[1, 1, 0, 0] = W[0, 0, 1, 1] = 3.0
    p = validate_problem(T, W)
    s = make_state(p, [1, 0])
    with pytest.raises(UnstableCondensate):
        compare_spectra(p, s, [4], 1)
    with pytest.raises(TargetUnstable):
        thm2_check(p, s, 1, 1, 50, 10.0)


def test_thm2_dimer(dimer, dimer_state):
    check = thm2_check(dimer, dimer_state, 2, 1, 100, 10.0)
    assert check.passed and check.found >= 1
    assert check.delta == pytest.approx(check.recompute_delta())
    assert check.lam == pytest.approx(np.sqrt(6) + (np.sqrt(6) - 2.5) / 2, abs=1e-10)
    assert "calibrated" in check.note


def test_thm2_insufficient_N(dimer, dimer_state):
    with pytest.raises(InsufficientN):
        thm2_check(dimer, dimer_state, 2, 1, 5, 10.0)


def test_localization_profile():
    np.testing.assert_allclose(localization_profile([0, 0.5, 0.75, 1, 2]), [1, 1, 0.5, 0, 0])


def test_thm3_dimer(dimer, dimer_state):
    checks = thm3_check(dimer, dimer_state, [16, 64], 2)
    assert [c.M for c in checks] == [3, 4]
    assert checks[1].residual < checks[0].residual
    assert all(0.9 < c.norm_kept <= 1 + 1e-12 for c in checks)


def test_thm3_hypothesis_violation(free3):
    # a level whose condensate is the wrong mode: N_+ grows linearly
    s = make_state(free3, [0, 0, 1])
    with pytest.raises(HypothesisViolated):
        thm3_check(free3, s, [4, 8, 16], 1)


def test_multi_condensate_degenerate():
    p = validate_problem(np.diag([0.0, 0.0, 1.0]), np.zeros((3,) * 4))
    with pytest.raises(DegenerateMinimizer):
        harness.multi_condensate(p, [4, 6], 2)


def test_convergence_fit():
    rows = [ComparisonRow(N, 1, 1.0 / N, 0.0, 1.0 / N, 0.0) for N in (8, 16, 32)]
    rows += [ComparisonRow(N, 2, 0.0, 0.0, 0.0, 0.0) for N in (8, 16, 32)]
    fit = convergence_fit(ComparisonReport(rows))
    assert fit[1]["slope"] == pytest.approx(-1.0) and fit[1]["r2"] == pytest.approx(1.0)
    assert fit[2]["skipped"] and fit[2]["excluded"] == 3
    with pytest.raises(InsufficientData):
        convergence_fit(ComparisonReport(rows[3:]))


def test_csv_roundtrip(tmp_path, dimer, dimer_state):
    report = compare_spectra(dimer, dimer_state, [6, 8], 2)
    write_csv(report, tmp_path / "r.csv")
    back = read_csv(tmp_path / "r.csv")
    assert back.rows == report.rows


def test_json_and_gnuplot(tmp_path, dimer, dimer_state):
    report = compare_spectra(dimer, dimer_state, [6, 8], 2)
    write_json(report, tmp_path / "r.json")
    doc = json.loads((tmp_path / "r.json").read_text())
    assert len(doc["rows"]) == 4
    write_gnuplot(report, tmp_path / "g.dat", ell=1)
    lines = (tmp_path / "g.dat").read_text().splitlines()
    assert lines[0].startswith("#") and len(lines) == 3
    assert float(lines[1].split()[1]) == abs(report.gaps(1)[0][1])


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("BOGOLAB_THREADS", "3")
    assert harness.thread_count() == 3
    monkeypatch.setenv("BOGOLAB_THREADS", "1")
    assert harness.thread_count() == 1


def test_parallel_matches_serial(monkeypatch, ring3):
    s = harness.find_minimizers(ring3)[0]
    monkeypatch.setenv("BOGOLAB_THREADS", "1")
    a = report_to_json(compare_spectra(ring3, s, [4, 6, 8], 2))
    monkeypatch.setenv("BOGOLAB_THREADS", "4")
    b = report_to_json(compare_spectra(ring3, s, [4, 6, 8], 2))
    assert a == b


@pytest.mark.parametrize("level", [1, 2, 3])
def test_thm2_calibrated_passes_dimer(dimer, dimer_state, level):
    assert thm2_check(dimer, dimer_state, level, 1, 100, 10.0).passed


def test_thm2_calibrated_passes_ring(ring3):
    s = harness.find_minimizers(ring3)[0]
    check = thm2_check(ring3, s, 1, 1, 100, 10.0)
    assert check.passed and check.found >= 1
