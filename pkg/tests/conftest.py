import numpy as np
import pytest
from hypothesis import settings

from bogolab.hartree import find_minimizers, make_state
from bogolab.model import build_dimer, build_ring, validate_problem

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def dimer():
    return build_dimer(1.0, 1.0)


@pytest.fixture(scope="session")
def dimer_state(dimer):
    return find_minimizers(dimer)[0]


@pytest.fixture(scope="session")
def attractive():
    return build_dimer(1.0, -3.0)


@pytest.fixture(scope="session")
def ring3():
    return build_ring(3, 1.0, [1.0, 1.0, 1.0])


@pytest.fixture(scope="session")
def free3():
    return validate_problem(np.diag([0.0, 1.0, 2.0]), np.zeros((3, 3, 3, 3)))


@pytest.fixture(scope="session")
def free3_state(free3):
    return make_state(free3, [1, 0, 0])


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and rep.when == "call":
        number, title = mark.args
        status = "PASS" if rep.passed else "FAIL"
        _ACCEPTANCE.append((number, f"criterion {number}: {status}  {rep.duration:7.2f} s  {title}"))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
