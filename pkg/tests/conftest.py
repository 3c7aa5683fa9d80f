import pytest

from cosmic_dirac.model import ModelParams, QuantumNumbers

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _ACCEPTANCE[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}")


@pytest.fixture
def ref_params():
    # moderate coupling, s1 != 0, eps ~ 0.53 at n_r = 0
    return ModelParams(M=1.0, omega=1.0, rho=0.8, s1=0.3, s2=0.1)


@pytest.fixture
def ref_qn():
    return QuantumNumbers(m=1, k=0.5, s=1, n_r=0)


@pytest.fixture
def strong_params():
    return ModelParams(M=1.0, omega=4.0, rho=0.7, s1=0.6, s2=0.2)


@pytest.fixture
def strong_qn():
    return QuantumNumbers(m=0, k=0.8, s=1, n_r=0)
