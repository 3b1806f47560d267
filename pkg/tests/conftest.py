import numpy as np
import pytest

from bcpolar.field import GF, QQ


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=["Q", "Fp:7"], ids=["Q", "F7"])
def field(request):
    return QQ if request.param == "Q" else GF(7)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        name = report.nodeid.split("::")[-1].split("[")[0]
        num = int(name.split("_")[2])
        prev = _CRITERIA.get(num, (name, True))[1]
        _CRITERIA[num] = (name, prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        name, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {name}")
