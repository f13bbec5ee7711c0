from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nonarch.valued_field import base_field, make_extension

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): an exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = getattr(report, "_acceptance", None)
    if num is not None:
        _ACCEPTANCE[num[0]] = (num[1], "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result()._acceptance = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        text, status = _ACCEPTANCE[num]
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {text}")


@pytest.fixture
def Q2():
    return base_field(2)


@pytest.fixture
def Q3():
    return base_field(3)


@pytest.fixture
def Q5():
    return base_field(5)


@pytest.fixture
def K2():
    """Q_2(sqrt 2)."""
    return make_extension(2, "T^2-2")


@pytest.fixture
def K3():
    """Q_3(sqrt 3)."""
    return make_extension(3, "T^2-3")


def small_fractions(p=None, max_num=60, max_den=12):
    """Fractions with small numerator and denominator, zero included."""
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )
