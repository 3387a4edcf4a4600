from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kleinquandle.moebius import SL2Matrix
from kleinquandle.numerics import QuadraticField

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda x: x != 0)


def quad(d: int, nonzero: bool = False):
    F = QuadraticField(d)
    s = st.builds(F, rationals, rationals)
    return s.filter(lambda x: not x.is_zero()) if nonzero else s


def sl2_exact(d: int = -1):
    """Random exact SL(2) matrices: a != 0, d = (1 + bc)/a."""
    return st.builds(
        lambda a, b, c: SL2Matrix._raw(a, b, c, (1 + b * c) / a),
        quad(d, nonzero=True),
        quad(d),
        quad(d),
    )


small = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, small, small)


def sl2_float():
    return st.builds(
        lambda a, b, c: SL2Matrix._raw(a, b, c, (1 + b * c) / a),
        complexes.filter(lambda z: abs(z) > 0.5),
        complexes,
        complexes,
    )


# -- acceptance summary ----------------------------------------------------------

_CRITERIA: dict[int, tuple[str, list]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    n, title = marker
    _CRITERIA.setdefault(n, (title, []))[1].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[n]
        ok = outcomes and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def F3():
    return QuadraticField(-3)


@pytest.fixture
def Fi():
    return QuadraticField(-1)


half = Fraction(1, 2)
