from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nilcoh.catalog import make_abelian, make_heisenberg_x_line, make_iwasawa
from nilcoh.scalars import GaussianRational

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
small_gaussians = st.builds(GaussianRational, small_rationals, small_rationals)


def rational_matrices(max_rows=5, max_cols=5, elements=small_rationals):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@pytest.fixture(scope="session")
def heis():
    return make_heisenberg_x_line(1)


@pytest.fixture(scope="session")
def iwasawa():
    return make_iwasawa()


@pytest.fixture(scope="session")
def abelian4():
    return make_abelian(4)


# one summary line per acceptance criterion
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    ok = call.excinfo is None
    detail = getattr(item, "criterion_detail", "")
    if not ok:
        detail = str(call.excinfo.value).splitlines()[0] if str(call.excinfo.value) else \
            call.excinfo.typename
    _CRITERIA[number] = (ok, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title, detail = _CRITERIA[number]
        line = "criterion %d %s: %s" % (number, "PASS" if ok else "FAIL", title)
        if detail:
            line += " [%s]" % detail
        terminalreporter.write_line(line)
