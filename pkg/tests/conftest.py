import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ratmaps import GF, QQ, PolyRing

settings.register_profile("ratmaps", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ratmaps")


def polys(ring, max_terms=4, max_exp=3, coeff=5):
    """Hypothesis strategy for small polynomials of ``ring``."""
    n = ring.nvars
    term = st.tuples(
        st.tuples(*[st.integers(0, max_exp) for _ in range(n)]),
        st.integers(-coeff, coeff),
    )

    def build(terms):
        f = ring.zero()
        for e, c in terms:
            f = f + ring.monomial(e, ring.field(c))
        return f

    return st.lists(term, max_size=max_terms).map(build)


def random_form(ring, degree, rng, terms=3, coeff=3):
    """A random homogeneous form (possibly zero)."""
    from itertools import product

    monos = [e for e in product(range(degree + 1), repeat=ring.nvars) if sum(e) == degree]
    f = ring.zero()
    for e in rng.sample(monos, min(terms, len(monos))):
        f = f + ring.monomial(e, ring.field(rng.randint(-coeff, coeff)))
    return f


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def P2():
    return PolyRing(QQ, "x,y,z")


@pytest.fixture
def P2p():
    return PolyRing(GF(32003), "x,y,z")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    results = item.config._criteria.setdefault(number, [title, True])
    if report.failed:
        results[1] = False


def pytest_terminal_summary(terminalreporter, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria):
        title, ok = criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
