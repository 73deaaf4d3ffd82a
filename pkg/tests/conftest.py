import functools

import pytest
from hypothesis import HealthCheck, settings

from hopftrace.linalg import GF
from hopftrace.suites import Context, run_suite
from hopftrace.zoo import function_algebra, group_algebra, sweedler_h4, taft

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GF5, GF7 = GF(5), GF(7)

# label -> factory; the desk-scale zoo every acceptance criterion sweeps
ZOO_CASES = {
    "kZ1_QQ": lambda: group_algebra(1),
    "kZ2_QQ": lambda: group_algebra(2),
    "kZ3_QQ": lambda: group_algebra(3),
    "kZ4_QQ": lambda: group_algebra(4),
    "kZ2_GF5": lambda: group_algebra(2, GF5),
    "kZ4_GF5": lambda: group_algebra(4, GF5),
    "funZ2_QQ": lambda: function_algebra(2),
    "funZ3_QQ": lambda: function_algebra(3),
    "H4_QQ": lambda: sweedler_h4(),
    "H4_GF5": lambda: sweedler_h4(GF5),
    "taft3_GF7": lambda: taft(3, 2, GF7),
}


@functools.lru_cache(maxsize=None)
def zoo(label):
    return ZOO_CASES[label]()


@functools.lru_cache(maxsize=None)
def context(label):
    return Context.of(zoo(label))


@functools.lru_cache(maxsize=None)
def suite_report(label, suite):
    """Suite reports are shared between unit and acceptance tests within one session."""
    return run_suite(context(label), suite)


@pytest.fixture(params=sorted(ZOO_CASES))
def zoo_label(request):
    return request.param


@pytest.fixture
def h4():
    return zoo("H4_QQ")


@pytest.fixture
def z2():
    return zoo("kZ2_QQ")


@pytest.fixture
def t3():
    return zoo("taft3_GF7")
