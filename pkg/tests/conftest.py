import random

import pytest
from hypothesis import HealthCheck, settings
import hypothesis.strategies as st

from reidemeister.grp import Elem
from reidemeister.intlat import IntMat

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def elems(v=10, n=10):
    return st.builds(lambda m, k, j: Elem((m, k), j),
                     st.integers(-v, v), st.integers(-v, v), st.integers(-n, n))


def int_mats(k=2, bound=20):
    return st.lists(st.lists(st.integers(-bound, bound), min_size=k, max_size=k),
                    min_size=k, max_size=k).map(IntMat.of)


def random_elem(rng: random.Random, v: int, n: int) -> Elem:
    return Elem((rng.randint(-v, v), rng.randint(-v, v)), rng.randint(-n, n))


@pytest.fixture
def rng():
    return random.Random(20040401)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
