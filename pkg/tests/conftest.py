import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from biirp.encoding import Genotype, Representation, max_feasible_period, max_feasible_start
from biirp.instance import Customer, Instance, generate_instance

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def instances(draw, max_n=6, max_h=15):
    n = draw(st.integers(1, max_n))
    H = draw(st.integers(1, max_h))
    coord = st.floats(0, 50, allow_nan=False, allow_infinity=False)
    us = [draw(st.floats(0.25, 6.0)) for _ in range(n)]
    Q = draw(st.floats(max(us), 40.0))
    customers = []
    for k, u in enumerate(us, start=1):
        inv = draw(st.one_of(st.just(0.0), st.floats(0, u * H * 1.2)))
        customers.append(Customer(k, draw(coord), draw(coord), u, inv))
    return Instance("hyp", H, draw(coord), draw(coord), Q, tuple(customers))


@st.composite
def genotypes(draw, inst, kind=None):
    kind = kind or draw(st.sampled_from(list(Representation)))
    periods = tuple(draw(st.integers(1, max_feasible_period(inst, i))) for i in range(1, inst.n + 1))
    if kind is Representation.FREQUENCY:
        return Genotype(kind, periods)
    starts = tuple(draw(st.integers(1, max_feasible_start(inst, i))) for i in range(1, inst.n + 1))
    return Genotype(kind, periods, starts)


@st.composite
def instance_and_genotype(draw, kind=None, max_n=6, max_h=15):
    inst = draw(instances(max_n=max_n, max_h=max_h))
    return inst, draw(genotypes(inst, kind))


def random_genotype(rng: np.random.Generator, inst, kind):
    periods = tuple(int(rng.integers(1, max_feasible_period(inst, i) + 1)) for i in range(1, inst.n + 1))
    if kind is Representation.FREQUENCY:
        return Genotype(kind, periods)
    starts = tuple(int(rng.integers(1, max_feasible_start(inst, i) + 1)) for i in range(1, inst.n + 1))
    return Genotype(kind, periods, starts)


@pytest.fixture
def small_instance():
    return generate_instance(7, 6, 12)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
