from __future__ import annotations

import pytest

from pbdonations import Aggregator, UtilityFlavor, dp_max_scores, solve_plain
from pbdonations import fixtures as fx
from pbdonations.model import build_instance

ALL_RULES = [(fl, ag) for fl in UtilityFlavor for ag in Aggregator]


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Compile the jit kernels once so timed tests measure the algorithms.
    inst = build_instance([1, 2], [[1, 2], [2, 1]], budget=2, types=[[0], []], lower=[0], upper=[2])
    for fl, ag in ALL_RULES:
        solve_plain(fl, ag, inst)
    dp_max_scores(inst)


@pytest.fixture(scope="session")
def example1():
    return fx.example1()


@pytest.fixture(scope="session")
def theorem1():
    return fx.theorem1()


@pytest.fixture(scope="session")
def theorem1_donated():
    return fx.theorem1_donated()


@pytest.fixture(scope="session")
def welfare_mono_instance():
    return fx.welfare_mono()


@pytest.fixture(scope="session")
def theorem8_family():
    return fx.theorem8_family()
