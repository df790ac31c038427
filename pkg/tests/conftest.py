import numpy as np
import pytest

from mmind.rules import MM46, feedback_table
from mmind.weights_io import make_policy


@pytest.fixture(scope="session")
def table():
    return feedback_table(MM46)


@pytest.fixture(scope="session")
def fixed_paper_policy():
    return make_policy("fixed:fixed-paper")


@pytest.fixture(scope="session")
def staged_paper_policy():
    return make_policy("staged:staged-paper", force_opening=True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
