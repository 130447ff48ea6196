import random

import pytest
from hypothesis import settings

# property suites run on a fixed seed unless asked otherwise
settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=200)
settings.register_profile("explore", deadline=None, max_examples=1000)
settings.load_profile("fixed")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611,
                     help="seed for the randomized guard tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)
