"""
Shared pytest configuration
Registers the `slow` marker used by the larger acceptance instances.
"""

import pytest

from generators import double_wheel, k4


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: n = 14 / n = 20 acceptance instances")


@pytest.fixture
def tetrahedron():
    return k4()


@pytest.fixture
def octahedron():
    return double_wheel(6)
