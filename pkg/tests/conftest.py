"""
Shared pytest setup: puts src/ on the import path and registers markers.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from g2_plancherel.roots.rootsys import build_root_system  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running quadrature round trips")


@pytest.fixture
def g2():
    return build_root_system("G2")


@pytest.fixture
def a1():
    return build_root_system("A1")


@pytest.fixture(params=[1.0, 4.0], ids=["scale1", "scale4"])
def g2_scaled(request):
    return build_root_system("G2", request.param)


@pytest.fixture(params=[1.0, 4.0], ids=["scale1", "scale4"])
def a1_scaled(request):
    return build_root_system("A1", request.param)
