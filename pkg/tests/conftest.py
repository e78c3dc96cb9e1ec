"""Shared fixtures: fields and exhaustive subspace sweeps reused across tests."""
from __future__ import annotations

import pytest

from clutterforge.gf import build_field
from clutterforge.verify import enumerate_subspaces


@pytest.fixture(scope="session")
def f2():
    return build_field(2)


@pytest.fixture(scope="session")
def f3():
    return build_field(3)


@pytest.fixture(scope="session")
def f4():
    return build_field(4)


@pytest.fixture(scope="session")
def f8():
    return build_field(8)


@pytest.fixture(scope="session")
def subspaces_gf2_3():
    return list(enumerate_subspaces(2, 3))


@pytest.fixture(scope="session")
def subspaces_gf3_3():
    return list(enumerate_subspaces(3, 3))


@pytest.fixture(scope="session")
def subspaces_gf4_3():
    return list(enumerate_subspaces(4, 3))


@pytest.fixture(scope="session")
def subspaces_gf3_4():
    return list(enumerate_subspaces(3, 4))
