from __future__ import annotations

import pytest

import towermind as tm


@pytest.fixture(scope="session")
def catalog():
    return tm.load_catalog()


@pytest.fixture(scope="session")
def levels():
    return tm.load_benchmark_levels()


@pytest.fixture()
def lv1(levels):
    return levels["Lv1"]
