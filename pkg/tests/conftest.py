import os

import pytest

from polyaforge.degrees import DegreeSet

# Heavy statistical proxies (acceptance criteria 4, 6, 7, 9) run by default;
# POLYAFORGE_FAST=1 trims sample counts for quick development loops.
FAST = os.environ.get("POLYAFORGE_FAST", "0") == "1"


@pytest.fixture(scope="session")
def omega_nat():
    return DegreeSet.parse("1+")


@pytest.fixture(scope="session")
def omega_13():
    return DegreeSet.parse("1,3")


@pytest.fixture(scope="session")
def omega_124():
    return DegreeSet.parse("1,2,4")
