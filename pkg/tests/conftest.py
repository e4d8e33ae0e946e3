import pytest

from casex.molecule import load_molecule


@pytest.fixture(scope="session")
def oh():
    return load_molecule("OH_X2Pi32")


@pytest.fixture(scope="session")
def icl():
    return load_molecule("ICl_A3Pi1")
