import pytest

from oodn import load_fixture


@pytest.fixture(scope="session")
def polygons():
    return load_fixture("polygons.oodn.json")


@pytest.fixture(scope="session")
def figures():
    return load_fixture("figures.oodn.json")
