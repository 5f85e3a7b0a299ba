import pytest

from lagflow.families import catalog_defaults


@pytest.fixture(scope="session")
def catalog():
    return {inst.family.value: inst for inst in catalog_defaults()}
