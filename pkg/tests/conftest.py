import pytest

from catalog import POSETS, make_frame


@pytest.fixture(scope="session")
def frames():
    return {name: make_frame(name) for name in POSETS}


@pytest.fixture(scope="session")
def o2(frames):
    return frames["point"]


@pytest.fixture(scope="session")
def o3(frames):
    return frames["chain2"]


@pytest.fixture(scope="session")
def o4(frames):
    return frames["anti2"]
