import pytest

from flipent import GroundStateCoeffs, build_ground_state, build_torus, star_group


@pytest.fixture(scope="session")
def torus_k2():
    return build_torus(2)


@pytest.fixture(scope="session")
def torus_k3():
    return build_torus(3)


@pytest.fixture(scope="session")
def stars_k2(torus_k2):
    return star_group(torus_k2)


@pytest.fixture(scope="session")
def stars_k3(torus_k3):
    return star_group(torus_k3)


@pytest.fixture(scope="session")
def xi00_k2(torus_k2):
    return build_ground_state(torus_k2, GroundStateCoeffs.xi(0, 0))


@pytest.fixture(scope="session")
def xi00_k3(torus_k3):
    return build_ground_state(torus_k3, GroundStateCoeffs.xi(0, 0))
