import pytest

from gordanmaps.census import gordan_census
from gordanmaps.flags import FlagSystem, hexad
from gordanmaps.presentation import build
from gordanmaps.symmetry import generate_h3, standard_configuration

# acceptance results collected by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {text}")


# hand-built maps, independent of the coset enumerator

TETRAHEDRON_FACES = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
CUBE_FACES = [
    (0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1),
    (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3),
]
OCTAHEDRON_FACES = [
    (0, 2, 4), (0, 4, 3), (0, 3, 5), (0, 5, 2),
    (1, 4, 2), (1, 3, 4), (1, 5, 3), (1, 2, 5),
]


@pytest.fixture(scope="session")
def tetrahedron():
    return FlagSystem.from_faces(TETRAHEDRON_FACES)


@pytest.fixture(scope="session")
def cube():
    return FlagSystem.from_faces(CUBE_FACES)


@pytest.fixture(scope="session")
def gordan():
    return build(5, 4, 6)


@pytest.fixture(scope="session")
def relatives(gordan):
    return {m.symbol: m for m in hexad(gordan)}


@pytest.fixture(scope="session")
def h3():
    return generate_h3()


@pytest.fixture(scope="session")
def two_icosahedra():
    return standard_configuration("two-icosahedra", 2)


@pytest.fixture(scope="session")
def dodecahedron():
    return standard_configuration("dodecahedron")


@pytest.fixture(scope="session")
def icosidodecahedron():
    return standard_configuration("icosidodecahedron")


@pytest.fixture(scope="session")
def census():
    return gordan_census()
