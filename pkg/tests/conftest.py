from __future__ import annotations

from importlib.resources import files

import pytest

from tripres.correspondence import PointLineCorrespondence, read_correspondence
from tripres.incidence import difference_set_plane, enumerate_correlations, read_plane
from tripres.presentation import TrianglePresentation, read_triples

FIXTURES = files("tripres") / "fixtures"

BAER_POINTS = (9, 17, 20, 33, 38, 42, 43, 46, 47, 56, 59, 64, 70)
BAER_LINES = (3, 11, 22, 34, 46, 53, 62, 64, 70, 79, 84, 87, 89)
PARITY_LINES = (3, 11, 62, 64, 87)


@pytest.fixture(scope="session")
def hughes():
    return read_plane(FIXTURES / "hughes9.plane")


@pytest.fixture(scope="session")
def hughes_lam(hughes):
    return read_correspondence(FIXTURES / "hughes9.lambda", hughes)


@pytest.fixture(scope="session")
def hughes_triples():
    return read_triples(FIXTURES / "hughes9.tri")


@pytest.fixture(scope="session")
def hughes_tp(hughes, hughes_lam, hughes_triples):
    return TrianglePresentation(hughes, hughes_lam, hughes_triples)


@pytest.fixture(scope="session")
def hughes_correlations(hughes):
    return list(enumerate_correlations(hughes))


@pytest.fixture(scope="session")
def pg2():
    return difference_set_plane(2)


@pytest.fixture(scope="session")
def pg3():
    return difference_set_plane(3)


@pytest.fixture(scope="session")
def cyclic_tp(pg2):
    """The order-2 example: identity correspondence, triples (x, x+1, x+3) mod 7."""
    lam = PointLineCorrespondence.identity(pg2)
    return TrianglePresentation.from_orbits(
        pg2, lam, [(x, (x + 1) % 7, (x + 3) % 7) for x in range(7)]
    )
