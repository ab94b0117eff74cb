from pathlib import Path

import pytest

from simplexdesigns.cliques.graph import build_graph
from simplexdesigns.constructions import canonical_product, hyperplane_complement_clique, non_centered_clique
from simplexdesigns.designs.design import design_from_clique, load_design
from simplexdesigns.geometry import geometry_for

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "simplexdesigns" / "data"
KINDS = ("c1", "c2", "c3", "c4", "non_centered")


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def geometry7():
    return geometry_for(3)


@pytest.fixture(scope="session")
def geometry15():
    return geometry_for(4)


@pytest.fixture(scope="session")
def graph7(geometry7):
    return build_graph(geometry7)


@pytest.fixture(scope="session")
def graph15(geometry15):
    return build_graph(geometry15)


@pytest.fixture(scope="session")
def fixture_designs():
    return {kind: load_design(FIXTURE_DIR / f"{kind}.txt") for kind in KINDS}


@pytest.fixture(scope="session")
def constructed_cliques():
    return {
        "c1": canonical_product(7),
        "c2": canonical_product(3),
        "c3": canonical_product(1),
        "c4": canonical_product(0),
        "non_centered": non_centered_clique(),
        "hyperplane": hyperplane_complement_clique(4),
    }


@pytest.fixture(scope="session")
def constructed_designs(constructed_cliques):
    return {kind: design_from_clique(clique) for kind, clique in constructed_cliques.items()}
