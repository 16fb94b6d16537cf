import os

import pytest

from LieExpressionManager import read_presentation
from LieManager import GradedLieAlgebra
from PresentationManager import read_relations
from SemigroupManager import BASE_SEMIGROUP, NumericalSemigroup
from SeriesManager import koszul_dual_series

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def data_path(name):
    return os.path.join(DATA_DIR, name)


@pytest.fixture(scope="session")
def base_semigroup():
    return NumericalSemigroup(BASE_SEMIGROUP)


@pytest.fixture(scope="session")
def j197():
    return read_relations(data_path("J197.rel"))


@pytest.fixture(scope="session")
def j199():
    return read_relations(data_path("J199.rel"))


@pytest.fixture(scope="session")
def ideal_i():
    return read_relations(data_path("I.rel"))


@pytest.fixture(scope="session")
def small_s():
    return read_relations(data_path("S.rel"))


@pytest.fixture(scope="session")
def eta_presentation():
    return read_presentation(data_path("eta.lie"))


@pytest.fixture(scope="session")
def eta_bar_presentation():
    return read_presentation(data_path("eta_bar.lie"))


@pytest.fixture(scope="session")
def eta(eta_presentation):
    """Shared across tests so each degree is built once."""
    return GradedLieAlgebra(eta_presentation, max_degree=7)


@pytest.fixture(scope="session")
def eta_bar(eta_bar_presentation):
    return GradedLieAlgebra(eta_bar_presentation, max_degree=7, assoc_max_degree=7)


@pytest.fixture(scope="session")
def koszul_dual():
    return koszul_dual_series(21)
