# Fixtures compartilhadas: tensores do catálogo, grades e gerador com semente fixa

import pytest

import config_manager
from eliptico import catalog
from eliptico.aleatorio import make_rng
from eliptico.grid_spectral import PeriodicGrid
from eliptico.operador import NonlinearOperator
from eliptico.tensor_core import contract


@pytest.fixture
def dirac():
    return catalog.dirac()


@pytest.fixture
def cr():
    return catalog.cauchy_riemann()


@pytest.fixture
def gcr():
    return catalog.generalized_cr(2, 1, 1, 1)


@pytest.fixture
def grid3():
    return PeriodicGrid(3, 8)


@pytest.fixture
def grid2():
    return PeriodicGrid(2, 16)


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def linear_operator():
    def construir(A):
        return NonlinearOperator(lambda x, Q: contract(A, Q), A, declared_nearness=0.0, nome='linear')
    return construir


@pytest.fixture(autouse=True)
def _limpar_cache_config():
    config_manager.limpar_cache()
    yield
    config_manager.limpar_cache()
