import math

import numpy as np
import pytest

from eliptico import catalog
from eliptico.ellipticity import ellipticity_constant
from eliptico.erros import ErroEntrada, ErroNaoEliptico, ErroTamanho
from eliptico.grid_spectral import GridFunction, PeriodicGrid, random_band_limited, single_mode
from eliptico.linear_solver import apply_linear
from eliptico.oracle_verify import (apply_dense, assemble_dense, brute_nu, oracle_equivalence, solve_dense,
                                    spectral_derivative_1d)


def test_one_dimensional_derivative():
    G = 8
    p = np.arange(G) / G
    D = spectral_derivative_1d(G)
    np.testing.assert_allclose(D @ np.sin(2 * np.pi * p), 2 * np.pi * np.cos(2 * np.pi * p), atol=1e-12)
    np.testing.assert_allclose(D @ (-1.0) ** np.arange(G), 0.0, atol=1e-12)
    np.testing.assert_allclose(D.T, -D, atol=1e-14)


def test_derivative_scales_with_period():
    np.testing.assert_allclose(spectral_derivative_1d(8, 2.0), spectral_derivative_1d(8) / 2.0)


def test_dense_matrix_shape_and_constants(dirac):
    grid = PeriodicGrid(3, 4)
    matriz = assemble_dense(dirac, grid)
    assert matriz.shape == (256, 256)
    np.testing.assert_allclose(matriz @ np.ones(256), 0.0, atol=1e-12)


def test_dense_apply_matches_spectral(cr, rng):
    grid = PeriodicGrid(2, 16)
    u = random_band_limited(grid, 2, rng)
    denso = apply_dense(assemble_dense(cr, grid), u)
    espectral = apply_linear(cr, u).values
    np.testing.assert_allclose(denso.values, espectral, atol=1e-11 * np.max(np.abs(espectral)))


@pytest.mark.parametrize('nome,G', [('dirac', 4), ('cauchy_riemann', 8), ('generalized_cr(2,1,1,1)', 8)])
def test_oracle_equivalence(nome, G, rng):
    A = catalog.get(*catalog.parse_reference(nome))
    relatorio = oracle_equivalence(A, PeriodicGrid(A.n, G), rng, amostras=3)
    assert relatorio.holds
    assert relatorio.samples == 3
    assert relatorio.to_row()['passed']


def test_dense_closed_form(dirac):
    grid = PeriodicGrid(3, 4)
    f = single_mode(grid, 4, 0, [1, 0, 0], amplitude=2 * np.pi, shape='cos')
    u = solve_dense(dirac, f)
    np.testing.assert_allclose(u.values, single_mode(grid, 4, 0, [1, 0, 0]).values, atol=1e-10)


def test_dense_zero_rhs(cr):
    u = solve_dense(cr, GridFunction.zeros(PeriodicGrid(2, 8), 2))
    np.testing.assert_allclose(u.values, 0.0, atol=1e-14)


def test_dense_size_cap(dirac, cr):
    with pytest.raises(ErroTamanho):
        assemble_dense(dirac, PeriodicGrid(3, 16))
    with pytest.raises(ErroTamanho):
        solve_dense(cr, GridFunction.zeros(PeriodicGrid(2, 64), 2))


def test_zero_tensor_kernel_has_witness():
    with pytest.raises(ErroNaoEliptico) as erro:
        solve_dense(catalog.zero(2, 2), GridFunction.zeros(PeriodicGrid(2, 4), 2))
    assert isinstance(erro.value.witness, GridFunction)


@pytest.mark.parametrize('nome,esperado', [('dirac', 1.0), ('cauchy_riemann', 1.0),
                                           ('generalized_cr(2,1,1,1)', 2 / math.sqrt(5)), ('zero', 0.0)])
def test_brute_nu(nome, esperado):
    A = catalog.get(*catalog.parse_reference(nome))
    assert brute_nu(A) == pytest.approx(esperado, abs=1e-6)


def test_brute_nu_bounds_refined_value(gcr):
    assert brute_nu(gcr) >= ellipticity_constant(gcr).nu - 1e-12


def test_brute_nu_resolution_floor(dirac):
    with pytest.raises(ErroEntrada):
        brute_nu(dirac, dense_resolution=50_000)
