import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from config import CACHE_PLANOS
from eliptico import catalog
from eliptico.erros import ErroDimensao, ErroDominio, ErroEntrada, ErroNaoEliptico
from eliptico.grid_spectral import (GridFunction, PeriodicGrid, SpectralField, norm_l2, random_band_limited,
                                    single_mode)
from eliptico.linear_solver import (MultiplierPlan, RegularizerKind, RegularizerSequence, apply_linear, get_plan,
                                    riesz_constant, solve_linear, solve_representation, verify_apriori)


def _erro_relativo(u, v):
    return norm_l2(u - v) / norm_l2(v)


def test_dirac_closed_form(dirac, grid3):
    # A[:, :, 0] = I: u = sin(2πx₁)e₁ resolve A:Du = 2π cos(2πx₁)e₁
    f = single_mode(grid3, 4, 0, [1, 0, 0], amplitude=2 * np.pi, shape='cos')
    u, relatorio = solve_linear(dirac, f)
    esperado = single_mode(grid3, 4, 0, [1, 0, 0])
    assert np.max(np.abs(u.values - esperado.values)) <= 1e-10
    assert relatorio.residual <= 1e-12
    assert relatorio.dropped_mean_norm == 0.0
    assert not relatorio.nyquist_truncated


def test_sine_mode_closed_form(dirac):
    # ∂₁u₁ = sin(2πx₁) com média nula: u₁ = −cos(2πx₁)/(2π)
    grid = PeriodicGrid(3, 16)
    u, relatorio = solve_linear(dirac, single_mode(grid, 4, 0, [1, 0, 0]))
    esperado = single_mode(grid, 4, 0, [1, 0, 0], amplitude=-1 / (2 * np.pi), shape='cos')
    assert np.max(np.abs(u.values - esperado.values)) <= 1e-10
    assert relatorio.residual <= 1e-10


def test_dirac_residual_on_fine_grid(dirac, rng):
    grid = PeriodicGrid(3, 16)
    _, relatorio = solve_linear(dirac, random_band_limited(grid, 4, rng))
    assert relatorio.residual <= 1e-10


@pytest.mark.parametrize('nome', ['dirac', 'cauchy_riemann', 'generalized_cr(2,1,1,1)'])
def test_recovers_band_limited_field(nome, rng):
    A = catalog.get(*catalog.parse_reference(nome))
    grid = PeriodicGrid(A.n, 8)
    exato = random_band_limited(grid, A.N, rng)
    u, relatorio = solve_linear(A, apply_linear(A, exato))
    assert _erro_relativo(u, exato) <= 1e-10
    assert relatorio.residual <= 1e-10


@pytest.mark.parametrize('nome', ['dirac', 'cauchy_riemann', 'generalized_cr(2,1,1,1)'])
def test_apriori_estimate_over_random_data(nome, rng):
    A = catalog.get(*catalog.parse_reference(nome))
    grid = PeriodicGrid(A.n, 8)
    for _ in range(100):
        f = random_band_limited(grid, A.N, rng, mean_zero=False)
        u, _ = solve_linear(A, f)
        relatorio = verify_apriori(A, u, f)
        assert relatorio.holds
        assert relatorio.ratio_grad <= 1.0 + 1e-10


def test_dirac_apriori_is_sharp(dirac, grid3, rng):
    # Aa ortogonal para toda direção: ‖Du‖ = ‖f‖
    f = random_band_limited(grid3, 4, rng)
    u, _ = solve_linear(dirac, f)
    relatorio = verify_apriori(dirac, u, f)
    assert relatorio.ratio_grad == pytest.approx(1.0, abs=1e-10)
    assert relatorio.ratio_sobolev is not None and relatorio.ratio_sobolev > 0


def test_sobolev_ratio_absent_in_two_dimensions(cr, grid2, rng):
    f = random_band_limited(grid2, 2, rng)
    u, _ = solve_linear(cr, f)
    assert verify_apriori(cr, u, f).ratio_sobolev is None


def test_zero_right_hand_side(dirac, grid3):
    f = GridFunction.zeros(grid3, 4)
    u, relatorio = solve_linear(dirac, f)
    assert np.all(u.values == 0.0)
    assert relatorio.residual == 0.0
    apriori = verify_apriori(dirac, u, f)
    assert apriori.ratio_grad == 0.0
    assert apriori.holds


def test_linearity(gcr, grid2, rng):
    f = random_band_limited(grid2, 2, rng)
    g = random_band_limited(grid2, 2, rng)
    u_f, _ = solve_linear(gcr, f)
    u_g, _ = solve_linear(gcr, g)
    u_soma, _ = solve_linear(gcr, 2.0 * f + g)
    assert np.max(np.abs(u_soma.values - (2.0 * u_f.values + u_g.values))) <= 1e-12


@pytest.mark.parametrize('nome,G', [('dirac', 8), ('cauchy_riemann', 16), ('generalized_cr(2,1,1,1)', 16)])
def test_symbols_invert_the_operator(nome, G):
    A = catalog.get(*catalog.parse_reference(nome))
    plano = get_plan(A, PeriodicGrid(A.n, G))
    assert plano.check_inverse() <= 1e-12
    assert plano.det_min > 0


def test_symbols_are_hermitian(dirac, grid3):
    plano = get_plan(dirac, grid3)
    simbolos = plano.symbols.reshape((16,) + grid3.shape)
    assert SpectralField(grid3, simbolos).is_hermitian()
    assert not plano.symbols.flags.writeable


def test_plan_cache_returns_same_object(cr, grid2):
    assert get_plan(cr, grid2) is get_plan(catalog.cauchy_riemann(), grid2)


def test_plan_cache_is_bounded(cr, grid2):
    get_plan(cr, grid2)
    info = get_plan.cache_info()
    assert info.maxsize == CACHE_PLANOS
    assert info.currsize <= CACHE_PLANOS


def test_zero_tensor_rejected(grid2):
    A = catalog.zero(2, 2)
    with pytest.raises(ErroNaoEliptico):
        solve_linear(A, GridFunction.zeros(grid2, 2))
    with pytest.raises(ErroNaoEliptico):
        MultiplierPlan.build(A, grid2)


def test_component_mismatch(dirac, grid3):
    with pytest.raises(ErroDimensao):
        solve_linear(dirac, GridFunction.zeros(grid3, 2))


def test_rational_ladder(cr, grid2, rng):
    f = random_band_limited(grid2, 2, rng, kmax=4)
    erros = []
    for m in (1, 10, 100, 1000):
        _, relatorio = solve_representation(cr, f, RegularizerSequence('rational', m))
        assert relatorio.z_min == pytest.approx(1.0)
        assert relatorio.error_bound <= m ** -2 / relatorio.z_min ** 2 + 1e-15
        assert relatorio.relative_error <= relatorio.error_bound + 1e-12
        assert relatorio.gradient_error <= relatorio.error_bound + 1e-12
        erros.append(relatorio.relative_error)
    assert all(a > b for a, b in zip(erros, erros[1:]))
    assert erros[-1] <= 1e-6


def test_truncation_is_exact_once_m_covers_support(cr, rng):
    grid = PeriodicGrid(2, 16, 4.0)
    f = random_band_limited(grid, 2, rng, kmax=3)
    _, grosseiro = solve_representation(cr, f, RegularizerSequence(RegularizerKind.TRUNCATION, 1))
    _, exato = solve_representation(cr, f, RegularizerSequence(RegularizerKind.TRUNCATION, 4))
    assert grosseiro.z_min == pytest.approx(0.25)
    assert grosseiro.relative_error > 0.1
    assert exato.error_bound <= 1e-15
    assert exato.relative_error <= 1e-14


def test_regularized_solutions_agree_for_large_m(dirac, grid3, rng):
    f = random_band_limited(grid3, 4, rng)
    u_rac, _ = solve_representation(dirac, f, RegularizerSequence('rational', 1e6))
    u_tru, _ = solve_representation(dirac, f, RegularizerSequence('truncation', 1e6))
    u, _ = solve_linear(dirac, f)
    assert _erro_relativo(u_rac, u) <= 1e-9
    assert _erro_relativo(u_tru, u) <= 1e-9


def test_regularizer_validation():
    with pytest.raises(ErroEntrada):
        RegularizerSequence('rational', 0.5)
    with pytest.raises(ValueError):
        RegularizerSequence('gaussian', 2)


@settings(max_examples=60, deadline=None)
@given(kind=st.sampled_from(list(RegularizerKind)),
       m=st.floats(1.0, 1e4),
       modulo=st.floats(1e-3, 1e3))
def test_regularizer_bounds(kind, m, modulo):
    reg = RegularizerSequence(kind, m)
    h = float(reg(np.array([modulo]))[0])
    assert 0.0 <= h <= 1.0 / modulo * (1 + 1e-12)
    assert 0.0 <= float(reg.factor(np.array([modulo]))[0]) <= 1.0 + 1e-12
    assert float(RegularizerSequence(kind, 2 * m)(np.array([modulo]))[0]) >= h * (1 - 1e-12)
    assert float(reg(np.array([0.0]))[0]) == 0.0


def test_riesz_constant():
    assert riesz_constant(3, 2) == pytest.approx(4 * math.pi)
    assert riesz_constant(4, 2) == pytest.approx(4 * math.pi ** 2)
    for alpha in (0.0, 3.0, -1.0):
        with pytest.raises(ErroDominio):
            riesz_constant(3, alpha)


def test_nyquist_content_is_flagged(cr, grid2, caplog):
    f = single_mode(grid2, 2, 0, [8, 0], shape='cos')
    u, relatorio = solve_linear(cr, f)
    assert relatorio.nyquist_truncated
    assert np.max(np.abs(u.values)) <= 1e-14
    assert 'Nyquist' in caplog.text


def test_dropped_mean_is_reported(cr):
    grid = PeriodicGrid(2, 8, 2.0)
    f = GridFunction(grid, np.stack([np.ones(grid.shape), 2 * np.ones(grid.shape)]))
    u, relatorio = solve_linear(cr, f)
    assert relatorio.dropped_mean_norm == pytest.approx(2 * math.sqrt(5))
    assert np.max(np.abs(u.values)) <= 1e-14
