import math

import numpy as np
import pytest

from eliptico import catalog
from eliptico.erros import ErroDivergencia, ErroEntrada, ErroNaoEliptico
from eliptico.grid_spectral import GridFunction, PeriodicGrid, gradient, norm_l2, random_band_limited, single_mode
from eliptico.linear_solver import apply_linear
from eliptico.nonlinear_solver import (NonlinearOperator, campanato_solve, contraction_metric, near_operator_check,
                                       sample_pairs, verify_comparison, verify_growth)
from eliptico.tensor_core import contract, operator_norm


def _residuo_relativo(F, u, f):
    return norm_l2(F.on_grid(gradient(u)) - f) / norm_l2(f)


def test_linear_operator_converges_in_one_step(dirac, grid3, rng, linear_operator):
    f = random_band_limited(grid3, 4, rng)
    u, trace = campanato_solve(linear_operator(dirac), f)
    assert trace.converged
    assert trace.iterations == 1
    assert _residuo_relativo(linear_operator(dirac), u, f) <= 1e-10


@pytest.mark.parametrize('lam', [0.1, 0.5, 0.9])
def test_contraction_rate_follows_nearness(dirac, rng, lam):
    F = catalog.lipschitz_perturbation(dirac, lam, 'sin_q11')
    f = random_band_limited(PeriodicGrid(3, 16), 4, rng, kmax=4)
    u, trace = campanato_solve(F, f)
    assert trace.converged
    assert trace.K_theory == pytest.approx(lam, abs=1e-9)
    assert trace.max_ratio() <= lam + 0.05
    assert trace.iterations <= math.ceil(math.log(1e-10) / math.log(lam)) + 10
    assert trace.final_residual <= 1e-8 * norm_l2(f)


def test_zero_nearness_from_catalog(dirac, grid3, rng):
    f = random_band_limited(grid3, 4, rng)
    _, trace = campanato_solve(catalog.lipschitz_perturbation(dirac, 0.0), f)
    assert trace.iterations == 1


def test_offset_at_zero_is_absorbed(cr, grid2, rng):
    c = GridFunction(grid2, np.stack([np.cos(2 * np.pi * grid2.points[0]), np.ones(grid2.shape)]))

    def avaliar(x, Q):
        return contract(cr, Q) + np.stack([np.cos(2 * np.pi * x[:, 0]), np.ones(len(x))], axis=-1)

    F = NonlinearOperator(avaliar, cr, declared_nearness=0.0)
    u, trace = campanato_solve(F, c)
    assert trace.converged
    assert np.max(np.abs(u.values)) <= 1e-14

    exato = random_band_limited(grid2, 2, rng)
    u, _ = campanato_solve(F, c + apply_linear(cr, exato))
    assert np.max(np.abs(u.values - exato.values)) <= 1e-10


def test_divergence_is_detected(cr, grid2, rng):
    F = NonlinearOperator(lambda x, Q: -0.5 * contract(cr, Q), cr, declared_nearness=0.1, nome='invertido')
    with pytest.raises(ErroDivergencia) as erro:
        campanato_solve(F, random_band_limited(grid2, 2, rng))
    trace = erro.value.trace
    assert trace is not None
    assert not trace.converged
    assert trace.records[-1].d_k > trace.records[0].d_k


def test_nearness_above_ellipticity_is_rejected(dirac, grid3):
    with pytest.raises(ErroNaoEliptico):
        campanato_solve(catalog.lipschitz_perturbation(dirac, 1.2), GridFunction.zeros(grid3, 4))


def test_non_convergence_is_reported_not_raised(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.9)
    _, trace = campanato_solve(F, random_band_limited(grid3, 4, rng), max_iter=3)
    assert not trace.converged
    assert trace.iterations == 3


def test_limit_is_independent_of_initial_guess(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.5, 'tanh_trace')
    f = random_band_limited(grid3, 4, rng, kmax=2)
    u, _ = campanato_solve(F, f)
    v, _ = campanato_solve(F, f, u0=0.1 * random_band_limited(grid3, 4, rng))
    assert norm_l2(u - v) <= 1e-8 * norm_l2(u)
    assert norm_l2(gradient(u - v)) <= 10 * 1e-10 * norm_l2(f)


def test_slow_contraction_stays_within_bound(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.95)
    _, trace = campanato_solve(F, random_band_limited(grid3, 4, rng, kmax=2))
    assert trace.converged
    assert trace.iterations <= math.ceil(math.log(1e-10) / math.log(0.95)) + 5


def test_contraction_metric(gcr, grid2, rng):
    u, v, w = (random_band_limited(grid2, 2, rng) for _ in range(3))
    assert contraction_metric(u, u, gcr) == 0.0
    assert contraction_metric(u, v, gcr) == pytest.approx(contraction_metric(v, u, gcr))
    assert contraction_metric(u, w, gcr) <= contraction_metric(u, v, gcr) + contraction_metric(v, w, gcr) + 1e-12
    # coercividade: d(u, v) ≥ ν(A)‖Du − Dv‖₂
    assert contraction_metric(u, v, gcr) >= 2 / math.sqrt(5) * norm_l2(gradient(u - v)) * (1 - 1e-9)


def test_comparison_principle(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.5, 'sin_q11_cos_x1')
    for w, v in sample_pairs(grid3, 4, 50, rng, kmax=2):
        relatorio = verify_comparison(F, w, v)
        assert relatorio.holds
        assert relatorio.ratio <= 1.0
        assert relatorio.sobolev_ratio is not None


def test_comparison_rejects_large_nearness(cr, grid2, rng):
    F = catalog.lipschitz_perturbation(cr, 0.5)
    w, v = sample_pairs(grid2, 2, 1, rng)[0]
    with pytest.raises(ErroNaoEliptico):
        verify_comparison(F, w, v, nearness=1.5)


def test_near_operator(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.5)
    pares = sample_pairs(grid3, 4, 5, rng, kmax=2)
    relatorio = near_operator_check(F, pares)
    assert relatorio.K == pytest.approx(0.5, abs=1e-9)
    assert relatorio.holds
    assert 0 < relatorio.max_ratio <= 0.5

    apertado = near_operator_check(F, pares, K=1e-4)
    assert not apertado.holds
    assert apertado.witnesses


def test_linear_growth(dirac, grid3, rng):
    F = catalog.lipschitz_perturbation(dirac, 0.9, 'tanh_trace')
    relatorio = verify_growth(F, random_band_limited(grid3, 4, rng))
    assert relatorio.holds
    assert relatorio.constant == pytest.approx(1 + math.sqrt(3))


def test_trace_frame(dirac, grid3, rng):
    _, trace = campanato_solve(catalog.lipschitz_perturbation(dirac, 0.5), random_band_limited(grid3, 4, rng))
    df = trace.to_frame()
    assert list(df.columns) == ['k', 'd_k', 'ratio_k', 'residual_k', 'dropped_mean_norm']
    assert len(df) == trace.iterations
    assert df['k'].tolist() == list(range(1, trace.iterations + 1))


def test_single_mode_rhs_with_sine_perturbation(dirac):
    grid = PeriodicGrid(3, 16)

    def avaliar(x, Q):
        saida = contract(dirac, Q)
        saida[:, 0] += 0.5 * np.sin(Q[:, 0, 0])
        return saida

    F = NonlinearOperator(avaliar, dirac, declared_nearness=0.5, nome='dirac_sin')
    f = single_mode(grid, 4, 0, [1, 0, 0])
    u, trace = campanato_solve(F, f, tol=1e-10)
    assert trace.converged
    assert trace.iterations <= 40
    assert trace.max_ratio() <= 0.55
    assert _residuo_relativo(F, u, f) <= 1e-9


def test_non_periodic_operator_is_rejected(dirac, grid3, rng):
    def avaliar(x, Q):
        saida = contract(dirac, Q)
        saida[:, 0] += 0.1 * x[:, 0] * np.sin(Q[:, 0, 0])
        return saida

    F = NonlinearOperator(avaliar, dirac, declared_nearness=0.1, x_periodic=False)
    with pytest.raises(ErroEntrada):
        campanato_solve(F, random_band_limited(grid3, 4, rng))


def test_nyquist_warning_once_per_solve(dirac, rng, caplog):
    grid = PeriodicGrid(3, 16)
    F = catalog.lipschitz_perturbation(dirac, 0.5)
    _, trace = campanato_solve(F, random_band_limited(grid, 4, rng))
    avisos = [r for r in caplog.records if 'Nyquist' in r.getMessage()]
    assert trace.iterations > 2
    assert trace.nyquist_truncated
    assert len(avisos) == 1


def test_contraction_metric_upper_bound(dirac, gcr, grid2, grid3, rng):
    for A, grid in ((gcr, grid2), (dirac, grid3)):
        for _ in range(10):
            u, v = random_band_limited(grid, A.N, rng), random_band_limited(grid, A.N, rng)
            assert contraction_metric(u, v, A) <= operator_norm(A) * norm_l2(gradient(u - v)) * (1 + 1e-10)


def test_comparison_for_linear_operator(cr, grid2, rng, linear_operator):
    # ν(F,A) = 0: a comparação vira a estimativa a priori ν(A)‖Dw − Dv‖₂ ≤ ‖A:Dw − A:Dv‖₂
    F = linear_operator(cr)
    for w, v in sample_pairs(grid2, 2, 10, rng):
        relatorio = verify_comparison(F, w, v)
        assert relatorio.nearness == 0.0
        assert relatorio.holds
        assert relatorio.operator_diff == pytest.approx(contraction_metric(w, v, cr), rel=1e-12)
    mesmo = verify_comparison(F, w, w)
    assert mesmo.ratio == 0.0 and mesmo.holds
