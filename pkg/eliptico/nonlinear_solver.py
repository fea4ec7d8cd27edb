# Arquivo: nonlinear_solver.py
# Data: 19/10/2026 - Hora: 15:05
# Iteração de ponto fixo de Campanato para F(·, Du) = f, métrica de contração,
# princípio de comparação, proximidade de operadores e crescimento linear

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from config import FATOR_RUIDO, MAX_ITER, NU_MIN, PASSOS_DIVERGENCIA, TOL_SOLVER
from eliptico.ellipticity import ellipticity_constant_cached, is_strictly_elliptic
from eliptico.erros import ErroDimensao, ErroDivergencia, ErroEntrada, ErroNaoEliptico
from eliptico.grid_spectral import (GridFunction, gradient, norm_l2, norm_l2star, project_mean_zero,
                                    random_band_limited)
from eliptico.linear_solver import apply_linear, solve_linear
from eliptico.operador import NonlinearOperator
from eliptico.tensor_core import operator_norm

__all__ = ['NonlinearOperator', 'IterationRecord', 'IterationTrace', 'campanato_solve',
           'contraction_metric', 'verify_comparison', 'near_operator_check', 'verify_growth',
           'sample_pairs']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IterationRecord:
    k: int
    d_k: float
    ratio_k: float
    residual_k: float
    dropped_mean_norm: float


@dataclass
class IterationTrace:
    K_theory: float
    tol: float
    noise_floor: float
    records: list = field(default_factory=list)
    converged: bool = False
    nyquist_truncated: bool = False

    @property
    def iterations(self):
        return len(self.records)

    @property
    def final_residual(self):
        return self.records[-1].residual_k if self.records else math.nan

    def max_ratio(self):
        """Maior razão d_k/d_{k-1} entre passos com d_{k-1} e d_k acima do piso de ruído"""
        razoes = [r.ratio_k for a, r in zip(self.records, self.records[1:])
                  if a.d_k > self.noise_floor and r.d_k > self.noise_floor]
        return max(razoes, default=0.0)

    def to_frame(self):
        colunas = ['k', 'd_k', 'ratio_k', 'residual_k', 'dropped_mean_norm']
        return pd.DataFrame([r.__dict__ for r in self.records], columns=colunas)


def _proximidade_garantida(F, nu):
    """ν(F,A) usado como K·ν(A): a declarada quando existe, senão a amostrada"""
    if F.declared_nearness is not None:
        if F.declared_nearness >= nu:
            raise ErroNaoEliptico(f"{F.nome}: proximidade declarada {F.declared_nearness:.6g} ≥ ν(A) = {nu:.6g}")
        return F.declared_nearness
    estrita = is_strictly_elliptic(F, F.anchor)
    if not estrita.elliptic:
        raise ErroNaoEliptico(f"{F.nome}: margem de elipticidade {estrita.margin:.3e} ≤ 0",
                              witness=estrita.nearness.worst_witness)
    return estrita.nu_FA


def campanato_solve(F, f, tol=TOL_SOLVER, max_iter=MAX_ITER, u0=None):
    """
    Resolve F(·, Du) = f iterando T[u] = A⁻¹(A:Du − F̃(·,Du) + f̃)

    F̃ = F − F(·,0) e f̃ = f − F(·,0); a média de cada g_k é removida antes da solução linear.
    Para quando d_k ≤ tol·‖f̃‖₂ ou quando o resíduo (distância do passo seguinte) fica
    abaixo do mesmo limiar.

    Args:
        F (NonlinearOperator): operador com âncora A
        f (GridFunction): lado direito com N componentes
        tol (float): tolerância relativa
        max_iter (int): máximo de iterações
        u0 (GridFunction, optional): chute inicial; zero por padrão

    Returns:
        tuple: (u, IterationTrace)
    """
    A = F.anchor
    if f.components != A.N:
        raise ErroDimensao(f"Lado direito com {f.components} componentes para N={A.N}")
    if not F.x_periodic:
        raise ErroEntrada(f"{F.nome} não é periódico em x na célula [0, L)^n; a iteração no toro não se aplica")
    nu = ellipticity_constant_cached(A).nu
    if nu <= NU_MIN:
        raise ErroNaoEliptico(f"Âncora {A.nome} não é elíptica (ν = {nu:.3e})")
    proximidade = _proximidade_garantida(F, nu)

    grid = f.grid
    c = F.at_zero(grid)
    f_desl = f - c
    escala = norm_l2(f_desl)
    trace = IterationTrace(proximidade / nu, tol, FATOR_RUIDO * escala)

    u = u0 if u0 is not None else GridFunction.zeros(grid, A.N)
    Du = gradient(u)
    AD = apply_linear(A, u)
    FD = F.on_grid(Du) - c

    anterior = None
    nao_contrai = 0
    for k in range(1, max_iter + 1):
        g = AD - FD + f_desl
        u_novo, relatorio = solve_linear(A, g, avisar=False)
        if relatorio.nyquist_truncated and not trace.nyquist_truncated:
            trace.nyquist_truncated = True
            logger.warning(f"⚠️ AVISO: {F.nome}: F(·,Du) tem energia nos planos de Nyquist; modos descartados")
        Du_novo = gradient(u_novo)
        AD_novo = apply_linear(A, u_novo)
        FD_novo = F.on_grid(Du_novo) - c

        d_k = norm_l2(AD_novo - AD)
        # distância do passo seguinte: parte de média zero de f̃ − F̃(·,Du_{k+1})
        residual_k = norm_l2(project_mean_zero(f_desl - FD_novo)[0])
        razao = d_k / anterior if anterior else math.nan
        trace.records.append(IterationRecord(k, d_k, razao, residual_k, relatorio.dropped_mean_norm))
        logger.debug(f"k={k}: d_k={d_k:.3e} resíduo={residual_k:.3e}")

        if anterior is not None and d_k > trace.noise_floor and d_k >= anterior:
            nao_contrai += 1
            if nao_contrai >= PASSOS_DIVERGENCIA:
                raise ErroDivergencia(f"{F.nome}: d_k não decresce há {nao_contrai} passos", trace=trace)
        else:
            nao_contrai = 0

        u, AD, FD, anterior = u_novo, AD_novo, FD_novo, d_k
        if d_k <= tol * escala or residual_k <= tol * escala:
            trace.converged = True
            break

    ultimo = trace.records[-1].dropped_mean_norm
    if ultimo > 1e-8 * norm_l2(f):
        logger.warning(f"⚠️ AVISO: média descartada {ultimo:.3e} persiste na convergência (artefato do toro)")
    if trace.converged:
        logger.info(f"✅ {F.nome}: convergiu em {trace.iterations} iterações (K = {trace.K_theory:.3g})")
    else:
        logger.warning(f"⚠️ AVISO: {F.nome}: sem convergência em {max_iter} iterações")
    return u, trace


def contraction_metric(u, v, A):
    """d(u, v) = ‖A:Du − A:Dv‖₂"""
    return norm_l2(apply_linear(A, u - v))


@dataclass(frozen=True)
class ComparisonReport:
    nu: float
    nearness: float
    grad_diff: float
    operator_diff: float
    ratio: float
    sobolev_ratio: float | None
    holds: bool

    def to_row(self):
        return {'check': 'comparison', 'nu': self.nu, 'nearness': self.nearness,
                'ratio': self.ratio, 'sobolev_ratio': self.sobolev_ratio, 'passed': self.holds}


def verify_comparison(F, w, v, nearness=None):
    """
    ‖Dw − Dv‖₂ ≤ (ν(A) − ν(F,A))⁻¹ ‖F(·,Dw) − F(·,Dv)‖₂

    ratio = ‖Dw − Dv‖₂ (ν(A) − ν(F,A)) / ‖F(·,Dw) − F(·,Dv)‖₂, com ν(F,A) declarado
    (ou o valor passado em `nearness`).
    """
    A = F.anchor
    nu = ellipticity_constant_cached(A).nu
    proximidade = nearness if nearness is not None else _proximidade_garantida(F, nu)
    if proximidade >= nu:
        raise ErroNaoEliptico(f"ν(F,A) = {proximidade:.6g} ≥ ν(A) = {nu:.6g}")

    Dw, Dv = gradient(w), gradient(v)
    grad_diff = norm_l2(Dw - Dv)
    op_diff = norm_l2(F.on_grid(Dw) - F.on_grid(Dv))
    razao = grad_diff * (nu - proximidade) / op_diff if op_diff > 0 else 0.0

    sobolev = None
    if w.grid.n >= 3:
        diferenca = project_mean_zero(w - v)[0]
        sobolev = norm_l2star(diferenca) / op_diff if op_diff > 0 else 0.0
    return ComparisonReport(nu, proximidade, grad_diff, op_diff, razao, sobolev, razao <= 1.0 + 1e-9)


@dataclass(frozen=True)
class NearOperatorReport:
    K: float
    pairs: int
    violations: int
    max_ratio: float
    witnesses: tuple = ()

    @property
    def holds(self):
        return self.violations == 0

    def to_row(self):
        return {'check': 'near_operator', 'K': self.K, 'pairs': self.pairs,
                'violations': self.violations, 'max_ratio': self.max_ratio, 'passed': self.holds}


def near_operator_check(F, pairs, K=None):
    """
    ‖F[u] − F[v] − (A[u] − A[v])‖₂ ≤ K ‖A[u] − A[v]‖₂ nos pares amostrados

    K padrão: declared_nearness/ν(A). max_ratio é o maior quociente observado.
    """
    A = F.anchor
    nu = ellipticity_constant_cached(A).nu
    if K is None:
        K = _proximidade_garantida(F, nu) / nu

    violacoes, maior, testemunhas = 0, 0.0, []
    for i, (u, v) in enumerate(pairs):
        Du, Dv = gradient(u), gradient(v)
        linear = apply_linear(A, u - v)
        esquerda = norm_l2(F.on_grid(Du) - F.on_grid(Dv) - linear)
        direita = norm_l2(linear)
        if direita > 0:
            maior = max(maior, esquerda / direita)
        if esquerda > K * direita * (1 + 1e-9) + 1e-14:
            violacoes += 1
            testemunhas.append(i)
    if violacoes:
        logger.warning(f"⚠️ AVISO: {violacoes} pares violam a proximidade com K = {K:.4g}")
    return NearOperatorReport(K, len(pairs), violacoes, maior, tuple(testemunhas))


@dataclass(frozen=True)
class GrowthReport:
    F_norm: float
    bound: float
    constant: float
    holds: bool

    def to_row(self):
        return {'check': 'growth', 'F_norm': self.F_norm, 'bound': self.bound,
                'constant': self.constant, 'passed': self.holds}


def verify_growth(F, u):
    """‖F(·,Du)‖₂ ≤ ‖F(·,0)‖₂ + (ν(A) + ‖A‖)‖Du‖₂"""
    A = F.anchor
    constante = ellipticity_constant_cached(A).nu + operator_norm(A)
    Du = gradient(u)
    norma = norm_l2(F.on_grid(Du))
    limite = norm_l2(F.at_zero(u.grid)) + constante * norm_l2(Du)
    return GrowthReport(norma, limite, constante, norma <= limite * (1 + 1e-12))


def sample_pairs(grid, N, quantidade, rng, kmax=None):
    """Pares (u, v) de campos aleatórios limitados em banda"""
    return [(random_band_limited(grid, N, rng, kmax), random_band_limited(grid, N, rng, kmax))
            for _ in range(quantidade)]
