# Arquivo: linear_solver.py
# Data: 19/10/2026 - Hora: 14:20
# Solução de A:Du = f na grade periódica por inversão do símbolo modo a modo,
# fórmula de representação regularizada (h_m) e estimativa a priori

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.special import gamma

from config import CACHE_PLANOS, NU_MIN
from eliptico.ellipticity import ellipticity_constant_cached
from eliptico.erros import ErroDimensao, ErroDominio, ErroEntrada, ErroNaoEliptico
from eliptico.grid_spectral import (GridFunction, SpectralField, dft_forward,
                                    dft_inverse, gradient, norm_l2, norm_l2star, project_mean_zero)
from eliptico.tensor_core import cofactor, contract_field, determinant, direction_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MultiplierPlan:
    """
    Símbolos inversos M(z) = (2πi|z|)⁻¹ cof(A sgn z)ᵀ / det(A sgn z)

    symbols tem forma (N, N, *grade); zero em z = 0 e nos planos de Nyquist.
    """
    tensor: object
    grid: object
    symbols: np.ndarray
    det_min: float

    @classmethod
    def build(cls, A, grid):
        if grid.n != A.n:
            raise ErroDimensao(f"Grade com n={grid.n} para tensor com n={A.n}")
        ativo = grid.retained_mask
        z = np.moveaxis(grid.frequencies, 0, -1)[ativo]           # (K, n)
        modulo = np.linalg.norm(z, axis=-1)
        S = direction_matrix(A, z / modulo[:, None])               # A sgn z, (K, N, N)
        det = determinant(S)
        if np.any(det == 0.0):
            raise ErroNaoEliptico("Símbolo singular em modo retido", witness=z[np.argmin(np.abs(det))])
        M = np.swapaxes(cofactor(S), -1, -2) / det[:, None, None]
        M = M / (2j * np.pi * modulo[:, None, None])

        simbolos = np.zeros(grid.shape + (A.N, A.N), dtype=np.complex128)
        simbolos[ativo] = M
        simbolos = np.moveaxis(simbolos, (-2, -1), (0, 1))
        simbolos.setflags(write=False)
        det_min = float(np.min(np.abs(det))) if det.size else math.inf
        return cls(A, grid, simbolos, det_min)

    def apply(self, coeficientes, fator=None):
        """Û = M(z) F̂ (opcionalmente multiplicado pelo fator h_m(z)|z| por modo)"""
        saida = np.einsum('ab...,b...->a...', self.symbols, coeficientes)
        if fator is not None:
            saida = saida * fator
        return saida

    def check_inverse(self):
        """max_z ‖M(z)·A(2πiz) − I‖ sobre os modos retidos"""
        ativo = self.grid.retained_mask
        z = np.moveaxis(self.grid.frequencies, 0, -1)[ativo]
        simbolo = 2j * np.pi * direction_matrix(self.tensor, z)
        M = np.moveaxis(self.symbols, (0, 1), (-2, -1))[ativo]
        erro = M @ simbolo - np.eye(self.tensor.N)
        return float(np.max(np.linalg.norm(erro, axis=(-2, -1)), initial=0.0))


@lru_cache(maxsize=CACHE_PLANOS)
def get_plan(A, grid):
    """Plano por (tensor, grade), em cache LRU; tensores iguais entrada a entrada compartilham o plano"""
    logger.debug(f"Montando plano de multiplicadores para {A.nome} em G={grid.G}, n={grid.n}")
    return MultiplierPlan.build(A, grid)


class RegularizerKind(Enum):
    RATIONAL = 'rational'
    TRUNCATION = 'truncation'


@dataclass(frozen=True)
class RegularizerSequence:
    """h_m par, com 0 ≤ h_m(z) ≤ 1/|z| e h_m(z) → 1/|z| quando m → ∞"""
    kind: RegularizerKind
    m: float

    def __post_init__(self):
        object.__setattr__(self, 'kind', RegularizerKind(self.kind))
        if not self.m >= 1:
            raise ErroEntrada(f"Índice m={self.m} deve ser ≥ 1")

    def __call__(self, modulo):
        modulo = np.asarray(modulo, dtype=np.float64)
        h = np.zeros_like(modulo)
        nz = modulo > 0
        if self.kind is RegularizerKind.RATIONAL:
            h[nz] = modulo[nz] / (modulo[nz] ** 2 + self.m ** -2)
        else:
            h[nz] = np.minimum(self.m, 1.0 / modulo[nz])
        return h

    def factor(self, modulo):
        """h_m(z)|z| ∈ [0, 1]"""
        return self(modulo) * np.asarray(modulo, dtype=np.float64)


@dataclass(frozen=True)
class SolveReport:
    grid: object
    nu: float
    residual: float
    dropped_mean_norm: float
    nyquist_truncated: bool = False
    det_min: float = math.nan
    ratio_grad: float | None = None
    ratio_sobolev: float | None = None
    m: float | None = None
    kind: str | None = None
    relative_error: float | None = None
    gradient_error: float | None = None
    error_bound: float | None = None
    z_min: float | None = None

    def to_row(self):
        return {
            'grid': f"n={self.grid.n};G={self.grid.G};L={self.grid.L:g}",
            'nu': self.nu,
            'residual': self.residual,
            'ratio_grad': self.ratio_grad,
            'ratio_sobolev': self.ratio_sobolev,
            'dropped_mean_norm': self.dropped_mean_norm,
        }


def apply_linear(A, u):
    """A:Du como campo com N componentes"""
    if u.components != A.N:
        raise ErroDimensao(f"Campo com {u.components} componentes para N={A.N}")
    Du = gradient(u).as_matrix_field(A.N)
    return GridFunction(u.grid, contract_field(A, Du))


def _preparar(A, f, avisar=True):
    if f.components != A.N:
        raise ErroDimensao(f"Lado direito com {f.components} componentes para N={A.N}")
    if f.grid.n != A.n:
        raise ErroDimensao(f"Grade com n={f.grid.n} para tensor com n={A.n}")
    nu = ellipticity_constant_cached(A).nu
    if nu <= NU_MIN:
        raise ErroNaoEliptico(f"Tensor {A.nome} não é elíptico (ν = {nu:.3e})")

    f_til, media = project_mean_zero(f)
    descartada = float(np.linalg.norm(media) * math.sqrt(f.grid.volume))
    F = dft_forward(f_til)
    energia = float(np.sum(np.abs(F.coefficients) ** 2))
    truncado = F.nyquist_energy() > 1e-24 + 1e-20 * energia
    if truncado and avisar:
        logger.warning("⚠️ AVISO: lado direito com energia nos planos de Nyquist; modos descartados")
    return nu, f_til, descartada, F, truncado


def _residuo(A, u, f_til):
    escala = norm_l2(f_til)
    if escala == 0.0:
        return norm_l2(apply_linear(A, u))
    return norm_l2(apply_linear(A, u) - f_til) / escala


def solve_linear(A, f, avisar=True):
    """
    Resolve A:Du = f̃ (f̃ = f sem a média) com û(0) = 0

    Args:
        A (ConstantTensor): tensor elíptico
        f (GridFunction): lado direito com N componentes
        avisar (bool): registra o aviso de Nyquist; a iteração não linear avisa uma vez só

    Returns:
        tuple: (u, SolveReport)
    """
    nu, f_til, descartada, F, truncado = _preparar(A, f, avisar)
    plano = get_plan(A, f.grid)
    u = dft_inverse(SpectralField(f.grid, plano.apply(F.coefficients)))
    relatorio = SolveReport(f.grid, nu, _residuo(A, u, f_til), descartada, truncado, plano.det_min)
    logger.debug(f"solve_linear: resíduo relativo {relatorio.residual:.3e}")
    return u, relatorio


def solve_representation(A, f, regularizer):
    """
    û_m(z) = (2πi)⁻¹ h_m(z) cof(A sgn z)ᵀ/det(A sgn z) f̂(z), ou seja A:Dû_m = (h_m|z|) f̂

    O relatório compara u_m com a solução direta: erro relativo, erro no gradiente,
    o limitante max|1 − h_m|z|| no suporte de f̂ e a menor frequência desse suporte.
    """
    nu, f_til, descartada, F, truncado = _preparar(A, f)
    grid = f.grid
    plano = get_plan(A, grid)
    fator = regularizer.factor(grid.freq_norm)

    u_m = dft_inverse(SpectralField(grid, plano.apply(F.coefficients, fator)))
    u = dft_inverse(SpectralField(grid, plano.apply(F.coefficients)))

    amplitude = np.max(np.abs(F.coefficients), axis=0)
    suporte = grid.retained_mask & (amplitude > 1e-14 * max(float(np.max(amplitude)), 1e-300))
    if np.any(suporte):
        z_min = float(np.min(grid.freq_norm[suporte]))
        limite = float(np.max(np.abs(1.0 - fator[suporte])))
    else:
        z_min, limite = None, 0.0

    norma_u = norm_l2(u)
    norma_Du = norm_l2(gradient(u))
    diferenca = u_m - u
    relatorio = SolveReport(
        grid, nu, _residuo(A, u_m, f_til), descartada, truncado, plano.det_min,
        m=regularizer.m, kind=regularizer.kind.value,
        relative_error=norm_l2(diferenca) / norma_u if norma_u > 0 else 0.0,
        gradient_error=norm_l2(gradient(diferenca)) / norma_Du if norma_Du > 0 else 0.0,
        error_bound=limite, z_min=z_min,
    )
    return u_m, relatorio


def riesz_constant(n, alpha):
    """γ_α = 2^α π^{n/2} Γ(α/2) / Γ(n/2 − α/2), para 0 < α < n"""
    if not 0.0 < alpha < n:
        raise ErroDominio(f"α = {alpha} fora de (0, {n})")
    return float(2.0 ** alpha * math.pi ** (n / 2) * gamma(alpha / 2) / gamma(n / 2 - alpha / 2))


@dataclass(frozen=True)
class AprioriReport:
    nu: float
    grad_norm: float
    f_norm: float
    ratio_grad: float
    ratio_sobolev: float | None
    holds: bool

    def to_row(self):
        return {'check': 'apriori', 'nu': self.nu, 'ratio_grad': self.ratio_grad,
                'ratio_sobolev': self.ratio_sobolev, 'passed': self.holds}


def verify_apriori(A, u, f):
    """ratio_grad = ‖Du‖₂ ν(A)/‖f̃‖₂ (≤ 1) e ratio_sobolev = ‖u‖_{2*}/‖Du‖₂ (só registrado)"""
    nu = ellipticity_constant_cached(A).nu
    f_til, _ = project_mean_zero(f)
    norma_f = norm_l2(f_til)
    norma_Du = norm_l2(gradient(u))
    razao = norma_Du * nu / norma_f if norma_f > 0 else 0.0

    sobolev = None
    if u.grid.n >= 3:
        sobolev = norm_l2star(project_mean_zero(u)[0]) / norma_Du if norma_Du > 0 else 0.0

    return AprioriReport(nu, norma_Du, norma_f, razao, sobolev, razao <= 1.0 + 1e-10)
