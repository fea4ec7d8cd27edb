# Arquivo: oracle_verify.py
# Data: 19/10/2026 - Hora: 15:50
# Oráculos de força bruta: matriz densa do operador discreto, solução densa com
# modos constantes fixados e ν(A) por amostragem densa sem refinamento

import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.linalg import null_space

from config import LIMITE_DENSO, RESOLUCAO_BRUTA, TAMANHO_LOTE
from eliptico.ellipticity import smallest_singular_values, sample_sphere
from eliptico.erros import ErroDimensao, ErroEntrada, ErroNaoEliptico, ErroTamanho
from eliptico.grid_spectral import (GridFunction, dft_forward, gradient, norm_l2, project_mean_zero,
                                    random_band_limited)
from eliptico.linear_solver import apply_linear, solve_linear

logger = logging.getLogger(__name__)


def spectral_derivative_1d(G, L=1.0):
    """
    Matriz G×G de diferenciação espectral periódica com o modo de Nyquist zerado

    D[p, q] = −(4π/(G L)) Σ_{k=1}^{G/2−1} k sin(2πk(p−q)/G)
    """
    k = np.arange(1, G // 2)
    diferenca = np.subtract.outer(np.arange(G), np.arange(G))
    fase = 2 * np.pi * diferenca[..., None] * k / G
    return -(4 * np.pi / (G * L)) * np.sum(k * np.sin(fase), axis=-1)


def _derivada_eixo(grid, eixo):
    fatores = [np.eye(grid.G)] * grid.n
    fatores[eixo] = spectral_derivative_1d(grid.G, grid.L)
    return reduce(np.kron, fatores)


def assemble_dense(A, grid):
    """
    Matriz (N·Gⁿ)² de u ↦ A:Du, bloco (α, β) = Σ_j A_{αβj} D_j

    Vetores empilhados como GridFunction.values.ravel() (componente mais lenta).
    """
    if grid.n != A.n:
        raise ErroDimensao(f"Grade com n={grid.n} para tensor com n={A.n}")
    tamanho = A.N * grid.total
    if tamanho > LIMITE_DENSO:
        raise ErroTamanho(f"N·Gⁿ = {tamanho} excede o limite denso {LIMITE_DENSO}")
    return sum(np.kron(A.entries[:, :, j], _derivada_eixo(grid, j)) for j in range(grid.n))


def apply_dense(matriz, u):
    return GridFunction(u.grid, (matriz @ u.values.ravel()).reshape(u.values.shape))


def _conteudo_limitado(grid, vetor, N):
    """Energia fora dos modos esperados no núcleo (todo eixo com k ∈ {0, G/2})"""
    campo = GridFunction(grid, vetor.reshape((N,) + grid.shape))
    coef = dft_forward(campo).coefficients
    esperado = np.all((grid.wavenumbers == 0) | (grid.wavenumbers == -grid.G // 2), axis=0)
    return float(np.sum(np.abs(coef[:, ~esperado]) ** 2)), campo


def solve_dense(A, f):
    """
    Solução densa de A:Du = f com a média de cada componente fixada em zero

    Uma linha de cada bloco de componente é trocada pela restrição de média; o núcleo
    restante (planos de Nyquist) é resolvido por mínimos quadrados de norma mínima.
    """
    grid = f.grid
    matriz = assemble_dense(A, grid)
    f_til, media = project_mean_zero(f)
    if np.any(np.abs(media) > 1e-12 * max(norm_l2(f), 1.0)):
        logger.warning("⚠️ AVISO: solve_dense recebeu f com média não nula; média removida")

    total = grid.total
    b = f_til.values.ravel().copy()
    for beta in range(A.N):
        linha = beta * total
        matriz[linha, :] = 0.0
        matriz[linha, beta * total:(beta + 1) * total] = 1.0 / total
        b[linha] = 0.0

    x, _, posto, _ = np.linalg.lstsq(matriz, b, rcond=None)
    esperado = A.N * total - A.N * (2 ** grid.n - 1)
    if posto < esperado:
        for vetor in null_space(matriz, rcond=1e-10).T:
            energia, campo = _conteudo_limitado(grid, vetor, A.N)
            if energia > 1e-12:
                raise ErroNaoEliptico(f"Núcleo denso com conteúdo limitado em banda (posto {posto} < {esperado})",
                                      witness=campo)
    return GridFunction(grid, x.reshape((A.N,) + grid.shape))


@dataclass(frozen=True)
class OracleReport:
    tensor: str
    samples: int
    max_apply_error: float
    max_solve_error: float

    @property
    def holds(self):
        return self.max_apply_error <= 1e-11 and self.max_solve_error <= 1e-9

    def to_row(self):
        return {'check': 'oracle', 'tensor': self.tensor, 'samples': self.samples,
                'max_apply_error': self.max_apply_error, 'max_solve_error': self.max_solve_error,
                'passed': self.holds}


def oracle_equivalence(A, grid, rng, amostras=10):
    """Compara aplicação e solução espectral contra a densa em campos limitados em banda"""
    matriz = assemble_dense(A, grid)
    erro_aplicacao, erro_solucao = 0.0, 0.0
    for _ in range(amostras):
        u = random_band_limited(grid, A.N, rng)
        espectral = apply_linear(A, u)
        escala = max(norm_l2(espectral), 1e-300)
        erro_aplicacao = max(erro_aplicacao, norm_l2(apply_dense(matriz, u) - espectral) / escala)

        f = random_band_limited(grid, A.N, rng)
        u_spec, _ = solve_linear(A, f)
        u_dense = solve_dense(A, f)
        Du = gradient(u_spec)
        erro_solucao = max(erro_solucao, norm_l2(gradient(u_dense) - Du) / max(norm_l2(Du), 1e-300))
    return OracleReport(A.nome, amostras, erro_aplicacao, erro_solucao)


def brute_nu(A, dense_resolution=RESOLUCAO_BRUTA):
    """ν(A) por amostragem densa da esfera, em lotes, sem refinamento local"""
    if dense_resolution < RESOLUCAO_BRUTA:
        raise ErroEntrada(f"brute_nu exige ao menos {RESOLUCAO_BRUTA} amostras")
    direcoes = sample_sphere(A.n, dense_resolution)
    menor = np.inf
    for inicio in range(0, len(direcoes), TAMANHO_LOTE):
        menor = min(menor, float(np.min(smallest_singular_values(A, direcoes[inicio:inicio + TAMANHO_LOTE]))))
    return menor
