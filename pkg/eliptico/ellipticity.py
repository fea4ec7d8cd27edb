# Arquivo: ellipticity.py
# Data: 19/10/2026 - Hora: 13:30
# Constante de elipticidade ν(A), condição do determinante, constante de proximidade ν(F,A),
# elipticidade estrita, pseudo-monotonicidade e limite de Lipschitz

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from config import (CACHE_ELIPTICIDADE, ESCALAS_Q, MARGEM_RELATIVA, NU_MIN, RESOLUCAO_ESFERA, RESOLUCAO_MINIMA,
                    TOL_REFINAMENTO)
from eliptico.aleatorio import spawn
from eliptico.erros import ErroDominio, ErroEntrada
from eliptico.tensor_core import contract, direction_matrix, operator_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipticityReport:
    nu: float
    argmin_direction: np.ndarray
    min_abs_det: float
    resolution: int
    refined: bool

    @property
    def elliptic(self):
        return self.nu > NU_MIN

    def to_row(self):
        return {
            'nu': self.nu,
            'min_abs_det': self.min_abs_det,
            'argmin_direction': ' '.join(f"{v:.12g}" for v in self.argmin_direction),
            'resolution': self.resolution,
            'refined': self.refined,
            'elliptic': self.elliptic,
        }


# --- Amostragem da esfera ---

def _esfera_fibonacci(total):
    i = np.arange(total) + 0.5
    z = 1.0 - 2.0 * i / total
    r = np.sqrt(1.0 - z ** 2)
    phi = np.pi * (3.0 - math.sqrt(5.0)) * np.arange(total)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _esfera_angulos(n, total):
    # coordenadas hiperesféricas; m pontos por ângulo, m^(n-1) ≥ total
    m = max(2, math.ceil(total ** (1.0 / (n - 1))))
    polares = [np.pi * (np.arange(m) + 0.5) / m] * (n - 2)
    azimute = 2 * np.pi * np.arange(m) / m
    angulos = np.meshgrid(*polares, azimute, indexing='ij')
    angulos = [a.ravel() for a in angulos]
    pontos = np.ones((angulos[0].size, n))
    seno = np.ones(angulos[0].size)
    for i, phi in enumerate(angulos):
        pontos[:, i] = seno * np.cos(phi)
        seno = seno * np.sin(phi)
    pontos[:, n - 1] = seno
    return pontos


def sample_sphere(n, total):
    """Amostra quase uniforme de S^{n-1}: Fibonacci para n=3, produto de ângulos nos demais"""
    if n == 3:
        return _esfera_fibonacci(total)
    return _esfera_angulos(n, total)


def smallest_singular_values(A, direcoes):
    return np.linalg.svd(direction_matrix(A, direcoes), compute_uv=False)[..., -1]


def _abs_det(A, direcoes):
    return np.abs(np.linalg.det(direction_matrix(A, direcoes)))


def _refinar(funcao, a0, passo):
    """
    Nelder-Mead na carta tangente em a0: a(t) = (a0 + B t)/|a0 + B t|

    Para quando o diâmetro do simplex fica abaixo de TOL_REFINAMENTO.
    """
    n = a0.size
    base = np.linalg.svd(a0[None, :])[2][1:].T      # n × (n-1), ortogonal a a0

    def na_carta(t):
        a = a0 + base @ t
        return a / np.linalg.norm(a)

    simplex = np.vstack([np.zeros(n - 1), passo * np.eye(n - 1)])
    res = minimize(lambda t: float(funcao(na_carta(t))), np.zeros(n - 1), method='Nelder-Mead',
                   options={'initial_simplex': simplex, 'xatol': TOL_REFINAMENTO, 'fatol': 1e-16,
                            'maxiter': 2000 * (n - 1)})
    return na_carta(res.x), float(res.fun), bool(res.success)


def _minimizar_esfera(A, funcao_lote, resolucao):
    direcoes = sample_sphere(A.n, resolucao)
    valores = funcao_lote(A, direcoes)
    melhor = int(np.argmin(valores))        # primeira amostra no mínimo vence
    a_melhor, v_melhor = direcoes[melhor], float(valores[melhor])

    passo = np.pi / max(2.0, len(direcoes) ** (1.0 / (A.n - 1)))
    a_ref, v_ref, convergiu = _refinar(lambda a: funcao_lote(A, a), a_melhor, passo)
    if v_ref < v_melhor:
        a_melhor, v_melhor = a_ref, v_ref
    if not convergiu:
        logger.warning(f"⚠️ AVISO: refinamento Nelder-Mead não convergiu para {A.nome}")
    return max(v_melhor, 0.0), a_melhor / np.linalg.norm(a_melhor), convergiu


def _checar_resolucao(resolution):
    if resolution < RESOLUCAO_MINIMA:
        raise ErroEntrada(f"Resolução {resolution} abaixo do mínimo {RESOLUCAO_MINIMA}")


def ellipticity_constant(A, resolution=RESOLUCAO_ESFERA):
    """
    ν(A) = min_{|a|=1} σ_min(Aa), por amostragem da esfera seguida de refinamento local

    Args:
        A (ConstantTensor): tensor constante
        resolution (int): número de amostras da esfera (≥ 100)

    Returns:
        EllipticityReport: ν, direção minimizante, min|det(Aa)|, resolução e status do refinamento
    """
    _checar_resolucao(resolution)
    if not np.all(np.isfinite(A.entries)):
        raise ErroEntrada("Tensor com entradas não finitas")
    nu, direcao, refinado = _minimizar_esfera(A, smallest_singular_values, resolution)
    min_det = det_condition(A, resolution)
    relatorio = EllipticityReport(nu, direcao, min_det, resolution, refinado)
    if not relatorio.elliptic:
        logger.warning(f"⚠️ AVISO: tensor {A.nome} não é elíptico (ν = {nu:.3e})")
    return relatorio


@lru_cache(maxsize=CACHE_ELIPTICIDADE)
def ellipticity_constant_cached(A, resolution=RESOLUCAO_ESFERA):
    return ellipticity_constant(A, resolution)


def det_condition(A, resolution=RESOLUCAO_ESFERA):
    """min_{|a|=1} |det(Aa)| sobre as amostras refinadas"""
    _checar_resolucao(resolution)
    valor, _, _ = _minimizar_esfera(A, _abs_det, resolution)
    return valor


# --- Constante de proximidade ν(F, A) ---

@dataclass(frozen=True)
class NearnessSampler:
    """
    Plano de amostragem de (x, P, Q)

    x: grade regular com x_per_axis pontos por eixo na célula [0, L)^n.
    P: {0} ∪ n_p matrizes gaussianas escaladas por p_scale.
    Q: direções estruturadas (E_{βj}, somas de linha normalizadas, vetores singulares
       à direita do âncora) ∪ n_random direções aleatórias, cada uma multiplicada pela
       escada geométrica `scales`.
    """
    x_per_axis: int = 3
    n_p: int = 6
    n_random: int = 24
    scales: tuple = ESCALAS_Q
    p_scale: float = 1.0
    L: float = 1.0
    seed: int | None = None

    def x_range(self, n):
        return f"[0, {self.L:g})^{n}"

    def pontos_x(self, n):
        eixo = np.arange(self.x_per_axis) * self.L / self.x_per_axis
        return np.stack(np.meshgrid(*([eixo] * n), indexing='ij')).reshape(n, -1).T

    def matrizes_p(self, N, n):
        rng = spawn(self.seed, 2)[0]
        aleatorias = self.p_scale * rng.standard_normal((self.n_p, N, n))
        return np.concatenate([np.zeros((1, N, n)), aleatorias])

    def direcoes(self, A):
        N, n = A.N, A.n
        coordenadas = np.eye(N * n).reshape(N * n, N, n)
        linhas = np.zeros((N, N, n))
        for beta in range(N):
            linhas[beta, beta, :] = 1.0 / math.sqrt(n)
        singulares = np.linalg.svd(A.as_matrix())[2][:N].reshape(N, N, n)
        rng = spawn(self.seed, 2)[1]
        aleatorias = rng.standard_normal((self.n_random, N, n))
        aleatorias /= np.linalg.norm(aleatorias, axis=(1, 2), keepdims=True)
        return np.concatenate([coordenadas, linhas, singulares, aleatorias])

    def matrizes_q(self, A):
        d = self.direcoes(A)
        return np.concatenate([s * d for s in self.scales])


@dataclass(frozen=True)
class _Amostras:
    x: np.ndarray       # (nx, n)
    P: np.ndarray       # (np, N, n)
    Q: np.ndarray       # (nq, N, n)
    dF: np.ndarray      # (nx, np, nq, N) = F(x, P+Q) - F(x, P)
    AQ: np.ndarray      # (nq, N)
    normQ: np.ndarray   # (nq,)

    def witness(self, indice):
        i, p, q = np.unravel_index(indice, self.dF.shape[:3])
        return (self.x[i], self.P[p], self.Q[q])


def _avaliar_incrementos(F, A, sampler):
    x = sampler.pontos_x(A.n)
    P = sampler.matrizes_p(A.N, A.n)
    Q = sampler.matrizes_q(A)
    nx, np_, nq = len(x), len(P), len(Q)

    X = np.broadcast_to(x[:, None, None, :], (nx, np_, nq, A.n)).reshape(-1, A.n)
    PQ = np.broadcast_to((P[:, None] + Q[None, :])[None], (nx, np_, nq, A.N, A.n))
    F_pq = F.evaluate(X, PQ.reshape(-1, A.N, A.n)).reshape(nx, np_, nq, A.N)

    Xp = np.broadcast_to(x[:, None, :], (nx, np_, A.n)).reshape(-1, A.n)
    Pp = np.broadcast_to(P[None], (nx, np_, A.N, A.n)).reshape(-1, A.N, A.n)
    F_p = F.evaluate(Xp, Pp).reshape(nx, np_, 1, A.N)

    return _Amostras(x, P, Q, F_pq - F_p, contract(A, Q), np.linalg.norm(Q, axis=(1, 2)))


@dataclass(frozen=True)
class NearnessReport:
    nu_FA: float
    nu_A: float
    ratio: float
    samples_used: int
    worst_witness: tuple
    x_range: str

    def to_row(self):
        return {'nu_FA': self.nu_FA, 'nu_A': self.nu_A, 'K': self.ratio,
                'samples_used': self.samples_used, 'x_range': self.x_range}


def nearness_quotient(F, A, x, P, Q):
    """|F(x,P+Q) − F(x,P) − A:Q| / |Q| para uma única tripla"""
    dF = F.evaluate(x, P + Q) - F.evaluate(x, P)
    return float(np.linalg.norm(dF - contract(A, Q)) / np.linalg.norm(Q))


def nearness_constant(F, A, sampler=None):
    """
    Estimador (limitante inferior) de ν(F,A) = ess sup_x sup_{P,Q} |F(x,P+Q) − F(x,P) − A:Q|/|Q|

    O supremo em x é aproximado pelo máximo numa grade regular da célula fundamental.
    """
    sampler = sampler or NearnessSampler()
    amostras = _avaliar_incrementos(F, A, sampler)
    quocientes = np.linalg.norm(amostras.dF - amostras.AQ, axis=-1) / amostras.normQ
    indice = int(np.argmax(quocientes))
    nu_FA = float(quocientes.ravel()[indice])
    nu_A = ellipticity_constant_cached(A).nu

    if F.declared_nearness is not None and nu_FA > F.declared_nearness + 1e-9:
        logger.warning(f"⚠️ AVISO: {F.nome}: proximidade amostrada {nu_FA:.6g} excede a declarada "
                       f"{F.declared_nearness:.6g}")

    return NearnessReport(
        nu_FA=nu_FA,
        nu_A=nu_A,
        ratio=nu_FA / nu_A if nu_A > 0 else math.inf,
        samples_used=int(quocientes.size),
        worst_witness=amostras.witness(indice),
        x_range=sampler.x_range(A.n),
    )


@dataclass(frozen=True)
class StrictEllipticity:
    elliptic: bool
    margin: float
    nearness: NearnessReport
    x_range: str
    nu_FA: float = math.nan     # max(amostrada, declarada)
    note: str = ("ν(F,A) amostrado é limitante inferior; sem proximidade declarada, "
                 "'elíptico' é só condição necessária")

    def __iter__(self):
        return iter((self.elliptic, self.margin))


def is_strictly_elliptic(F, A, sampler=None, rtol=MARGEM_RELATIVA):
    """
    Testa ν(F,A) < ν(A) com margem = ν(A) − ν(F,A)

    ν(F,A) é o maior entre o valor amostrado e o declarado no operador; margens
    até rtol·ν(A) contam como nulas (a amostragem chega a ν(F,A) só por baixo).
    """
    relatorio = nearness_constant(F, A, sampler)
    proximidade = relatorio.nu_FA
    if F.declared_nearness is not None:
        proximidade = max(proximidade, F.declared_nearness)
    margem = relatorio.nu_A - proximidade
    elliptic = margem > rtol * relatorio.nu_A
    if not elliptic:
        logger.warning(f"⚠️ AVISO: {F.nome} não é estritamente elíptico (margem {margem:.3e})")
    return StrictEllipticity(elliptic, margem, relatorio, relatorio.x_range, proximidade)


# --- Pseudo-monotonicidade e Lipschitz ---

@dataclass(frozen=True)
class PseudoMonotonicityReport:
    lam: float
    violations: int
    worst_violation: float       # max (rhs − lhs)/|Q|², ≤ 0 quando não há violação
    samples: int
    witness: tuple | None = None

    def to_row(self):
        return {'lambda': self.lam, 'violations': self.violations,
                'worst_violation': self.worst_violation, 'samples': self.samples}


def _checar_lambda(lam):
    if not 0.0 < lam < 1.0:
        raise ErroDominio(f"λ = {lam} deve estar em (0, 1)")


def _pseudo_monotonicidade(amostras, nu, lam):
    lhs = np.einsum('qa,ipqa->ipq', amostras.AQ, amostras.dF)
    AQ2 = np.sum(amostras.AQ ** 2, axis=-1)
    Q2 = amostras.normQ ** 2
    rhs = 0.5 * AQ2 - 0.5 * lam ** 2 * nu ** 2 * Q2
    # tolerância de arredondamento proporcional à escala dos termos
    escala = AQ2 + nu ** 2 * Q2 + np.sum(amostras.dF ** 2, axis=-1)
    excesso = rhs - lhs
    violacoes = excesso > 1e-10 * escala
    relativo = excesso / Q2
    indice = int(np.argmax(relativo))
    witness = amostras.witness(indice) if np.any(violacoes) else None
    return PseudoMonotonicityReport(lam, int(np.sum(violacoes)), float(relativo.ravel()[indice]),
                                    int(relativo.size), witness)


def check_pseudomonotonicity(F, A, lam, sampler=None):
    """
    Verifica (A:Q)ᵀ[F(x,P+Q) − F(x,P)] ≥ ½|A:Q|² − (λ²/2)ν(A)²|Q|² nas amostras

    Sem violações sempre que a proximidade amostrada é ≤ λ·ν(A).
    """
    _checar_lambda(lam)
    amostras = _avaliar_incrementos(F, A, sampler or NearnessSampler())
    return _pseudo_monotonicidade(amostras, ellipticity_constant_cached(A).nu, lam)


@dataclass(frozen=True)
class LipschitzReport:
    lam: float
    lipschitz_estimate: float
    threshold: float                        # √(1−λ²)·ν(A)
    lipschitz_bound_from_ellipticity: float  # ν(A) + ‖A‖
    within_bound: bool
    pseudomonotone: bool
    violations: int
    converse_applies: bool
    concludes_elliptic: bool
    implied_nearness_bound: float | None
    conclusion: str = field(default='')

    def to_row(self):
        return {k: v for k, v in self.__dict__.items()}


def lipschitz_and_converse(F, A, lam, sampler=None):
    """
    Estima ess sup ‖F(x,·)‖_{C^{0,1}} por quocientes de diferença e aplica a recíproca:
    pseudo-monotonicidade + Lipschitz < √(1−λ²)ν(A) ⇒ elipticidade estrita,
    com ν(F,A) ≤ √(λ² + δ²(1−λ²))·ν(A), δ = Lip/(√(1−λ²)ν(A)).
    """
    _checar_lambda(lam)
    amostras = _avaliar_incrementos(F, A, sampler or NearnessSampler())
    nu = ellipticity_constant_cached(A).nu
    lip = float(np.max(np.linalg.norm(amostras.dF, axis=-1) / amostras.normQ))
    limiar = math.sqrt(1.0 - lam ** 2) * nu
    limite = nu + operator_norm(A)
    pseudo = _pseudo_monotonicidade(amostras, nu, lam)

    aplica = lip < limiar
    conclui = aplica and pseudo.violations == 0
    implicado = None
    if aplica and limiar > 0:
        delta = lip / limiar
        implicado = math.sqrt(lam ** 2 + delta ** 2 * (1.0 - lam ** 2)) * nu

    if conclui:
        conclusao = "pseudo-monótono com Lipschitz abaixo do limiar: estritamente elíptico nas amostras"
    elif not aplica:
        conclusao = "Lipschitz acima de √(1−λ²)ν(A): a recíproca não se aplica"
    else:
        conclusao = "pseudo-monotonicidade violada nas amostras"

    return LipschitzReport(lam, lip, limiar, limite, lip <= limite * (1 + 1e-12), pseudo.violations == 0,
                           pseudo.violations, aplica, conclui, implicado, conclusao)
