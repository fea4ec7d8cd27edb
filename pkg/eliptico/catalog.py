# Arquivo: catalog.py
# Data: 19/10/2026 - Hora: 16:30
# Catálogo de operadores: Cauchy-Riemann, Cauchy-Riemann generalizado, Dirac,
# tensor nulo, perturbações de Lipschitz e operadores lineares com coeficiente variável

import logging
import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from eliptico.ellipticity import ellipticity_constant_cached
from eliptico.erros import ErroCatalogo, ErroEntrada
from eliptico.operador import NonlinearOperator
from eliptico.tensor_core import ConstantTensor, contract, operator_norm

logger = logging.getLogger(__name__)

CONSTANTE = 'constant-tensor'
VARIAVEL = 'variable-linear'
NAO_LINEAR = 'fully-nonlinear'


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    builder: Callable
    description: str
    documented_nu: dict = field(default_factory=dict)   # parâmetros → ν(A) conhecido


def cauchy_riemann():
    """A:Q = (Q₁₁ + Q₂₂, −Q₁₂ + Q₂₁); Aa = [[a₁, a₂], [−a₂, a₁]]"""
    return generalized_cr(1.0, 1.0, 1.0, 1.0, nome='cauchy_riemann')


def generalized_cr(kappa, lam, mu, nu, nome=None):
    """A:Q = (κQ₁₁ + λQ₂₂, −μQ₁₂ + νQ₂₁), com κ, λ, μ, ν > 0"""
    parametros = (kappa, lam, mu, nu)
    if not all(p > 0 for p in parametros):
        raise ErroEntrada(f"Parâmetros do Cauchy-Riemann generalizado devem ser positivos: {parametros}")
    A = np.zeros((2, 2, 2))
    A[0, 0, 0], A[0, 1, 1] = kappa, lam
    A[1, 0, 1], A[1, 1, 0] = -mu, nu
    return ConstantTensor(A, nome=nome or f"generalized_cr({kappa:g},{lam:g},{mu:g},{nu:g})")


# (α, β, j) → valor, índices a partir de 1, na forma real de quatro equações
_DIRAC = {
    (1, 1, 1): 1, (1, 2, 2): 1, (1, 3, 3): 1,
    (2, 1, 2): -1, (2, 2, 1): 1, (2, 4, 3): 1,
    (3, 1, 3): -1, (3, 3, 1): 1, (3, 4, 2): -1,
    (4, 2, 3): -1, (4, 3, 2): 1, (4, 4, 1): 1,
}


def dirac():
    """Operador de Dirac real, N=4, n=3: Aa ortogonal, Aa = I₄ em a = e₁"""
    A = np.zeros((4, 4, 3))
    for (alfa, beta, j), valor in _DIRAC.items():
        A[alfa - 1, beta - 1, j - 1] = valor
    return ConstantTensor(A, nome='dirac')


def zero(N=2, n=2):
    N, n = int(N), int(n)
    return ConstantTensor(np.zeros((N, N, n)), nome=f"zero({N},{n})")


def parse_reference(texto):
    """
    'catalog:nome(p1, p2, ...)' ou 'nome(...)' → (nome, parâmetros)

    Números viram float; o resto fica como texto (nome de base, forma).
    """
    texto = texto.strip()
    if texto.startswith('catalog:'):
        texto = texto[len('catalog:'):]
    casamento = re.fullmatch(r'([A-Za-z_]\w*)\s*(?:\((.*)\))?', texto)
    if not casamento:
        raise ErroCatalogo(f"Referência de catálogo inválida: '{texto}'")
    nome, corpo = casamento.groups()
    parametros = []
    # vírgulas dentro de parênteses pertencem à base aninhada
    profundidade, atual = 0, ''
    for caractere in (corpo or ''):
        if caractere == ',' and profundidade == 0:
            parametros.append(atual.strip())
            atual = ''
            continue
        profundidade += (caractere == '(') - (caractere == ')')
        atual += caractere
    if atual.strip():
        parametros.append(atual.strip())
    return nome, tuple(_converter(p) for p in parametros)


def _converter(valor):
    try:
        return float(valor)
    except ValueError:
        return valor


def _base(base):
    if isinstance(base, ConstantTensor):
        return base
    tensor = get(*parse_reference(base))
    if not isinstance(tensor, ConstantTensor):
        raise ErroEntrada(f"Base '{base}' não é um tensor constante")
    return tensor


def _sin_q11(x, Q):
    s = np.zeros(Q.shape[:-1])
    s[:, 0] = np.sin(Q[:, 0, 0])
    return s


def _tanh_trace(x, Q):
    s = np.zeros(Q.shape[:-1])
    s[:, 0] = np.tanh(Q[:, 0, :].sum(axis=-1) / math.sqrt(Q.shape[-1]))
    return s


def _sin_q11_cos_x1(x, Q):
    s = _sin_q11(x, Q)
    s[:, 0] *= np.cos(2 * np.pi * x[:, 0])
    return s


# Formas 1-Lipschitz em norma de Frobenius
SHAPES = {
    'sin_q11': _sin_q11,
    'tanh_trace': _tanh_trace,
    'sin_q11_cos_x1': _sin_q11_cos_x1,
}


def lipschitz_perturbation(base='dirac', lam=0.5, shape='sin_q11'):
    """
    F(x, Q) = A:Q + λ·ν(A)·s(x, Q), com s 1-Lipschitz em Q

    ν(F, A) = λ·ν(A) exatamente (supremo atingido em Q → 0, P = 0).
    """
    A = _base(base)
    lam = float(lam)
    if lam < 0:
        raise ErroEntrada(f"λ = {lam} deve ser não negativo")
    if shape not in SHAPES:
        raise ErroCatalogo(f"Forma '{shape}' desconhecida; opções: {', '.join(SHAPES)}")
    nu = ellipticity_constant_cached(A).nu
    forma = SHAPES[shape]
    peso = lam * nu

    def avaliar(x, Q):
        return contract(A, Q) + peso * forma(x, Q)

    if lam >= 1:
        logger.warning(f"⚠️ AVISO: lipschitz_perturbation com λ = {lam:g} ≥ 1 não é estritamente elíptica")
    return NonlinearOperator(avaliar, A, declared_nearness=peso, nome=f"lipschitz_perturbation({A.nome},{lam:g},{shape})",
                             declared_elliptic=lam < 1)


def variable_linear(base='dirac', eps=0.5, B=None):
    """F(x, Q) = (A + ε cos(2πx₁) B):Q com ‖B‖ = 1; elíptico sse ε < ν(A)"""
    A = _base(base)
    eps = float(eps)
    if B is None:
        matriz_B = np.zeros_like(A.entries)
        matriz_B[0, 0, 0] = 1.0
        B = ConstantTensor(matriz_B, nome='B')
    elif not isinstance(B, ConstantTensor):
        B = ConstantTensor.from_flat(B, A.N, A.n, nome='B')
    norma = operator_norm(B)
    if norma == 0:
        raise ErroEntrada("B nulo em variable_linear")
    B = B.scaled(1.0 / norma)
    nu = ellipticity_constant_cached(A).nu

    def avaliar(x, Q):
        return contract(A, Q) + eps * np.cos(2 * np.pi * x[:, 0])[:, None] * contract(B, Q)

    if eps >= nu:
        logger.warning(f"⚠️ AVISO: variable_linear com ε = {eps:g} ≥ ν(A) = {nu:.6g} não é elíptico")
    return NonlinearOperator(avaliar, A, declared_nearness=abs(eps), nome=f"variable_linear({A.nome},{eps:g})",
                             declared_elliptic=eps < nu)


_REGISTRO = {
    'cauchy_riemann': CatalogEntry('cauchy_riemann', CONSTANTE, cauchy_riemann,
                                   "Cauchy-Riemann, N=2, n=2", {(): 1.0}),
    'generalized_cr': CatalogEntry('generalized_cr', CONSTANTE, generalized_cr,
                                   "Cauchy-Riemann generalizado (κ, λ, μ, ν > 0)",
                                   {(1.0, 1.0, 1.0, 1.0): 1.0, (2.0, 1.0, 1.0, 1.0): 2 / math.sqrt(5)}),
    'dirac': CatalogEntry('dirac', CONSTANTE, dirac, "Dirac real, N=4, n=3", {(): 1.0}),
    'zero': CatalogEntry('zero', CONSTANTE, zero, "tensor nulo (não elíptico)", {(): 0.0}),
    'lipschitz_perturbation': CatalogEntry('lipschitz_perturbation', NAO_LINEAR, lipschitz_perturbation,
                                           "A:Q + λν(A)s(x,Q), s ∈ {" + ', '.join(SHAPES) + "}"),
    'variable_linear': CatalogEntry('variable_linear', VARIAVEL, variable_linear,
                                    "(A + ε cos(2πx₁)B):Q"),
}


def entries():
    return list(_REGISTRO.values())


def entry(name):
    if name not in _REGISTRO:
        raise ErroCatalogo(f"Entrada '{name}' não existe no catálogo; opções: {', '.join(_REGISTRO)}")
    return _REGISTRO[name]


def get(name, params=()):
    """
    Constrói o objeto do catálogo

    Args:
        name (str): nome da entrada
        params (tuple | dict): parâmetros posicionais ou nomeados do construtor

    Returns:
        ConstantTensor | NonlinearOperator
    """
    entrada = entry(name)
    try:
        if isinstance(params, dict):
            return entrada.builder(**params)
        return entrada.builder(*params)
    except TypeError as e:
        raise ErroEntrada(f"Parâmetros inválidos para {name}: {e}") from e
