# Arquivo: tensor_core.py
# Data: 19/10/2026 - Hora: 10:20
# Álgebra de tensores constantes A ∈ R^N ⊗ R^{N×n}
# Contração, matriz de direção Aa, cofator, determinante, produto tensorial, norma de operador

from dataclasses import dataclass
from itertools import product

import numpy as np

from eliptico.erros import ErroDimensao, ErroEntrada


@dataclass(frozen=True, eq=False)
class ConstantTensor:
    """
    Tensor constante A com entradas A[α, β, j]

    Ordem de armazenamento: α mais lento, depois β, depois j (mesma ordem da
    lista `entries` do arquivo de configuração).
    """
    entries: np.ndarray
    nome: str = 'inline'

    def __post_init__(self):
        valores = np.array(self.entries, dtype=np.float64)
        if valores.ndim != 3 or valores.shape[0] != valores.shape[1]:
            raise ErroDimensao(f"Tensor deve ter forma (N, N, n), recebido {valores.shape}")
        if valores.shape[0] < 2 or valores.shape[2] < 2:
            raise ErroDimensao(f"N e n devem ser ≥ 2, recebido N={valores.shape[0]}, n={valores.shape[2]}")
        if not np.all(np.isfinite(valores)):
            raise ErroEntrada("Tensor com entradas não finitas")
        valores.setflags(write=False)
        object.__setattr__(self, 'entries', valores)

    @classmethod
    def from_flat(cls, valores, N, n, nome='inline'):
        """Monta o tensor a partir da lista plana (α, β, j)"""
        plano = np.asarray(valores, dtype=np.float64).ravel()
        if plano.size != N * N * n:
            raise ErroDimensao(f"Esperadas {N * N * n} entradas para N={N}, n={n}, recebidas {plano.size}")
        return cls(plano.reshape(N, N, n), nome=nome)

    @property
    def N(self):
        return self.entries.shape[0]

    @property
    def n(self):
        return self.entries.shape[2]

    @property
    def chave(self):
        # usada pelos caches de plano e de elipticidade
        return (self.N, self.n, self.entries.tobytes())

    def __eq__(self, outro):
        if not isinstance(outro, ConstantTensor):
            return NotImplemented
        return self.chave == outro.chave

    def __hash__(self):
        return hash(self.chave)

    def flat(self):
        return self.entries.ravel().copy()

    def as_matrix(self):
        """A como aplicação linear R^{N·n} → R^N (Q achatado em (β, j))"""
        return self.entries.reshape(self.N, self.N * self.n)

    def scaled(self, c):
        return ConstantTensor(c * self.entries, nome=f"{c}*{self.nome}")

    def __add__(self, outro):
        return ConstantTensor(self.entries + outro.entries, nome=f"{self.nome}+{outro.nome}")


def contract(A, Q):
    """
    A:Q, com resultado_α = Σ_{β,j} A_{αβj} Q_{βj}

    Aceita Q com dimensões extras à esquerda (lotes): (..., N, n) → (..., N).
    """
    Q = np.asarray(Q, dtype=np.float64)
    if Q.shape[-2:] != (A.N, A.n):
        raise ErroDimensao(f"Q deve terminar em ({A.N}, {A.n}), recebido {Q.shape}")
    return np.einsum('abj,...bj->...a', A.entries, Q)


def contract_field(A, Du):
    """A:Du ponto a ponto para um gradiente de forma (N, n, *grade)"""
    if Du.shape[:2] != (A.N, A.n):
        raise ErroDimensao(f"Gradiente deve começar em ({A.N}, {A.n}), recebido {Du.shape[:2]}")
    return np.einsum('abj,bj...->a...', A.entries, Du)


def direction_matrix(A, a):
    """(Aa)_{αβ} = A_{αβj} a_j; aceita lotes de direções (..., n) → (..., N, N)"""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[-1] != A.n:
        raise ErroDimensao(f"Direção deve ter {A.n} componentes, recebido {a.shape}")
    return np.einsum('abj,...j->...ab', A.entries, a)


def rank_one(eta, a):
    """η⊗a com (η⊗a)_{βj} = η_β a_j"""
    return np.multiply.outer(np.asarray(eta, dtype=np.float64), np.asarray(a, dtype=np.float64))


def determinant(M):
    return np.linalg.det(np.asarray(M, dtype=np.float64))


def _cofator_menores(M):
    # cof_{ij} = (-1)^{i+j} det(menor_{ij}); vetorizado sobre os lotes
    N = M.shape[-1]
    cof = np.empty_like(M)
    if N == 1:
        cof[...] = 1.0
        return cof
    for i, j in product(range(N), range(N)):
        menor = np.delete(np.delete(M, i, axis=-2), j, axis=-1)
        cof[..., i, j] = (-1) ** (i + j) * np.linalg.det(menor)
    return cof


def _cofator_2x2(M):
    cof = np.empty_like(M)
    cof[..., 0, 0] = M[..., 1, 1]
    cof[..., 0, 1] = -M[..., 1, 0]
    cof[..., 1, 0] = -M[..., 0, 1]
    cof[..., 1, 1] = M[..., 0, 0]
    return cof


def _cofator_3x3(M):
    # linhas do cofator = produtos vetoriais das outras duas linhas
    r0, r1, r2 = M[..., 0, :], M[..., 1, :], M[..., 2, :]
    return np.stack([np.cross(r1, r2), np.cross(r2, r0), np.cross(r0, r1)], axis=-2)


def cofactor(M):
    """
    Matriz de cofatores, com M·cof(M)ᵀ = det(M)·I

    Fórmulas fechadas para N ≤ 4 (2×2 e 3×3 explícitas, 4×4 por menores);
    para N > 4 usa det(M)·M⁻ᵀ via fatoração LU com pivoteamento parcial,
    voltando aos menores nas matrizes singulares ou mal condicionadas do lote.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise ErroDimensao(f"Matriz quadrada esperada, recebido {M.shape}")
    N = M.shape[-1]
    if N == 2:
        return _cofator_2x2(M)
    if N == 3:
        return _cofator_3x3(M)
    if N <= 4:
        return _cofator_menores(M)

    if M.ndim == 2:
        return cofactor(M[None])[0]
    det = np.linalg.det(M)
    # singulares ou com cond > 1e4 vão para os menores
    with np.errstate(all='ignore'):
        condicao = np.linalg.cond(M)
    singular = ~np.isfinite(condicao) | (condicao > 1e4)
    cof = np.empty_like(M)
    regular = ~singular
    if np.any(regular):
        # numpy.linalg.inv é getrf/getri (LU com pivoteamento parcial)
        inversa = np.linalg.inv(M[regular])
        cof[regular] = det[regular][..., None, None] * np.swapaxes(inversa, -1, -2)
    if np.any(singular):
        cof[singular] = _cofator_menores(M[singular])
    return cof


def operator_norm(A):
    """‖A‖ = sup_{|Q|=1} |A:Q|, o maior valor singular de A achatado"""
    return float(np.linalg.norm(A.as_matrix(), 2))
