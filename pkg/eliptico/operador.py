# Arquivo: operador.py
# Data: 19/10/2026 - Hora: 12:10
# Operador não linear pontual (x, Q) ↦ F(x, Q) com tensor âncora A

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from config import TAMANHO_LOTE, TRABALHADORES
from eliptico.erros import ErroAvaliacao, ErroDimensao
from eliptico.grid_spectral import GridFunction
from eliptico.tensor_core import ConstantTensor

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NonlinearOperator:
    """
    F avaliado em lote: evaluator(x (M, n), Q (M, N, n)) → (M, N)

    declared_nearness é um limitante superior conhecido de ν(F,A), quando existe.
    thread_safe=False força a avaliação em uma única thread.
    """
    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    anchor: ConstantTensor
    declared_nearness: float | None = None
    thread_safe: bool = True
    x_periodic: bool = True
    nome: str = 'F'
    declared_elliptic: bool | None = None

    @property
    def N(self):
        return self.anchor.N

    @property
    def n(self):
        return self.anchor.n

    def _avaliar_lote(self, x, Q):
        try:
            saida = np.asarray(self.evaluator(x, Q), dtype=np.float64)
        except Exception as e:
            raise ErroAvaliacao(f"Falha ao avaliar {self.nome}: {e}") from e
        if saida.shape != (Q.shape[0], self.N):
            raise ErroAvaliacao(f"{self.nome} devolveu forma {saida.shape}, esperado {(Q.shape[0], self.N)}")
        if not np.all(np.isfinite(saida)):
            raise ErroAvaliacao(f"{self.nome} devolveu valores não finitos")
        return saida

    def evaluate(self, x, Q):
        """F(x, Q) para lotes; x é difundido se vier com uma linha só"""
        Q = np.asarray(Q, dtype=np.float64)
        if Q.shape[-2:] != (self.N, self.n):
            raise ErroDimensao(f"Q deve terminar em ({self.N}, {self.n}), recebido {Q.shape}")
        lote = Q.reshape(-1, self.N, self.n)
        x = np.broadcast_to(np.asarray(x, dtype=np.float64), (lote.shape[0], self.n))

        total = lote.shape[0]
        if total <= TAMANHO_LOTE:
            saida = self._avaliar_lote(x, lote)
        else:
            cortes = range(0, total, TAMANHO_LOTE)
            partes = [(x[i:i + TAMANHO_LOTE], lote[i:i + TAMANHO_LOTE]) for i in cortes]
            if self.thread_safe and TRABALHADORES > 1:
                with ThreadPoolExecutor(max_workers=TRABALHADORES) as pool:
                    resultados = list(pool.map(lambda par: self._avaliar_lote(*par), partes))
            else:
                resultados = [self._avaliar_lote(*par) for par in partes]
            saida = np.concatenate(resultados)
        return saida.reshape(Q.shape[:-2] + (self.N,))

    def on_grid(self, Du):
        """F(x, Du(x)) em todos os pontos da grade; Du tem N·n componentes"""
        grid = Du.grid
        Q = np.moveaxis(Du.as_matrix_field(self.N), (0, 1), (-2, -1)).reshape(-1, self.N, self.n)
        x = grid.points.reshape(grid.n, -1).T
        valores = self.evaluate(x, Q)
        return GridFunction(grid, valores.T.reshape((self.N,) + grid.shape))

    def at_zero(self, grid):
        """c(x) = F(x, 0) na grade"""
        return self.on_grid(GridFunction.zeros(grid, self.N * self.n))
