# Arquivo: expressoes.py
# Data: 19/10/2026 - Hora: 17:00
# Subconjunto de expressões do arquivo de configuração para F e f
# Aritmética, sin, cos, tanh, exp e pi sobre x1..xn e Qβj (índices a partir de 1)

import logging
import re

import numpy as np
from asteval import Interpreter

from eliptico.erros import ErroAvaliacao, ErroConfiguracao
from eliptico.grid_spectral import GridFunction
from eliptico.operador import NonlinearOperator

logger = logging.getLogger(__name__)

FUNCOES = {'sin': np.sin, 'cos': np.cos, 'tanh': np.tanh, 'exp': np.exp}
CONSTANTES = {'pi': np.pi}


def _nomes_permitidos(N, n, com_Q=True):
    nomes = set(FUNCOES) | set(CONSTANTES) | {f"x{j}" for j in range(1, n + 1)}
    if com_Q:
        nomes |= {f"Q{b}{j}" for b in range(1, N + 1) for j in range(1, n + 1)}
    return nomes


def validar_expressao(texto, N, n, com_Q=True):
    """Rejeita identificadores fora do subconjunto permitido"""
    if not texto or not texto.strip():
        raise ErroConfiguracao("Expressão vazia")
    permitidos = _nomes_permitidos(N, n, com_Q)
    # expoentes como 1e-3 não contam como identificador
    estranhos = sorted(set(re.findall(r'(?<!\w)[A-Za-z_]\w*', texto)) - permitidos)
    if estranhos:
        raise ErroConfiguracao(f"Identificadores não permitidos em '{texto}': {', '.join(estranhos)}")
    return texto.strip()


def _interpretador():
    interp = Interpreter(minimal=True, use_numpy=False)
    for nome, valor in {**FUNCOES, **CONSTANTES}.items():
        interp.symtable[nome] = valor
    return interp


def _avaliar(interp, texto, simbolos, M):
    interp.symtable.update(simbolos)
    valor = interp.eval(texto, show_errors=False)
    if interp.error:
        tipo, mensagem = interp.error[0].get_error()
        interp.error = []
        raise ErroAvaliacao(f"Erro ao avaliar '{texto}': {tipo}: {mensagem}")
    return np.broadcast_to(np.asarray(valor, dtype=np.float64), (M,))


class ExpressionEvaluator:
    """Avaliador em lote (x (M, n), Q (M, N, n)) → (M, N) para componentes dadas como texto"""

    def __init__(self, componentes, N, n):
        if len(componentes) != N:
            raise ErroConfiguracao(f"Esperadas {N} componentes de F, recebidas {len(componentes)}")
        self.componentes = [validar_expressao(c, N, n) for c in componentes]
        self.N, self.n = N, n
        self._interp = _interpretador()

    def __call__(self, x, Q):
        M = Q.shape[0]
        simbolos = {f"x{j + 1}": x[:, j] for j in range(self.n)}
        simbolos.update({f"Q{b + 1}{j + 1}": Q[:, b, j] for b in range(self.N) for j in range(self.n)})
        return np.column_stack([_avaliar(self._interp, c, simbolos, M) for c in self.componentes])


def expression_operator(componentes, anchor, declared_nearness=None, nome='F'):
    """NonlinearOperator a partir de expressões; o interpretador não é reentrante"""
    avaliador = ExpressionEvaluator(componentes, anchor.N, anchor.n)
    return NonlinearOperator(avaliador, anchor, declared_nearness=declared_nearness,
                             thread_safe=False, nome=nome)


def expression_field(componentes, grid):
    """Campo f na grade a partir de expressões em x1..xn"""
    interp = _interpretador()
    pontos = grid.points.reshape(grid.n, -1)
    simbolos = {f"x{j + 1}": pontos[j] for j in range(grid.n)}
    valores = []
    for texto in componentes:
        texto = validar_expressao(texto, len(componentes), grid.n, com_Q=False)
        valores.append(_avaliar(interp, texto, simbolos, pontos.shape[1]).reshape(grid.shape))
    return GridFunction(grid, np.stack(valores))
