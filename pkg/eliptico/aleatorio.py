# Arquivo: aleatorio.py
# Data: 19/10/2026 - Hora: 10:05
# Gerador nomeado e reproduzível: MT19937 (registrador de deslocamento generalizado torcido)

import numpy as np

from config import SEMENTE_PADRAO

ALGORITMO = 'MT19937'


def make_rng(seed=None):
    """Gerador numpy sobre o bit generator MT19937 com a semente dada"""
    return np.random.Generator(np.random.MT19937(SEMENTE_PADRAO if seed is None else int(seed)))


def spawn(seed, quantidade):
    """
    Fluxos independentes derivados da mesma semente

    Cada categoria de amostra (x, P, Q...) usa o próprio fluxo, de modo que
    aumentar uma contagem não altera as amostras das outras.
    """
    raiz = np.random.SeedSequence(SEMENTE_PADRAO if seed is None else int(seed))
    return [np.random.Generator(np.random.MT19937(s)) for s in raiz.spawn(quantidade)]
