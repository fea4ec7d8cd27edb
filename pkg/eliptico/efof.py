# Arquivo: efof.py
# Data: 19/10/2026 - Hora: 11:40
# Formato binário EFOF para campos na grade periódica
#
# Layout (tudo little-endian):
#   b"EFOF" | u32 versão=1 | u32 n | u32 C | u32 G × n | u64 bytes do payload | float64 × C·G^n
# Payload: componente mais lenta, depois eixos da grade em ordem row-major (eixo 1 mais lento).

import logging
import struct
from pathlib import Path

import numpy as np

from eliptico.erros import ErroEntrada
from eliptico.grid_spectral import GridFunction, PeriodicGrid

logger = logging.getLogger(__name__)

MAGICO = b'EFOF'
VERSAO = 1


def write_field(caminho, u):
    """Grava o campo no formato EFOF e devolve o Path gravado"""
    caminho = Path(caminho)
    grid = u.grid
    payload = np.ascontiguousarray(u.values, dtype='<f8').tobytes()
    cabecalho = MAGICO + struct.pack(f'<III{grid.n}IQ', VERSAO, grid.n, u.components,
                                     *([grid.G] * grid.n), len(payload))
    with open(caminho, 'wb') as fh:
        fh.write(cabecalho)
        fh.write(payload)
    logger.debug(f"Campo gravado em {caminho} ({u.components} componentes, G={grid.G})")
    return caminho


def _ler(fh, formato):
    tamanho = struct.calcsize(formato)
    bruto = fh.read(tamanho)
    if len(bruto) != tamanho:
        raise ErroEntrada("Arquivo EFOF truncado no cabeçalho")
    return struct.unpack(formato, bruto)


def read_field(caminho, L=1.0):
    """
    Lê um campo EFOF

    Args:
        caminho: arquivo .efof
        L (float): período da célula (não fica gravado no arquivo)

    Returns:
        GridFunction: campo lido
    """
    with open(caminho, 'rb') as fh:
        if fh.read(4) != MAGICO:
            raise ErroEntrada(f"{caminho} não é um arquivo EFOF")
        versao, n, C = _ler(fh, '<III')
        if versao != VERSAO:
            raise ErroEntrada(f"Versão EFOF {versao} não suportada")
        Gs = _ler(fh, f'<{n}I')
        (tamanho,) = _ler(fh, '<Q')
        if len(set(Gs)) != 1:
            raise ErroEntrada(f"Grades com G diferente por eixo não são suportadas: {Gs}")
        esperado = 8 * C * int(np.prod(Gs))
        if tamanho != esperado:
            raise ErroEntrada(f"Payload declarado com {tamanho} bytes, esperado {esperado}")
        bruto = fh.read(tamanho)
        if len(bruto) != tamanho:
            raise ErroEntrada("Arquivo EFOF truncado no payload")

    grid = PeriodicGrid(n, Gs[0], L)
    valores = np.frombuffer(bruto, dtype='<f8').reshape((C,) + grid.shape)
    return GridFunction(grid, valores)
