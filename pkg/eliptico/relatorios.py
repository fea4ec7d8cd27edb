# Arquivo: relatorios.py
# Data: 19/10/2026 - Hora: 17:20
# Relatórios: linhas dos dataclasses → DataFrame, CSV / JSON-lines, tabela rich e diagnóstico do ambiente

import logging
import os
import platform
import sys
import time
from datetime import datetime
from pathlib import Path

import pandas as pd
import psutil
from rich.table import Table

logger = logging.getLogger(__name__)

FORMATOS = ('csv', 'jsonl')


def frame(relatorios, colunas=None):
    """DataFrame com uma linha por relatório (objetos com to_row() ou dicts)"""
    linhas = [r if isinstance(r, dict) else r.to_row() for r in relatorios]
    return pd.DataFrame(linhas, columns=colunas)


def como_texto(df, formato='csv'):
    if formato == 'csv':
        return df.to_csv(index=False)
    if formato == 'jsonl':
        return df.to_json(orient='records', lines=True)
    raise ValueError(f"Formato '{formato}' não suportado; opções: {', '.join(FORMATOS)}")


def gravar(df, caminho):
    """Grava conforme a extensão (.csv ou .jsonl) e devolve o Path"""
    caminho = Path(caminho)
    formato = 'jsonl' if caminho.suffix == '.jsonl' else 'csv'
    caminho.write_text(como_texto(df, formato), encoding='utf-8')
    logger.debug(f"Relatório gravado em {caminho} ({len(df)} linhas)")
    return caminho


def tabela(df, titulo):
    """Tabela rich para o console; floats com 6 algarismos significativos"""
    tab = Table(title=titulo)
    for coluna in df.columns:
        tab.add_column(str(coluna))
    for linha in df.itertuples(index=False):
        tab.add_row(*[f"{v:.6g}" if isinstance(v, float) else str(v) for v in linha])
    return tab


def diagnostico_ambiente(inicio=None):
    """Versão do Python, sistema, memória residente (MB) e tempo de parede desde `inicio`"""
    return {
        'timestamp': datetime.now().isoformat(timespec='seconds'),
        'python': sys.version.split()[0],
        'os': f"{platform.system()} {platform.release()}",
        'cpu_count': os.cpu_count(),
        'rss_mb': round(psutil.Process().memory_info().rss / 1024 / 1024, 2),
        'wall_time_s': round(time.perf_counter() - inicio, 3) if inicio is not None else None,
    }
