# Programa: config.py
# Data: 19/10/2026
# Hora: 09:40
# Caminhos, variáveis de ambiente e constantes numéricas padrão


import logging
import os
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler

# Diretório de saída: variável de ambiente tem prioridade (execução em lote / CI)
_OUT_ENV = os.getenv('ELIPTICO_OUT')

if _OUT_ENV:
    OUT_DIR = Path(_OUT_ENV)
else:
    # Caminho local para desenvolvimento
    OUT_DIR = Path(__file__).parent / 'saida'

NIVEL_LOG = os.getenv('ELIPTICO_LOG', 'INFO').upper()

# Console compartilhado pelo CLI e pelo handler de log
console = Console(stderr=True)

# --- Constantes numéricas ---
RESOLUCAO_ESFERA = 2000          # amostras da esfera em ellipticity_constant
RESOLUCAO_MINIMA = 100
RESOLUCAO_BRUTA = 100_000        # brute_nu
NU_MIN = 1e-12                   # abaixo disso o tensor é tratado como não elíptico
MARGEM_RELATIVA = 1e-6          # margem de elipticidade estrita abaixo de MARGEM_RELATIVA·ν(A) conta como nula
TOL_REFINAMENTO = 1e-10          # diâmetro do simplex no Nelder-Mead
TOL_SOLVER = 1e-10
MAX_ITER = 1000
FATOR_RUIDO = 1e-13              # piso de ruído relativo a ||f||
PASSOS_DIVERGENCIA = 3
LIMITE_DENSO = 4096              # N·G^n máximo do oráculo denso
ESCALAS_Q = tuple(10.0 ** k for k in range(-4, 3))
SEMENTE_PADRAO = 20250218
TRABALHADORES = min(4, os.cpu_count() or 1)
TAMANHO_LOTE = 65536             # pontos por lote na avaliação de F
CACHE_PLANOS = 16               # planos de multiplicadores guardados (LRU)
CACHE_ELIPTICIDADE = 256        # relatórios de ν(A) guardados (LRU)


def garantir_diretorio(caminho=None):
    """Cria o diretório de saída se não existir e devolve o Path"""
    destino = Path(caminho) if caminho else OUT_DIR
    destino.mkdir(parents=True, exist_ok=True)
    return destino


def configurar_logging(nivel=None):
    """
    Instala o RichHandler no logger raiz (uma única vez)

    Args:
        nivel (str, optional): Nível de log. Se None, usa ELIPTICO_LOG ou INFO

    Returns:
        logging.Logger: Logger raiz configurado
    """
    raiz = logging.getLogger()
    raiz.setLevel(nivel or NIVEL_LOG)

    if not any(isinstance(h, RichHandler) for h in raiz.handlers):
        handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter('%(message)s'))
        raiz.addHandler(handler)

    return raiz
