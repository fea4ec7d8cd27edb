# config_manager.py
# Leitura do arquivo de execução (seções entre colchetes, linhas chave = valor)
# Data: 19/10/2026 - Hora: 17:40

import logging
from dataclasses import dataclass, field
from pathlib import Path

import toml

from eliptico.erros import ErroConfiguracao

logger = logging.getLogger(__name__)

# Cache global para evitar múltiplas leituras do mesmo arquivo
_CONFIG_CACHE = {}

SECOES = ('tensor', 'grid', 'rhs', 'nonlinear', 'solver', 'run')


@dataclass
class RunConfig:
    """Valores brutos por seção com acessores tipados"""
    secoes: dict = field(default_factory=dict)
    caminho: Path | None = None

    def tem(self, secao, chave=None):
        if chave is None:
            return secao in self.secoes
        return chave in self.secoes.get(secao, {})

    def texto(self, secao, chave, padrao=None):
        """
        Obtém um valor como texto

        Args:
            secao (str): Nome da seção
            chave (str): Nome da chave
            padrao (str, optional): Valor padrão; se None a chave é obrigatória

        Returns:
            str: Valor encontrado ou padrão
        """
        valor = self.secoes.get(secao, {}).get(chave)
        if valor is None:
            if padrao is None:
                raise ErroConfiguracao(f"Chave obrigatória ausente: [{secao}] {chave}")
            return padrao
        return str(valor).strip()

    def numero(self, secao, chave, padrao=None, tipo=float):
        bruto = self.texto(secao, chave, None if padrao is None else str(padrao))
        try:
            return tipo(float(bruto)) if tipo is int else tipo(bruto)
        except ValueError as e:
            raise ErroConfiguracao(f"[{secao}] {chave} = '{bruto}' não é um número válido") from e

    def lista(self, secao, chave, padrao=None, tipo=float):
        """Lista separada por vírgulas"""
        valor = self.secoes.get(secao, {}).get(chave)
        if valor is None:
            if padrao is None:
                raise ErroConfiguracao(f"Chave obrigatória ausente: [{secao}] {chave}")
            return list(padrao)
        if isinstance(valor, (list, tuple)):
            itens = valor
        else:
            itens = [v for v in str(valor).split(',') if v.strip()]
        try:
            return [tipo(float(v)) if tipo is int else tipo(str(v).strip()) for v in itens]
        except ValueError as e:
            raise ErroConfiguracao(f"[{secao}] {chave}: lista inválida '{valor}'") from e

    def com(self, secao, chave, valor):
        """Cópia com um valor substituído (usado pelas opções do CLI)"""
        secoes = {s: dict(v) for s, v in self.secoes.items()}
        secoes.setdefault(secao, {})[chave] = valor
        return RunConfig(secoes, self.caminho)

    def to_dict(self):
        return {s: dict(v) for s, v in self.secoes.items()}


def _parse_texto(conteudo, origem):
    secoes, atual = {}, None
    for numero_linha, linha in enumerate(conteudo.splitlines(), 1):
        linha = linha.split('#', 1)[0].strip()

        # Ignora linhas vazias e comentários
        if not linha:
            continue

        if linha.startswith('[') and linha.endswith(']'):
            atual = linha[1:-1].strip().lower()
            if atual not in SECOES:
                logger.warning(f"⚠️ AVISO: Seção desconhecida [{atual}] em {origem}:{numero_linha}")
            secoes.setdefault(atual, {})
            continue

        if '=' not in linha:
            raise ErroConfiguracao(f"Linha {numero_linha} inválida em {origem}: {linha}")
        if atual is None:
            raise ErroConfiguracao(f"Linha {numero_linha} fora de seção em {origem}: {linha}")
        chave, valor = linha.split('=', 1)
        secoes[atual][chave.strip()] = valor.strip()
    return secoes


def carregar_config(caminho):
    """
    Carrega o arquivo de execução (texto ou .toml), com cache por caminho resolvido

    Args:
        caminho (str | Path): arquivo de configuração

    Returns:
        RunConfig: configuração lida
    """
    caminho = Path(caminho).resolve()
    if caminho in _CONFIG_CACHE:
        return _CONFIG_CACHE[caminho]
    if not caminho.exists():
        raise ErroConfiguracao(f"Arquivo de configuração {caminho} não encontrado")

    try:
        if caminho.suffix == '.toml':
            secoes = {k.lower(): v for k, v in toml.load(caminho).items()}
        else:
            secoes = _parse_texto(caminho.read_text(encoding='utf-8'), caminho.name)
    except toml.TomlDecodeError as e:
        raise ErroConfiguracao(f"TOML inválido em {caminho}: {e}") from e

    config = RunConfig(secoes, caminho)
    _CONFIG_CACHE[caminho] = config
    return config


def config_de_texto(conteudo):
    """RunConfig a partir de uma string (sem cache)"""
    return RunConfig(_parse_texto(conteudo, '<texto>'))


def gravar_snapshot(config, destino):
    """Grava run_config.toml com os valores resolvidos da execução"""
    caminho = Path(destino) / 'run_config.toml'
    with open(caminho, 'w', encoding='utf-8') as fh:
        toml.dump(config.to_dict(), fh)
    return caminho


def limpar_cache():
    global _CONFIG_CACHE
    _CONFIG_CACHE = {}
