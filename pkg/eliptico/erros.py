# Arquivo: erros.py
# Data: 19/10/2026 - Hora: 09:55
# Hierarquia de exceções; cada classe carrega o estágio usado como código de saída do CLI


class ErroEliptico(Exception):
    """Erro base do pacote"""
    estagio = 3


class ErroConfiguracao(ErroEliptico):
    estagio = 1


class ErroEntrada(ErroEliptico):
    """Entrada inválida: valores não finitos, pré-condição violada"""
    estagio = 1


class ErroCatalogo(ErroEliptico, LookupError):
    estagio = 1


class ErroDimensao(ErroEliptico):
    estagio = 3


class ErroExpoente(ErroEliptico):
    """Expoente 2* indefinido (n < 3)"""
    estagio = 3


class ErroDominio(ErroEliptico):
    estagio = 3


class ErroNaoEliptico(ErroEliptico):
    """ν(A) = 0, margem ≤ 0 ou núcleo denso além do esperado"""
    estagio = 2

    def __init__(self, mensagem, witness=None):
        super().__init__(mensagem)
        self.witness = witness


class ErroAvaliacao(ErroEliptico):
    estagio = 3


class ErroDivergencia(ErroEliptico):
    estagio = 3

    def __init__(self, mensagem, trace=None):
        super().__init__(mensagem)
        self.trace = trace


class ErroTamanho(ErroEliptico):
    estagio = 3


class ErroVerificacao(ErroEliptico):
    estagio = 4
