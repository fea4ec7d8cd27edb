# Data: 19/10/2026 - Hora: 18:40
# comando: uv run python main.py --config exemplos/dirac.cfg analyze
# Sistemas elípticos de primeira ordem
# Subcomandos: analyze, solve-linear, solve-nonlinear, verify
# Códigos de saída: 0 ok, 1 configuração, 2 elipticidade, 3 solução, 4 verificação

import logging
import sys

import click

from config import OUT_DIR, configurar_logging, console, garantir_diretorio
from config_manager import RunConfig, carregar_config, gravar_snapshot
from eliptico.comandos import cmd_analyze, cmd_solve_linear, cmd_solve_nonlinear, cmd_verify
from eliptico.erros import ErroEliptico
from eliptico.relatorios import tabela

logger = logging.getLogger('eliptico')


def _executar(ctx, comando):
    """Roda o comando com a configuração do grupo e converte erros em código de saída"""
    opcoes = ctx.obj
    try:
        cfg = carregar_config(opcoes['config']) if opcoes['config'] else RunConfig()
        if opcoes['seed'] is not None:
            cfg = cfg.com('run', 'seed', str(opcoes['seed']))
        destino = garantir_diretorio(opcoes['out'])
        gravar_snapshot(cfg, destino)

        resultado = comando(cfg, destino)
        console.print(tabela(resultado.df, resultado.titulo))
        for arquivo in resultado.arquivos:
            logger.info(f"✅ Gravado: {arquivo}")
    except ErroEliptico as e:
        logger.error(f"❌ ERRO: {e}")
        ctx.exit(e.estagio)


@click.group()
@click.option('--config', 'config', type=click.Path(dir_okay=False), default=None,
              help='Arquivo de execução (seções [tensor], [grid], [rhs], [nonlinear], [solver], [run])')
@click.option('--out', 'out', type=click.Path(file_okay=False), default=str(OUT_DIR),
              help='Diretório de saída dos relatórios e campos')
@click.option('--seed', 'seed', type=click.IntRange(0, 2 ** 64 - 1), default=None,
              help='Semente do gerador (substitui [run] seed)')
@click.option('--verbose', '-v', is_flag=True, help='Log em nível DEBUG')
@click.pass_context
def cli(ctx, config, out, seed, verbose):
    """Constantes de elipticidade e solução de sistemas elípticos de primeira ordem"""
    configurar_logging('DEBUG' if verbose else None)
    ctx.obj = {'config': config, 'out': out, 'seed': seed}


@cli.command()
@click.pass_context
def analyze(ctx):
    """ν(A), condição do determinante e proximidade ν(F,A)"""
    _executar(ctx, cmd_analyze)


@cli.command('solve-linear')
@click.pass_context
def solve_linear(ctx):
    """Resolve A:Du = f por multiplicadores de Fourier"""
    _executar(ctx, cmd_solve_linear)


@cli.command('solve-nonlinear')
@click.pass_context
def solve_nonlinear(ctx):
    """Resolve F(·, Du) = f pela iteração de Campanato"""
    _executar(ctx, cmd_solve_nonlinear)


@cli.command()
@click.pass_context
def verify(ctx):
    """Suíte de verificação das estimativas"""
    _executar(ctx, cmd_verify)


if __name__ == "__main__":
    sys.exit(cli())
