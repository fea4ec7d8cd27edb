# Arquivo: comandos.py
# Data: 19/10/2026 - Hora: 18:10
# Corpo dos comandos do CLI: montagem de tensor, grade, lado direito e operador a partir
# do RunConfig; execução de analyze, solve-linear, solve-nonlinear e verify

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from config import MAX_ITER, RESOLUCAO_ESFERA, SEMENTE_PADRAO, TOL_SOLVER
from eliptico import catalog
from eliptico.aleatorio import spawn
from eliptico.efof import read_field, write_field
from eliptico.ellipticity import NearnessSampler, ellipticity_constant, is_strictly_elliptic
from eliptico.erros import ErroConfiguracao, ErroDimensao, ErroDivergencia, ErroNaoEliptico, ErroVerificacao
from eliptico.expressoes import expression_field, expression_operator
from eliptico.grid_spectral import GridFunction, PeriodicGrid, random_band_limited, single_mode
from eliptico.linear_solver import RegularizerSequence, solve_linear, solve_representation, verify_apriori
from eliptico.nonlinear_solver import (campanato_solve, near_operator_check, sample_pairs, verify_comparison,
                                       verify_growth)
from eliptico.operador import NonlinearOperator
from eliptico.oracle_verify import oracle_equivalence
from eliptico.relatorios import diagnostico_ambiente, frame, gravar
from eliptico.tensor_core import ConstantTensor, contract, operator_norm

logger = logging.getLogger(__name__)

CHECKS = ('apriori', 'comparison', 'near_operator', 'growth', 'oracle')


@dataclass
class ResultadoComando:
    df: object
    arquivos: list = field(default_factory=list)
    titulo: str = ''


# --- Montagem a partir da configuração ---

def montar_tensor(cfg):
    fonte = cfg.texto('tensor', 'source', 'catalog:dirac')
    try:
        if fonte == 'inline':
            N = cfg.numero('tensor', 'N', tipo=int)
            n = cfg.numero('tensor', 'n', tipo=int)
            return ConstantTensor.from_flat(cfg.lista('tensor', 'entries'), N, n, nome='inline')
        A = catalog.get(*catalog.parse_reference(fonte))
    except ErroDimensao as e:
        raise ErroConfiguracao(f"[tensor] inválido: {e}") from e
    if not isinstance(A, ConstantTensor):
        raise ErroConfiguracao(f"[tensor] source = {fonte} não é um tensor constante")
    return A


def montar_grade(cfg, A):
    return PeriodicGrid(A.n, cfg.numero('grid', 'G', 16, int), cfg.numero('grid', 'L', 1.0))


def semente(cfg):
    return cfg.numero('run', 'seed', SEMENTE_PADRAO, int)


def montar_rhs(cfg, grid, N, rng=None):
    """Lado direito f: mode | file | expression | random | zero"""
    tipo = cfg.texto('rhs', 'kind', 'mode')
    if tipo == 'mode':
        componente = cfg.numero('rhs', 'component', 1, int)
        if not 1 <= componente <= N:
            raise ErroConfiguracao(f"[rhs] component = {componente} fora de 1..{N}")
        k = cfg.lista('rhs', 'k', [1.0] + [0.0] * (grid.n - 1))
        if len(k) != grid.n:
            raise ErroConfiguracao(f"[rhs] k deve ter {grid.n} entradas")
        return single_mode(grid, N, componente - 1, k, cfg.numero('rhs', 'amplitude', 1.0),
                           cfg.texto('rhs', 'shape', 'sin'))
    if tipo == 'file':
        f = read_field(cfg.texto('rhs', 'file'), grid.L)
        if f.grid != grid or f.components != N:
            raise ErroConfiguracao(f"Campo em arquivo com grade {f.grid.as_dict()} e {f.components} "
                                   f"componentes; esperado {grid.as_dict()} e {N}")
        return f
    if tipo == 'expression':
        return expression_field([cfg.texto('rhs', f"f{a}") for a in range(1, N + 1)], grid)
    if tipo == 'random':
        rng = rng or spawn(semente(cfg), 1)[0]
        return random_band_limited(grid, N, rng, cfg.numero('rhs', 'kmax', grid.G // 2 - 1, int))
    if tipo == 'zero':
        return GridFunction.zeros(grid, N)
    raise ErroConfiguracao(f"[rhs] kind = {tipo} desconhecido (mode, file, expression, random, zero)")


def operador_linear(A):
    return NonlinearOperator(lambda x, Q: contract(A, Q), A, declared_nearness=0.0, nome=f"{A.nome}:Q")


def montar_operador(cfg, A, padrao='linear'):
    """
    Operador não linear da seção [nonlinear]

    source = linear | expression | catalog:lipschitz_perturbation | catalog:variable_linear;
    sem parâmetros explícitos, a base é o tensor de [tensor] e λ/ε/shape vêm de chaves próprias.
    """
    fonte = cfg.texto('nonlinear', 'source', padrao)
    if fonte == 'linear':
        return operador_linear(A)
    if fonte == 'expression':
        componentes = [cfg.texto('nonlinear', f"F{a}") for a in range(1, A.N + 1)]
        proximidade = cfg.numero('nonlinear', 'nearness') if cfg.tem('nonlinear', 'nearness') else None
        return expression_operator(componentes, A, proximidade, nome='expressao')

    nome, parametros = catalog.parse_reference(fonte)
    if not parametros:
        if nome == 'lipschitz_perturbation':
            parametros = (A, cfg.numero('nonlinear', 'lambda', 0.5), cfg.texto('nonlinear', 'shape', 'sin_q11'))
        elif nome == 'variable_linear':
            parametros = (A, cfg.numero('nonlinear', 'epsilon', 0.5))
    F = catalog.get(nome, parametros)
    if not isinstance(F, NonlinearOperator):
        raise ErroConfiguracao(f"[nonlinear] source = {fonte} não é um operador")
    if F.anchor.N != A.N or F.anchor.n != A.n:
        raise ErroConfiguracao("Âncora do operador incompatível com [tensor]")
    return F


def _arquivo(destino, nome, cfg):
    formato = cfg.texto('run', 'format', 'csv')
    if formato not in ('csv', 'jsonl'):
        raise ErroConfiguracao(f"[run] format = {formato} (csv ou jsonl)")
    return Path(destino) / f"{nome}.{formato}"


# --- Comandos ---

def _catalogo(fonte, prefixo):
    """Tipo e descrição da entrada de catálogo; vazio para inline, linear e expression"""
    if fonte in ('inline', 'linear', 'expression'):
        return {}
    entrada = catalog.entry(catalog.parse_reference(fonte)[0])
    return {f"{prefixo}_kind": entrada.kind, f"{prefixo}_description": entrada.description}


def cmd_analyze(cfg, destino):
    """ν(A), min|det| e, se houver [nonlinear], proximidade e elipticidade estrita"""
    A = montar_tensor(cfg)
    relatorio = ellipticity_constant(A, cfg.numero('run', 'resolution', RESOLUCAO_ESFERA, int))
    linha = {'tensor': A.nome, 'N': A.N, 'n': A.n, **relatorio.to_row(), 'operator_norm': operator_norm(A),
             **_catalogo(cfg.texto('tensor', 'source', 'catalog:dirac'), 'tensor')}

    if cfg.tem('nonlinear') and relatorio.elliptic:
        F = montar_operador(cfg, A)
        estrita = is_strictly_elliptic(F, A, NearnessSampler(seed=semente(cfg)))
        linha.update({'operator': F.nome, 'nu_FA': estrita.nearness.nu_FA, 'K': estrita.nearness.ratio,
                      'margin': estrita.margin, 'strictly_elliptic': estrita.elliptic,
                      'declared_elliptic': F.declared_elliptic, 'x_range': estrita.x_range,
                      **_catalogo(cfg.texto('nonlinear', 'source', 'linear'), 'operator')})
        if F.declared_elliptic is not None and F.declared_elliptic != estrita.elliptic:
            logger.warning(f"⚠️ AVISO: {F.nome}: elipticidade declarada {F.declared_elliptic} "
                           f"difere da amostrada {estrita.elliptic}")

    df = frame([linha])
    return ResultadoComando(df, [gravar(df, _arquivo(destino, 'analyze', cfg))], f"Elipticidade de {A.nome}")


def cmd_solve_linear(cfg, destino):
    """Solução direta; com [solver] regularizer, também a escada de m da representação"""
    A = montar_tensor(cfg)
    grid = montar_grade(cfg, A)
    f = montar_rhs(cfg, grid, A.N)

    u, relatorio = solve_linear(A, f)
    apriori = verify_apriori(A, u, f)
    linha = {**relatorio.to_row(), 'ratio_grad': apriori.ratio_grad, 'ratio_sobolev': apriori.ratio_sobolev}
    arquivos = [write_field(Path(destino) / 'u.efof', u)]
    linhas = [linha]

    tipo = cfg.texto('solver', 'regularizer', 'none')
    if tipo not in ('none', 'rational', 'truncation'):
        raise ErroConfiguracao(f"[solver] regularizer = {tipo} (none, rational ou truncation)")
    if tipo != 'none':
        for m in cfg.lista('solver', 'm', [1, 10, 100, 1000]):
            u_m, rep = solve_representation(A, f, RegularizerSequence(tipo, m))
            linhas.append({**rep.to_row(), 'kind': rep.kind, 'm': m, 'relative_error': rep.relative_error,
                           'gradient_error': rep.gradient_error, 'error_bound': rep.error_bound})
            arquivos.append(write_field(Path(destino) / f"u_m{m:g}.efof", u_m))

    df = frame(linhas)
    arquivos.insert(0, gravar(df, _arquivo(destino, 'solve_linear', cfg)))
    return ResultadoComando(df, arquivos, f"Solução linear ({A.nome}, G={grid.G})")


def cmd_solve_nonlinear(cfg, destino):
    """Iteração de Campanato; grava u.efof e o traço das iterações"""
    A = montar_tensor(cfg)
    grid = montar_grade(cfg, A)
    f = montar_rhs(cfg, grid, A.N)
    F = montar_operador(cfg, A)
    tol = cfg.numero('solver', 'tol', TOL_SOLVER)
    max_iter = cfg.numero('solver', 'max_iter', MAX_ITER, int)

    try:
        u, trace = campanato_solve(F, f, tol, max_iter)
    except ErroDivergencia as e:
        if e.trace is not None:
            gravar(e.trace.to_frame(), _arquivo(destino, 'trace', cfg))
        raise

    df = trace.to_frame()
    arquivos = [gravar(df, _arquivo(destino, 'trace', cfg))]
    if not trace.converged:
        raise ErroDivergencia(f"{F.nome}: sem convergência em {max_iter} iterações", trace=trace)
    arquivos.append(write_field(Path(destino) / 'u.efof', u))
    return ResultadoComando(df, arquivos, f"Campanato: {F.nome} ({trace.iterations} iterações)")


def _linha(check, valor, limite, passou, **extras):
    return {'check': check, 'value': valor, 'limit': limite, 'passed': bool(passou), **extras}


def cmd_verify(cfg, destino):
    """
    Suíte de verificação: a priori, comparação, proximidade de operadores, crescimento e oráculo

    Sem seção [nonlinear], o operador usado é lipschitz_perturbation(A, 0.5, sin_q11).
    """
    inicio = time.perf_counter()
    A = montar_tensor(cfg)
    elip = ellipticity_constant(A)
    if not elip.elliptic:
        raise ErroNaoEliptico(f"Tensor {A.nome} não é elíptico (ν = {elip.nu:.3e})")

    grid = PeriodicGrid(A.n, cfg.numero('grid', 'G', 8, int), cfg.numero('grid', 'L', 1.0))
    F = montar_operador(cfg, A, padrao='catalog:lipschitz_perturbation')
    pares = cfg.numero('run', 'pairs', 5, int)
    checks = cfg.lista('run', 'checks', CHECKS, tipo=str)
    rng_f, rng_pares, rng_oraculo = spawn(semente(cfg), 3)
    linhas = [_linha('ellipticity', elip.nu, 0.0, True, detail=A.nome)]

    if 'apriori' in checks:
        razoes = []
        for _ in range(pares):
            f = random_band_limited(grid, A.N, rng_f)
            u, _ = solve_linear(A, f)
            razoes.append(verify_apriori(A, u, f).ratio_grad)
        linhas.append(_linha('apriori', max(razoes), 1.0 + 1e-10, max(razoes) <= 1.0 + 1e-10))

    amostras = sample_pairs(grid, A.N, pares, rng_pares)
    if 'comparison' in checks:
        reps = [verify_comparison(F, w, v) for w, v in amostras]
        pior = max(r.ratio for r in reps)
        linhas.append(_linha('comparison', pior, 1.0 + 1e-9, all(r.holds for r in reps), detail=F.nome))
    if 'near_operator' in checks:
        rep = near_operator_check(F, amostras)
        linhas.append(_linha('near_operator', rep.max_ratio, rep.K, rep.holds, detail=F.nome))
    if 'growth' in checks:
        reps = [verify_growth(F, u) for u, _ in amostras]
        pior = max(r.F_norm / r.bound if r.bound > 0 else 0.0 for r in reps)
        linhas.append(_linha('growth', pior, 1.0, all(r.holds for r in reps), detail=F.nome))
    if 'oracle' in checks:
        rep = oracle_equivalence(A, PeriodicGrid(A.n, 4, grid.L), rng_oraculo)
        linhas.append(_linha('oracle', rep.max_solve_error, 1e-9, rep.holds, detail=f"apply={rep.max_apply_error:.2e}"))

    df = frame(linhas)
    ambiente = frame([diagnostico_ambiente(inicio)])
    arquivos = [gravar(df, _arquivo(destino, 'verify', cfg)), gravar(ambiente, _arquivo(destino, 'ambiente', cfg))]
    falhas = df.loc[~df['passed'], 'check'].tolist()
    if falhas:
        raise ErroVerificacao(f"Verificações falharam: {', '.join(falhas)}")
    return ResultadoComando(df, arquivos, f"Verificação ({A.nome}, G={grid.G})")
