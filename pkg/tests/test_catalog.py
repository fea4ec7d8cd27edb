import math

import numpy as np
import pytest

from eliptico import catalog
from eliptico.ellipticity import ellipticity_constant
from eliptico.erros import ErroCatalogo, ErroEntrada
from eliptico.operador import NonlinearOperator
from eliptico.tensor_core import ConstantTensor, direction_matrix


@pytest.mark.parametrize('entrada', [e for e in catalog.entries() if e.documented_nu])
def test_documented_constants(entrada):
    for parametros, esperado in entrada.documented_nu.items():
        A = catalog.get(entrada.name, parametros)
        assert ellipticity_constant(A).nu == pytest.approx(esperado, abs=1e-6)


def test_dirac_direction_matrix_is_orthogonal(dirac, rng):
    for _ in range(10):
        a = rng.standard_normal(3)
        a /= np.linalg.norm(a)
        Aa = direction_matrix(dirac, a)
        np.testing.assert_allclose(Aa @ Aa.T, np.eye(4), atol=1e-14)
    np.testing.assert_array_equal(direction_matrix(dirac, [1.0, 0.0, 0.0]), np.eye(4))


def test_cauchy_riemann_symbol(cr):
    np.testing.assert_array_equal(direction_matrix(cr, [0.6, 0.8]), [[0.6, 0.8], [-0.8, 0.6]])


def test_generalized_cr_requires_positive_parameters():
    with pytest.raises(ErroEntrada):
        catalog.generalized_cr(1, 0, 1, 1)


@pytest.mark.parametrize('texto,esperado', [
    ('dirac', ('dirac', ())),
    ('catalog:generalized_cr(2, 1, 1, 1)', ('generalized_cr', (2.0, 1.0, 1.0, 1.0))),
    ('catalog:lipschitz_perturbation(generalized_cr(2,1,1,1), 0.5, tanh_trace)',
     ('lipschitz_perturbation', ('generalized_cr(2,1,1,1)', 0.5, 'tanh_trace'))),
])
def test_parse_reference(texto, esperado):
    assert catalog.parse_reference(texto) == esperado


def test_parse_reference_rejects_garbage():
    with pytest.raises(ErroCatalogo):
        catalog.parse_reference('catalog:1abc')


def test_unknown_entry():
    with pytest.raises(ErroCatalogo):
        catalog.get('laplace')
    with pytest.raises(ErroEntrada):
        catalog.get('dirac', (1.0,))


def test_lipschitz_perturbation_declarations():
    F = catalog.lipschitz_perturbation('generalized_cr(2,1,1,1)', 0.5)
    assert isinstance(F, NonlinearOperator)
    assert F.declared_nearness == pytest.approx(0.5 * 2 / math.sqrt(5), abs=1e-6)
    assert F.declared_elliptic
    assert not catalog.lipschitz_perturbation('dirac', 1.5).declared_elliptic
    with pytest.raises(ErroEntrada):
        catalog.lipschitz_perturbation('dirac', -0.1)
    with pytest.raises(ErroCatalogo):
        catalog.lipschitz_perturbation('dirac', 0.5, 'cubic')
    with pytest.raises(ErroEntrada):
        catalog.lipschitz_perturbation('lipschitz_perturbation', 0.5)


@pytest.mark.parametrize('forma', sorted(catalog.SHAPES))
def test_shapes_are_one_lipschitz(forma, rng):
    s = catalog.SHAPES[forma]
    x = rng.random((200, 3))
    P = rng.standard_normal((200, 4, 3))
    Q = rng.standard_normal((200, 4, 3))
    diferenca = np.linalg.norm(s(x, P + Q) - s(x, P), axis=-1)
    assert np.all(diferenca <= np.linalg.norm(Q, axis=(1, 2)) + 1e-12)
    np.testing.assert_array_equal(s(x, np.zeros((200, 4, 3))), 0.0)


def test_variable_linear(dirac):
    F = catalog.variable_linear(dirac, 0.5)
    assert F.declared_nearness == 0.5
    assert F.declared_elliptic
    x = np.array([[0.0, 0.0, 0.0], [0.25, 0.0, 0.0]])
    Q = np.zeros((2, 4, 3))
    Q[:, 0, 0] = 1.0
    # B normalizado com B₁₁₁ = 1: na origem soma ε, em x₁ = 1/4 o cosseno zera
    np.testing.assert_allclose(F.evaluate(x, Q), [[1.5, 0, 0, 0], [1.0, 0, 0, 0]], atol=1e-15)
    assert not catalog.variable_linear(dirac, 1.5).declared_elliptic


def test_variable_linear_with_explicit_coefficient(cr):
    B = ConstantTensor(2 * cr.entries)
    F = catalog.variable_linear(cr, 0.25, B)
    Q = np.zeros((1, 2, 2))
    Q[0, 0, 0] = 1.0
    np.testing.assert_allclose(F.evaluate([[0.0, 0.0]], Q), [[1 + 0.25 / math.sqrt(2), 0.0]])
    with pytest.raises(ErroEntrada):
        catalog.variable_linear(cr, 0.25, np.zeros(8))


def test_zero_tensor():
    A = catalog.zero(3, 2)
    assert (A.N, A.n) == (3, 2)
    assert not np.any(A.entries)
