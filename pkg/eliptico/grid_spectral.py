# Arquivo: grid_spectral.py
# Data: 19/10/2026 - Hora: 11:00
# Grade periódica, transformada discreta de Fourier, gradiente espectral e normas L² / L^{2*}
#
# Convenção: û(k) = G^{-n} Σ_x u(x) e^{-2πi k·x/L}, de modo que e^{2πi k·x/L} vira impulso
# unitário na frequência k/L. Coeficientes em ordem FFT; representantes com sinal em [-G/2, G/2).
# O plano de Nyquist (índice -G/2 em qualquer eixo) fica fora da diferenciação e da inversão.

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from eliptico.erros import ErroDimensao, ErroEntrada, ErroExpoente


@dataclass(frozen=True)
class PeriodicGrid:
    n: int
    G: int
    L: float = 1.0

    def __post_init__(self):
        if not 2 <= self.n <= 4:
            raise ErroEntrada(f"Dimensão n={self.n} fora de 2..4")
        if self.G < 4 or self.G % 2:
            raise ErroEntrada(f"G={self.G} deve ser par e ≥ 4")
        if not self.L > 0:
            raise ErroEntrada(f"Período L={self.L} deve ser positivo")

    @property
    def h(self):
        return self.L / self.G

    @property
    def shape(self):
        return (self.G,) * self.n

    @property
    def total(self):
        return self.G ** self.n

    @property
    def volume(self):
        return self.L ** self.n

    @cached_property
    def points(self):
        """Coordenadas (n, G, ..., G) dos pontos da célula [0, L)^n"""
        eixo = np.arange(self.G) * self.h
        return np.stack(np.meshgrid(*([eixo] * self.n), indexing='ij'))

    @cached_property
    def wavenumbers(self):
        """Inteiros com sinal k em ordem FFT, forma (n, G, ..., G)"""
        k = np.fft.fftfreq(self.G, d=1.0 / self.G)
        return np.stack(np.meshgrid(*([k] * self.n), indexing='ij'))

    @cached_property
    def frequencies(self):
        return self.wavenumbers / self.L

    @cached_property
    def nyquist_mask(self):
        return np.any(self.wavenumbers == -self.G // 2, axis=0)

    @cached_property
    def retained_mask(self):
        """Modos usados pelos multiplicadores: z ≠ 0 e fora de Nyquist"""
        zero = np.all(self.wavenumbers == 0, axis=0)
        return ~(self.nyquist_mask | zero)

    @cached_property
    def freq_norm(self):
        return np.sqrt(np.sum(self.frequencies ** 2, axis=0))

    def as_dict(self):
        return {'n': self.n, 'G': self.G, 'L': self.L}


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Campo real com C componentes em cada ponto: valores de forma (C, G, ..., G)"""
    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self):
        valores = np.array(self.values, dtype=np.float64)
        if valores.shape[1:] != self.grid.shape:
            raise ErroDimensao(f"Valores {valores.shape} incompatíveis com a grade {self.grid.shape}")
        if not np.all(np.isfinite(valores)):
            raise ErroEntrada("Campo com valores não finitos")
        valores.setflags(write=False)
        object.__setattr__(self, 'values', valores)

    @classmethod
    def zeros(cls, grid, C):
        return cls(grid, np.zeros((C,) + grid.shape))

    @property
    def components(self):
        return self.values.shape[0]

    def as_matrix_field(self, N):
        """Gradiente visto como (N, n, *grade); componentes em ordem (β, j)"""
        if self.components != N * self.grid.n:
            raise ErroDimensao(f"Esperadas {N * self.grid.n} componentes de gradiente, há {self.components}")
        return self.values.reshape((N, self.grid.n) + self.grid.shape)

    def pointwise(self):
        """Valores como (G^n, C), um ponto por linha"""
        return self.values.reshape(self.components, -1).T

    def _checar(self, outro):
        if outro.grid != self.grid or outro.components != self.components:
            raise ErroDimensao("Campos em grades ou com componentes diferentes")

    def __add__(self, outro):
        self._checar(outro)
        return GridFunction(self.grid, self.values + outro.values)

    def __sub__(self, outro):
        self._checar(outro)
        return GridFunction(self.grid, self.values - outro.values)

    def __mul__(self, c):
        return GridFunction(self.grid, float(c) * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralField:
    grid: PeriodicGrid
    coefficients: np.ndarray

    @property
    def components(self):
        return self.coefficients.shape[0]

    def coefficient_norm(self):
        """Norma L² pelo lado das frequências (Plancherel discreto)"""
        return float(np.sqrt(self.grid.volume * np.sum(np.abs(self.coefficients) ** 2)))

    def nyquist_energy(self):
        return float(np.sum(np.abs(self.coefficients[:, self.grid.nyquist_mask]) ** 2))

    def is_hermitian(self, tol=1e-12):
        # û(-k) = conj(û(k)): inverter cada eixo em ordem FFT é roll(flip, 1)
        espelho = self.coefficients
        for eixo in range(1, self.grid.n + 1):
            espelho = np.roll(np.flip(espelho, axis=eixo), 1, axis=eixo)
        escala = max(1.0, float(np.max(np.abs(self.coefficients), initial=0.0)))
        return bool(np.max(np.abs(espelho - np.conj(self.coefficients)), initial=0.0) <= tol * escala)


def _eixos(grid):
    return tuple(range(1, grid.n + 1))


def dft_forward(u):
    return SpectralField(u.grid, np.fft.fftn(u.values, axes=_eixos(u.grid), norm='forward'))


def dft_inverse(U):
    valores = np.fft.ifftn(U.coefficients, axes=_eixos(U.grid), norm='forward')
    return GridFunction(U.grid, valores.real)


def gradient_spectral(U):
    """Coeficientes de Du: 2πi z_j û_β(z), com o plano de Nyquist zerado; forma (N, n, *grade)"""
    grid = U.grid
    mult = 2j * np.pi * grid.frequencies * (~grid.nyquist_mask)
    return U.coefficients[:, None, ...] * mult[None, ...]


def gradient(u):
    """Gradiente espectral: N componentes → N·n componentes em ordem (β, j)"""
    grid = u.grid
    Du = gradient_spectral(dft_forward(u))
    valores = np.fft.ifftn(Du, axes=tuple(range(2, grid.n + 2)), norm='forward').real
    return GridFunction(grid, valores.reshape((u.components * grid.n,) + grid.shape))


def gradient_norm_spectral(u):
    """‖Du‖₂ calculado do lado das frequências: Σ|2πz|²|û(z)|² ponderado"""
    grid = u.grid
    U = dft_forward(u).coefficients
    peso = (2 * np.pi * grid.freq_norm) ** 2 * (~grid.nyquist_mask)
    return float(np.sqrt(grid.volume * np.sum(peso * np.abs(U) ** 2)))


def centered_difference_gradient(u):
    """Gradiente por diferenças centradas de segunda ordem (referência de convergência)"""
    grid = u.grid
    partes = []
    for eixo in range(1, grid.n + 1):
        partes.append((np.roll(u.values, -1, axis=eixo) - np.roll(u.values, 1, axis=eixo)) / (2 * grid.h))
    Du = np.stack(partes, axis=1)
    return GridFunction(grid, Du.reshape((u.components * grid.n,) + grid.shape))


def conjugate_exponent(n):
    """2* = 2n/(n-2), definido para n ≥ 3"""
    if n < 3:
        raise ErroExpoente(f"2* indefinido para n={n} (requer n ≥ 3)")
    return 2.0 * n / (n - 2)


def _norma_p(u, p):
    modulo = np.sqrt(np.sum(u.values ** 2, axis=0))
    return float((u.grid.h ** u.grid.n * np.sum(modulo ** p)) ** (1.0 / p))


def norm_l2(u):
    return _norma_p(u, 2.0)


def norm_l2star(u):
    return _norma_p(u, conjugate_exponent(u.grid.n))


def project_mean_zero(u):
    """Remove a média de cada componente; devolve (campo, média removida)"""
    media = u.values.reshape(u.components, -1).mean(axis=1)
    valores = u.values - media.reshape((-1,) + (1,) * u.grid.n)
    return GridFunction(u.grid, valores), media


FORMAS_MODO = {'sin': np.sin, 'cos': np.cos}


def single_mode(grid, N, component, k, amplitude=1.0, shape='sin'):
    """amplitude·sin(2π k·x/L) (ou cos) na componente dada (índice a partir de 0)"""
    k = np.asarray(k, dtype=np.float64)
    if k.shape != (grid.n,):
        raise ErroDimensao(f"Vetor de frequência deve ter {grid.n} entradas")
    if shape not in FORMAS_MODO:
        raise ErroEntrada(f"Forma de modo '{shape}' desconhecida; opções: sin, cos")
    fase = 2 * np.pi * np.tensordot(k, grid.points, axes=1) / grid.L
    valores = np.zeros((N,) + grid.shape)
    valores[component] = amplitude * FORMAS_MODO[shape](fase)
    return GridFunction(grid, valores)


def random_band_limited(grid, C, rng, kmax=None, mean_zero=True):
    """
    Campo aleatório real com espectro em |k_i| ≤ kmax (abaixo de Nyquist)

    A simetria hermitiana vem de tomar a parte real após a inversa.
    """
    kmax = grid.G // 2 - 1 if kmax is None else min(kmax, grid.G // 2 - 1)
    coef = rng.standard_normal((C,) + grid.shape) + 1j * rng.standard_normal((C,) + grid.shape)
    banda = np.all(np.abs(grid.wavenumbers) <= kmax, axis=0)
    coef = coef * banda
    if mean_zero:
        coef[(slice(None),) + (0,) * grid.n] = 0.0
    valores = np.fft.ifftn(coef, axes=_eixos(grid), norm='forward').real
    return GridFunction(grid, valores)
