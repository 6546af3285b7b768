"""Полное симметричное спектральное разложение и величины, которые из него следуют.

Все разложения выполняет LAPACK dsyev (scipy.linalg.eigh, driver='ev'):
приведение Хаусхолдером к трёхдиагональной форме и QL/QR со сдвигами.
Знак каждого собственного вектора фиксирован: наибольшая по модулю
компонента положительна, при равенстве модулей берётся меньший индекс.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
from django.conf import settings
from scipy import linalg

from core.exceptions import NumericError, ParameterError

from .matrices import (SymmetricMatrix, adjacency_matrix,
                       combinatorial_laplacian, normalized_adjacency,
                       normalized_laplacian)

logger = logging.getLogger(__name__)

ASCENDING = 'ascending'
DESCENDING = 'descending'
ORDERINGS = (ASCENDING, DESCENDING)


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    ordering: str
    max_residual: float

    @property
    def n(self):
        return self.eigenvalues.size

    def value(self, k):
        """λ_k в нумерации с единицы, как в тексте."""
        return float(self.eigenvalues[k - 1])

    def vector(self, k):
        return self.eigenvectors[:, k - 1]

    def is_degenerate(self, k):
        """λ_k кратно с соседним значением с точностью DEGENERACY_GAP."""
        neighbours = [
            self.eigenvalues[j] for j in (k - 2, k)
            if 0 <= j < self.n
        ]
        return any(
            abs(self.eigenvalues[k - 1] - value) < settings.DEGENERACY_GAP
            for value in neighbours
        )

    def reconstruct(self):
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T


class SecondEigenvector(NamedTuple):
    vector: np.ndarray
    degenerate: bool
    eigenvalue: float


def _as_array(m):
    entries = m.entries if isinstance(m, SymmetricMatrix) else np.asarray(
        m, dtype=np.float64)
    if not np.all(np.isfinite(entries)):
        raise NumericError('matrix has non-finite entries')
    return entries


def fix_signs(vectors):
    magnitudes = np.abs(vectors)
    peaks = magnitudes.max(axis=0)
    candidates = magnitudes >= peaks * (1 - settings.SIGN_TIE_TOLERANCE)
    first = np.argmax(candidates, axis=0)
    signs = np.sign(vectors[first, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eig_sym(m, ordering=ASCENDING):
    if ordering not in ORDERINGS:
        raise ParameterError(f'unknown ordering {ordering!r}')
    entries = _as_array(m)
    values, vectors = linalg.eigh(entries, driver='ev', check_finite=False)
    if ordering == DESCENDING:
        values, vectors = values[::-1], vectors[:, ::-1]
    vectors = fix_signs(np.ascontiguousarray(vectors))
    residuals = np.linalg.norm(entries @ vectors - vectors * values, axis=0)
    max_residual = float(residuals.max()) if residuals.size else 0.0
    radius = max(float(np.abs(values).max()) if values.size else 0.0, 1.0)
    if max_residual > settings.RESIDUAL_TOLERANCE * radius:
        raise NumericError(
            f'eigensolver residual {max_residual:.3e} exceeds tolerance')
    for array in (values, vectors):
        array.setflags(write=False)
    return SpectralDecomposition(
        eigenvalues=values,
        eigenvectors=vectors,
        ordering=ordering,
        max_residual=max_residual,
    )


def eigvals_sym(m):
    """Весь спектр (без векторов) по возрастанию."""
    return linalg.eigh(
        _as_array(m), eigvals_only=True, driver='ev', check_finite=False)


def orthonormality_error(decomposition):
    vectors = decomposition.eigenvectors
    return float(np.abs(vectors.T @ vectors - np.eye(vectors.shape[1])).max())


def spectral_gap(g):
    """λ₂(𝓛_G)."""
    if g.n < 2:
        raise ParameterError('spectral gap needs at least two vertices')
    return float(eigvals_sym(normalized_laplacian(g))[1])


def laplacian_gap(g):
    """λ₂(L_G) комбинаторного лапласиана."""
    if g.n < 2:
        raise ParameterError('spectral gap needs at least two vertices')
    return float(eigvals_sym(combinatorial_laplacian(g))[1])


def second_eigenvector(g):
    decomposition = eig_sym(normalized_laplacian(g), ASCENDING)
    return second_from_decomposition(decomposition)


def second_from_decomposition(decomposition):
    degenerate = (
        decomposition.n > 2
        and decomposition.value(3) - decomposition.value(2)
        < settings.DEGENERACY_GAP
    )
    if degenerate:
        logger.warning(
            'λ₂ = %.6g is degenerate; second eigenvector is not unique',
            decomposition.value(2))
    return SecondEigenvector(
        vector=decomposition.vector(2),
        degenerate=bool(degenerate),
        eigenvalue=decomposition.value(2),
    )


def rayleigh_quotient(m, x):
    x = np.asarray(x, dtype=np.float64)
    denominator = float(x @ x)
    if denominator == 0:
        raise ParameterError('Rayleigh quotient of the zero vector')
    return float(x @ (_as_array(m) @ x)) / denominator


class GraphSpectra:
    """Разложения одного графа, вычисляемые один раз и разделяемые проверками."""

    def __init__(self, g):
        self.graph = g

    @cached_property
    def adjacency(self):
        return eig_sym(adjacency_matrix(self.graph), DESCENDING)

    @cached_property
    def normalized_adjacency(self):
        return eig_sym(normalized_adjacency(self.graph), DESCENDING)

    @cached_property
    def normalized_laplacian(self):
        return eig_sym(normalized_laplacian(self.graph), ASCENDING)

    @cached_property
    def second(self):
        return second_from_decomposition(self.normalized_laplacian)

    @cached_property
    def combinatorial_gap(self):
        return laplacian_gap(self.graph)
