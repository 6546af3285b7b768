"""Матрицы графа: A, D, L = D - A, Â = D^{-1/2} A D^{-1/2}, 𝓛 = I - Â."""
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import DegenerateInputError, ParameterError


@dataclass(frozen=True)
class SymmetricMatrix:
    entries: np.ndarray = field(repr=False)

    @classmethod
    def from_array(cls, array):
        """Симметризует (M + Mᵀ)/2: результат симметричен побитово."""
        array = np.array(array, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ParameterError('matrix must be square')
        entries = (array + array.T) / 2
        entries.setflags(write=False)
        return cls(entries)

    @property
    def n(self):
        return self.entries.shape[0]

    def __matmul__(self, other):
        return self.entries @ other


def _inverse_sqrt_degrees(g):
    isolated = g.isolated_vertices()
    if isolated:
        raise DegenerateInputError(isolated[0])
    return 1.0 / np.sqrt(g.degrees.astype(np.float64))


def adjacency_matrix(g):
    return SymmetricMatrix.from_array(g.adjacency.astype(np.float64))


def normalized_adjacency(g):
    scale = _inverse_sqrt_degrees(g)
    return SymmetricMatrix.from_array(g.adjacency * np.outer(scale, scale))


def combinatorial_laplacian(g):
    laplacian = np.diag(g.degrees.astype(np.float64)) - g.adjacency
    return SymmetricMatrix.from_array(laplacian)


def normalized_laplacian(g):
    return SymmetricMatrix.from_array(
        np.eye(g.n) - normalized_adjacency(g).entries)


def sqrt_degree_vector(g, unit=True):
    """D^{1/2}𝟙 - собственный вектор 𝓛 с собственным значением 0."""
    vector = np.sqrt(g.degrees.astype(np.float64))
    if unit:
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise DegenerateInputError(0, 'graph has no edges')
        vector = vector / norm
    return vector
