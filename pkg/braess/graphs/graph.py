"""Простые неориентированные графы, выборка G(n, p) и возмущения рёбер.

Вершины занумерованы 0..n-1. Граф неизменяем: возмущения возвращают копию.
Генератор G(n, p): numpy PCG64, одно равномерное число на пару вершин
в лексикографическом порядке пар.
"""
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import ParameterError, PreconditionError

logger = logging.getLogger(__name__)


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: np.ndarray = field(repr=False)
    degrees: np.ndarray = field(repr=False)

    @classmethod
    def from_adjacency(cls, adjacency):
        adjacency = np.array(adjacency, dtype=bool)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
            raise ParameterError('adjacency must be a square matrix')
        if adjacency.shape[0] < 1:
            raise ParameterError('graph needs at least one vertex')
        if adjacency.diagonal().any():
            raise ParameterError('self-loops are not allowed')
        if not np.array_equal(adjacency, adjacency.T):
            raise ParameterError('adjacency must be symmetric')
        degrees = adjacency.sum(axis=1).astype(np.int64)
        return cls(
            n=adjacency.shape[0],
            adjacency=_frozen(adjacency),
            degrees=_frozen(degrees),
        )

    @classmethod
    def from_edges(cls, n, edges):
        if n < 1:
            raise ParameterError(f'vertex count must be positive, got {n}')
        adjacency = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ParameterError(f'self-loop at vertex {u}')
            adjacency[u, v] = adjacency[v, u] = True
        return cls.from_adjacency(adjacency)

    @classmethod
    def empty(cls, n):
        return cls.from_edges(n, ())

    @classmethod
    def complete(cls, n):
        return cls.from_adjacency(~np.eye(n, dtype=bool))

    @property
    def edge_count(self):
        return int(self.degrees.sum()) // 2

    @property
    def edges(self):
        """Рёбра (u, v), u < v, в лексикографическом порядке."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    def edge_array(self):
        return np.argwhere(np.triu(self.adjacency, k=1))

    def has_edge(self, u, v):
        _check_vertex(self.n, u)
        _check_vertex(self.n, v)
        return bool(self.adjacency[u, v])

    def isolated_vertices(self):
        return [int(v) for v in np.flatnonzero(self.degrees == 0)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(
            self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.adjacency.tobytes()))

    def __str__(self):
        return f'Graph(n={self.n}, edges={self.edge_count})'


@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ParameterError(f'n must be an integer >= 2, got {self.n}')
        if not 0 < self.p < 1:
            raise ParameterError(f'p must lie in (0, 1), got {self.p}')
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError(f'seed must be a 64-bit value, got {self.seed}')


def _check_vertex(n, vertex):
    if not 0 <= vertex < n:
        raise ParameterError(f'vertex {vertex} is out of range [0, {n})')


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def sample_gnp(spec):
    """Граф G(n, p): каждая пара вершин - ребро независимо с вероятностью p."""
    n = spec.n
    rows, cols = np.triu_indices(n, k=1)
    draws = make_rng(spec.seed).random(rows.size)
    chosen = draws < spec.p
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[rows[chosen], cols[chosen]] = True
    adjacency |= adjacency.T
    graph = Graph.from_adjacency(adjacency)
    logger.debug('sampled %s from %s', graph, spec)
    return graph


def add_edge(g, u, v):
    if u == v:
        raise PreconditionError(f'cannot add a self-loop at vertex {u}')
    if g.has_edge(u, v):
        raise PreconditionError(f'edge {{{u}, {v}}} is already present')
    adjacency = g.adjacency.copy()
    adjacency[u, v] = adjacency[v, u] = True
    return Graph.from_adjacency(adjacency)


def remove_edge(g, u, v):
    if u == v or not g.has_edge(u, v):
        raise PreconditionError(f'edge {{{u}, {v}}} is absent')
    adjacency = g.adjacency.copy()
    adjacency[u, v] = adjacency[v, u] = False
    return Graph.from_adjacency(adjacency)


def non_edge_array(g):
    free = ~g.adjacency
    np.fill_diagonal(free, False)
    return np.argwhere(np.triu(free, k=1))


def non_edges(g):
    """Все пары {u, v} вне E в лексикографическом порядке."""
    return [(int(u), int(v)) for u, v in non_edge_array(g)]


def edges_within_subset(g, subset):
    """|E(S)|: число рёбер с обоими концами в S."""
    vertices = np.unique(np.asarray(list(subset), dtype=np.int64))
    for vertex in vertices:
        _check_vertex(g.n, vertex)
    if vertices.size < 2:
        return 0
    return int(g.adjacency[np.ix_(vertices, vertices)].sum()) // 2


def to_json(g):
    payload = {'n': g.n, 'edges': [list(edge) for edge in g.edges]}
    return json.dumps(payload, separators=(',', ':')) + '\n'


def from_json(text):
    try:
        payload = json.loads(text)
        n = payload['n']
        edges = [tuple(edge) for edge in payload['edges']]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParameterError(f'malformed graph fixture: {exc}') from exc
    if not isinstance(n, int) or any(
            len(edge) != 2 or not all(isinstance(x, int) for x in edge)
            for edge in edges):
        raise ParameterError('malformed graph fixture: non-integer entries')
    return Graph.from_edges(n, edges)
