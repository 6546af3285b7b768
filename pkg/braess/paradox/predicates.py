"""Условия уменьшения спектральной щели при добавлении ребра {u, v}.

f - единичный второй собственный вектор 𝓛_G, λ₂ = λ₂(𝓛_G),
G₊ - граф G с добавленным ребром {u, v}.
"""
import math

import numpy as np
from django.conf import settings

from core.exceptions import PreconditionError
from spectral.decomposition import rayleigh_quotient, second_eigenvector
from spectral.matrices import normalized_laplacian


def _require_non_edge(g, u, v):
    if u == v or g.has_edge(u, v):
        raise PreconditionError(f'pair {{{u}, {v}}} must be a non-edge')


def _degree_weight(d):
    """(√(d+1) - √d) / √(d+1)."""
    return (math.sqrt(d + 1) - math.sqrt(d)) / math.sqrt(d + 1)


def _endpoints(g, f, u, v):
    return (float(f[u]), float(f[v]), int(g.degrees[u]), int(g.degrees[v]),
            int(g.degrees.sum()))


def _local_terms(f_u, f_v, d_u, d_v):
    correction = (_degree_weight(d_u) * f_u ** 2
                  + _degree_weight(d_v) * f_v ** 2)
    cross = 2 * f_u * f_v / math.sqrt((d_u + 1) * (d_v + 1))
    return correction, cross


def _terms(g, f, u, v):
    f_u, f_v, d_u, d_v, _ = _endpoints(g, f, u, v)
    return _local_terms(f_u, f_v, d_u, d_v)


def _projection(f_u, f_v, d_u, d_v, degree_sum):
    numerator = (
        f_u * (math.sqrt(d_u + 1) - math.sqrt(d_u))
        + f_v * (math.sqrt(d_v + 1) - math.sqrt(d_v))
    )
    return numerator / math.sqrt(2 + degree_sum)


def _eigenvalue_of(g, f, lambda2):
    if lambda2 is None:
        return rayleigh_quotient(normalized_laplacian(g), f)
    return lambda2


def dirichlet_form_plus(g, f, u, v, lambda2=None):
    """fᵀ𝓛_{G₊}f в замкнутой форме (через λ₂ и степени концов).

    Если λ₂ не передано, оно берётся как отношение Рэлея fᵀ𝓛_G f.
    """
    _require_non_edge(g, u, v)
    lambda2 = _eigenvalue_of(g, f, lambda2)
    correction, cross = _terms(g, f, u, v)
    return lambda2 + 2 * (1 - lambda2) * correction - cross


def projection_pf(g, f, u, v):
    """p_f = ⟨f, f₁⁺⟩, проекция f на верхний собственный вектор G₊."""
    _require_non_edge(g, u, v)
    return _projection(*_endpoints(g, f, u, v))


def lemma_inequality_sides(f_u, f_v, d_u, d_v, degree_sum, lambda2):
    """Левая и правая части условия леммы по локальным данным пары.

    degree_sum - сумма степеней G до добавления ребра.
    """
    correction, cross = _local_terms(f_u, f_v, d_u, d_v)
    pf = _projection(f_u, f_v, d_u, d_v, degree_sum)
    left = pf ** 2 * lambda2 + 2 * (1 - lambda2) * correction
    return left, cross


def lemma_inequality(f_u, f_v, d_u, d_v, degree_sum, lambda2):
    left, right = lemma_inequality_sides(
        f_u, f_v, d_u, d_v, degree_sum, lambda2)
    return left < right - settings.PREDICATE_MARGIN


def lemma_sides(g, f, u, v, lambda2):
    _require_non_edge(g, u, v)
    return lemma_inequality_sides(*_endpoints(g, f, u, v), lambda2)


def lemma_holds(g, f, u, v, lambda2):
    _require_non_edge(g, u, v)
    return lemma_inequality(*_endpoints(g, f, u, v), lambda2)


def lemma_predicate(g, u, v, second=None):
    """Достаточное условие λ₂(𝓛_{G₊}) < λ₂(𝓛_G) для произвольного графа."""
    _require_non_edge(g, u, v)
    if second is None:
        second = second_eigenvector(g)
    return lemma_holds(g, second.vector, u, v, second.eigenvalue)


def variational_upper_bound(g, f, u, v, lambda2=None):
    """Верхняя оценка λ₂(𝓛_{G₊}) ≤ fᵀ𝓛_{G₊}f / (1 - p_f²)."""
    lambda2 = _eigenvalue_of(g, f, lambda2)
    pf = projection_pf(g, f, u, v)
    return dirichlet_form_plus(g, f, u, v, lambda2) / (1 - pf ** 2)


def projection_smallness_bound(f_u, f_v, n, p):
    """(np)^{-3/2}(|f(u)| + |f(v)|) - оценка |p_f| на типичных графах."""
    return (n * p) ** -1.5 * (abs(f_u) + abs(f_v))


def projection_is_small(g, f, u, v, p):
    """|p_f| не превосходит (np)^{-3/2}(|f(u)| + |f(v)|)."""
    pf = projection_pf(g, f, u, v)
    return abs(pf) <= projection_smallness_bound(
        float(f[u]), float(f[v]), g.n, p)


def sufficient_predicate(f_u, f_v, n, p):
    """8(np)^{-2} + 32(np)^{-1/2}(f(u)² + f(v)²) < f(u)f(v)."""
    np_ = n * p
    left = 8 * np_ ** -2 + 32 * np_ ** -0.5 * (f_u ** 2 + f_v ** 2)
    return left < f_u * f_v - settings.SUFFICIENT_MARGIN


def intermediate_predicate(f_u, f_v, n, p, lambda2):
    """8(np)^{-2} + 4(1 - λ₂)(f(u)² + f(v)²) < f(u)f(v)."""
    np_ = n * p
    left = 8 * np_ ** -2 + 4 * (1 - lambda2) * (f_u ** 2 + f_v ** 2)
    return left < f_u * f_v - settings.SUFFICIENT_MARGIN


def in_window(value, n):
    return n ** -0.51 <= abs(value) <= n ** -0.49


def window_predicate(f_u, f_v, n):
    return in_window(f_u, n) and in_window(f_v, n) and f_u * f_v > 0


def window_sets(f, n):
    """J₊ и J₋: вершины с ±f(i) в окне [n^{-0.51}, n^{-0.49}]."""
    f = np.asarray(f)
    inside = (np.abs(f) >= n ** -0.51) & (np.abs(f) <= n ** -0.49)
    return np.flatnonzero(inside & (f > 0)), np.flatnonzero(inside & (f < 0))
