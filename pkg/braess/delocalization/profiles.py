"""Профили модулей компонент собственных векторов."""
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from django.conf import settings

from core.exceptions import ParameterError
from core.parallel import parallel_map
from spectral.decomposition import GraphSpectra

logger = logging.getLogger(__name__)

MATRIX_ADJACENCY = 'A'
MATRIX_NORMALIZED = 'Ahat'
MATRIX_LAPLACIAN = 'L_norm'


def histogram_edges():
    low, high = settings.HISTOGRAM_RANGE
    return np.logspace(
        math.log10(low), math.log10(high), settings.HISTOGRAM_BINS + 1)


@dataclass(frozen=True)
class DelocalizationProfile:
    vector_id: Tuple[str, int]
    n: int
    threshold: float
    fraction_above: float
    linf_ratio: float
    lq_norms: Dict[str, float]
    histogram: List[int] = field(repr=False)
    degenerate: bool = False

    def to_dict(self):
        return {
            'vector_id': list(self.vector_id),
            'n': self.n,
            'threshold': self.threshold,
            'fraction_above': self.fraction_above,
            'linf_ratio': self.linf_ratio,
            'lq_norms': self.lq_norms,
            'histogram': self.histogram,
            'degenerate': self.degenerate,
        }

    def histogram_rows(self):
        edges = histogram_edges()
        return [
            (float(edges[k]), float(edges[k + 1]), count)
            for k, count in enumerate(self.histogram)
        ]


def threshold_for(n, c_exponent=None, scale=None):
    """1/(√n (log n)^C) либо scale/√n."""
    if scale is not None:
        return scale / math.sqrt(n)
    if c_exponent is None:
        raise ParameterError('either an exponent or a scale is required')
    if n < 2 and c_exponent != 0:
        raise ParameterError(
            'log-scaled threshold needs n >= 2; pass an explicit scale')
    return 1 / (math.sqrt(n) * math.log(n) ** c_exponent)


def fraction_above(v, threshold):
    # относительный допуск на округление при сравнении с порогом
    cut = threshold * (1 - settings.SIGN_TIE_TOLERANCE)
    return float(np.count_nonzero(np.abs(v) >= cut)) / v.size


def profile(v, c_exponent=None, scale=None, vector_id=('vector', 0),
            degenerate=False):
    v = np.asarray(v, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if v.ndim != 1 or abs(norm - 1) > settings.UNIT_NORM_TOLERANCE:
        raise ParameterError(f'profile needs a unit vector, norm is {norm}')
    n = v.size
    threshold = threshold_for(n, c_exponent, scale)
    magnitudes = np.abs(v)
    low, high = settings.HISTOGRAM_RANGE
    counts, _ = np.histogram(
        np.clip(math.sqrt(n) * magnitudes, low, high), bins=histogram_edges())
    return DelocalizationProfile(
        vector_id=tuple(vector_id),
        n=n,
        threshold=threshold,
        fraction_above=fraction_above(v, threshold),
        linf_ratio=float(magnitudes.max() * math.sqrt(n)),
        lq_norms={
            '2': norm,
            '4': float(np.sum(magnitudes ** 4) ** 0.25),
            'inf': float(magnitudes.max()),
        },
        histogram=[int(count) for count in counts],
        degenerate=degenerate,
    )


def _profile_column(decomposition, kind, c_exponent, scale, k):
    return profile(
        decomposition.vector(k), c_exponent, scale, (kind, k),
        degenerate=decomposition.is_degenerate(k))


def adjacency_profiles(g, c_exponent=None, scale=None, spectra=None,
                       jobs=None):
    """Профили всех v_j(A), j >= 2 (собственные значения по убыванию)."""
    spectra = spectra or GraphSpectra(g)
    run = partial(_profile_column, spectra.adjacency, MATRIX_ADJACENCY,
                  c_exponent, scale)
    return parallel_map(run, range(2, g.n + 1), jobs)


def second_profile(g, c_exponent=None, scale=None, spectra=None):
    """Профиль v₂(Â) - второго собственного вектора 𝓛."""
    spectra = spectra or GraphSpectra(g)
    decomposition = spectra.normalized_adjacency
    result = _profile_column(
        decomposition, MATRIX_NORMALIZED, c_exponent, scale, 2)
    if result.degenerate:
        logger.warning('λ₂(Â) is degenerate on n=%d; profile is basis-dependent',
                       g.n)
    return result


def extended_indices(decomposition, n):
    """Индексы собственных значений 𝓛 с |1 - λ| >= (1 - λ₂)/log n, кроме λ₁."""
    values = decomposition.eigenvalues
    cutoff = (1 - values[1]) / math.log(n)
    return [
        k + 1 for k in range(1, n) if abs(1 - values[k]) >= cutoff
    ]


def extended_profiles(g, c_exponent=None, scale=None, spectra=None,
                      jobs=None):
    spectra = spectra or GraphSpectra(g)
    decomposition = spectra.normalized_laplacian
    run = partial(_profile_column, decomposition, MATRIX_LAPLACIAN,
                  c_exponent, scale)
    return parallel_map(run, extended_indices(decomposition, g.n), jobs)


class SweepResult(NamedTuple):
    rows: List[Tuple[float, float]]
    smallest_c: Optional[float]


def c_sweep(v, exponents, eta=0.0):
    """Таблица (C, fraction_above) и наименьшее C с долей >= 1/2 - η."""
    v = np.asarray(v, dtype=np.float64)
    rows = [
        (float(c), fraction_above(v, threshold_for(v.size, c)))
        for c in sorted(exponents)
    ]
    reached = [c for c, fraction in rows if fraction >= 0.5 - eta]
    return SweepResult(rows, reached[0] if reached else None)


class LinfCheck(NamedTuple):
    holds: bool
    worst_ratio: float
    bound: float
    worst_index: int


def linf_family_check(g, c_exponent, spectra=None):
    """Все собственные векторы A: ‖v‖_∞ <= (log n)^C/√n."""
    spectra = spectra or GraphSpectra(g)
    vectors = spectra.adjacency.eigenvectors
    n = g.n
    ratios = np.abs(vectors).max(axis=0) * math.sqrt(n)
    worst = int(np.argmax(ratios))
    bound = math.log(n) ** c_exponent
    return LinfCheck(
        holds=bool(ratios[worst] <= bound),
        worst_ratio=float(ratios[worst]),
        bound=bound,
        worst_index=worst + 1,
    )
