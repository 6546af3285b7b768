"""Оценки a₋, a₊ (добавление) и r₋, r₊ (удаление) по выборке пар."""
import logging
import math
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import List, Optional

import numpy as np
from django.conf import settings

from core.exceptions import ParameterError
from core.parallel import parallel_map
from graphs.graph import make_rng, non_edge_array
from spectral.decomposition import GraphSpectra

from .predicates import window_sets
from .verdicts import ADDITION, REMOVAL, exact_gap_change

logger = logging.getLogger(__name__)


@dataclass
class ParadoxEstimate:
    kind: str
    sample_count: int
    zero_tolerance: float
    seed: int
    minus_count: int = 0
    plus_count: int = 0
    zero_count: int = 0
    a_minus: Optional[float] = None
    a_plus: Optional[float] = None
    a_zero: Optional[float] = None
    r_minus: Optional[float] = None
    r_plus: Optional[float] = None
    r_zero: Optional[float] = None
    degenerate_count: int = 0
    lemma_true_count: int = 0
    lemma_failures: int = 0
    sufficient_true_count: int = 0
    sufficient_without_lemma: int = 0
    window_true_count: int = 0
    window_decreased_count: int = 0
    laplacian_monotone_count: int = 0
    isolated_count: int = 0
    verdicts: List = field(default_factory=list, repr=False)

    def to_dict(self):
        payload = asdict(self)
        payload.pop('verdicts')
        return payload


def _tolerance(value):
    return settings.ZERO_TOLERANCE if value is None else value


def sample_pairs(pairs, sample_size, seed):
    """Равномерная выборка без возвращения; порядок пар сохраняется."""
    if sample_size is None or sample_size >= len(pairs):
        return pairs
    chosen = make_rng(seed).choice(len(pairs), size=sample_size, replace=False)
    chosen.sort()
    return pairs[chosen]


def _verdicts(g, pairs, kind, p, jobs, zero_tolerance=None):
    spectra = GraphSpectra(g)
    # общее разложение G считается до раздачи пар потокам
    spectra.second
    if kind == REMOVAL:
        spectra.combinatorial_gap
    run = partial(_one_verdict, g, kind=kind, spectra=spectra, p=p,
                  zero_tolerance=zero_tolerance)
    return parallel_map(run, [tuple(map(int, pair)) for pair in pairs], jobs)


def _one_verdict(g, pair, kind, spectra, p, zero_tolerance):
    return exact_gap_change(
        g, pair[0], pair[1], kind, spectra=spectra, p=p, batch=True,
        zero_tolerance=zero_tolerance)


def _counts(verdicts):
    minus = sum(verdict.decreased for verdict in verdicts)
    plus = sum(verdict.increased for verdict in verdicts)
    return minus, plus, len(verdicts) - minus - plus


def estimate_add(g, sample_size=None, seed=0, p=None, jobs=None,
                 zero_tolerance=None):
    zero_tolerance = _tolerance(zero_tolerance)
    pairs = non_edge_array(g)
    if len(pairs) == 0:
        raise ParameterError('graph has no non-edges to add')
    pairs = sample_pairs(pairs, sample_size, seed)
    verdicts = _verdicts(g, pairs, ADDITION, p, jobs, zero_tolerance)
    minus, plus, zero = _counts(verdicts)
    total = len(verdicts)
    estimate = ParadoxEstimate(
        kind=ADDITION,
        sample_count=total,
        zero_tolerance=zero_tolerance,
        seed=seed,
        minus_count=minus,
        plus_count=plus,
        zero_count=zero,
        a_minus=minus / total,
        a_plus=plus / total,
        a_zero=zero / total,
        verdicts=verdicts,
    )
    for verdict in verdicts:
        estimate.degenerate_count += verdict.degenerate
        estimate.lemma_true_count += bool(verdict.lemma_predicate)
        estimate.lemma_failures += verdict.lemma_failure
        estimate.sufficient_true_count += bool(verdict.sufficient_predicate)
        estimate.sufficient_without_lemma += bool(
            verdict.sufficient_predicate and not verdict.lemma_predicate)
        if verdict.window_predicate:
            estimate.window_true_count += 1
            estimate.window_decreased_count += verdict.gap_delta < 0
    logger.info(
        'additions n=%d seed=%d: a- %.4f a+ %.4f a0 %.4f over %d pairs',
        g.n, seed, estimate.a_minus, estimate.a_plus, estimate.a_zero, total)
    if estimate.lemma_failures:
        logger.error('%d lemma failures on n=%d seed=%d',
                     estimate.lemma_failures, g.n, seed)
    return estimate


def estimate_remove(g, sample_size=None, seed=0, jobs=None,
                    zero_tolerance=None):
    """r₊ - доля рёбер, удаление которых увеличивает щель; r₋ = 1 - r₊."""
    zero_tolerance = _tolerance(zero_tolerance)
    pairs = g.edge_array()
    if len(pairs) == 0:
        raise ParameterError('graph has no edges to remove')
    pairs = sample_pairs(pairs, sample_size, seed)
    verdicts = _verdicts(g, pairs, REMOVAL, None, jobs, zero_tolerance)
    minus, plus, zero = _counts(verdicts)
    total = len(verdicts)
    estimate = ParadoxEstimate(
        kind=REMOVAL,
        sample_count=total,
        zero_tolerance=zero_tolerance,
        seed=seed,
        minus_count=minus,
        plus_count=plus,
        zero_count=zero,
        r_minus=(total - plus) / total,
        r_plus=plus / total,
        r_zero=zero / total,
        verdicts=verdicts,
    )
    for verdict in verdicts:
        estimate.degenerate_count += verdict.degenerate
        estimate.laplacian_monotone_count += bool(verdict.laplacian_monotone)
        estimate.isolated_count += verdict.error is not None
    logger.info(
        'removals n=%d seed=%d: r+ %.4f r- %.4f (zero %.4f) over %d edges',
        g.n, seed, estimate.r_plus, estimate.r_minus, estimate.r_zero, total)
    return estimate


@dataclass(frozen=True)
class WindowBound:
    j_plus: int
    j_minus: int
    window_fraction: float
    a_minus_lower_bound: float

    def to_dict(self):
        return asdict(self)


def window_lower_bound(g, p, spectra=None):
    """Нижняя оценка a₋ через пары внутри J₊ и внутри J₋."""
    spectra = spectra or GraphSpectra(g)
    n = g.n
    j_plus, j_minus = window_sets(spectra.second.vector, n)
    inside = (
        math.comb(len(j_plus), 2) + math.comb(len(j_minus), 2)
    )
    bound = (
        ((1 - p) * inside - 2 * n ** 1.5)
        / ((1 - p) * math.comb(n, 2) + n ** 1.5)
    )
    return WindowBound(
        j_plus=len(j_plus),
        j_minus=len(j_minus),
        window_fraction=(len(j_plus) + len(j_minus)) / n,
        a_minus_lower_bound=bound,
    )


def window_pairs(g, spectra=None):
    """Не-рёбра внутри J₊ и внутри J₋, где window_predicate истинен."""
    spectra = spectra or GraphSpectra(g)
    pairs = []
    for subset in window_sets(spectra.second.vector, g.n):
        subset = sorted(subset)
        for index, u in enumerate(subset):
            for v in subset[index + 1:]:
                if not g.adjacency[u, v]:
                    pairs.append((u, v))
    pairs.sort()
    return pairs


def window_verdicts(g, sample_size=None, seed=0, p=None, jobs=None):
    """Точные вердикты для выборки пар из окна."""
    spectra = GraphSpectra(g)
    pairs = window_pairs(g, spectra)
    if not pairs:
        return []
    chosen = sample_pairs(np.asarray(pairs), sample_size, seed)
    return _verdicts(g, chosen, ADDITION, p, jobs)
