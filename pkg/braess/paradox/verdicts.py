"""Точный пересчёт λ₂ после возмущения - эталон для всех предикатов."""
import logging
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from django.conf import settings

from core.exceptions import DegenerateInputError, ParameterError
from graphs.graph import add_edge, remove_edge
from spectral.decomposition import (GraphSpectra, laplacian_gap,
                                    spectral_gap)

from .predicates import (lemma_holds, projection_is_small,
                         sufficient_predicate, variational_upper_bound,
                         window_predicate)

logger = logging.getLogger(__name__)

ADDITION = 'addition'
REMOVAL = 'removal'
KINDS = (ADDITION, REMOVAL)


@dataclass(frozen=True)
class PerturbationVerdict:
    pair: Tuple[int, int]
    kind: str
    gap_before: float
    gap_after: float
    gap_delta: float
    degenerate: bool
    lemma_predicate: Optional[bool] = None
    sufficient_predicate: Optional[bool] = None
    window_predicate: Optional[bool] = None
    projection_small: Optional[bool] = None
    variational_bound: Optional[float] = None
    laplacian_gap_before: Optional[float] = None
    laplacian_gap_after: Optional[float] = None
    laplacian_monotone: Optional[bool] = None
    error: Optional[str] = None
    zero_tolerance: Optional[float] = None

    @property
    def tolerance(self):
        if self.zero_tolerance is None:
            return settings.ZERO_TOLERANCE
        return self.zero_tolerance

    @property
    def decreased(self):
        return self.gap_delta < -self.tolerance

    @property
    def increased(self):
        return self.gap_delta > self.tolerance

    @property
    def lemma_failure(self):
        """Лемма обещала уменьшение щели, а точный пересчёт его не видит."""
        return (
            bool(self.lemma_predicate)
            and not self.degenerate
            and self.gap_delta >= -settings.PREDICATE_MARGIN
        )

    def to_dict(self):
        payload = asdict(self)
        payload['pair'] = list(self.pair)
        return payload


def exact_gap_change(g, u, v, kind, spectra=None, p=None, batch=False,
                     zero_tolerance=None):
    """Вердикт для пары {u, v}: предикаты и точное изменение λ₂(𝓛).

    spectra - разложения G, общие для серии вердиктов одного графа;
    p - параметр G(n, p) для достаточного условия (по умолчанию плотность
    рёбер G). В пакетном режиме изолированная после удаления вершина
    записывается в вердикт, а не выбрасывается. zero_tolerance - допуск
    классификации decreased/increased (по умолчанию ZERO_TOLERANCE).
    """
    if kind not in KINDS:
        raise ParameterError(f'unknown perturbation kind {kind!r}')
    u, v = (u, v) if u < v else (v, u)
    spectra = spectra or GraphSpectra(g)
    second = spectra.second
    gap_before = second.eigenvalue
    if kind == ADDITION:
        return _addition(g, u, v, spectra, p, zero_tolerance)
    perturbed = remove_edge(g, u, v)
    error = None
    try:
        gap_after = spectral_gap(perturbed)
    except DegenerateInputError as exc:
        if not batch:
            raise
        # граф с изолированной вершиной несвязен
        gap_after, error = 0.0, str(exc)
    lap_before = spectra.combinatorial_gap
    lap_after = laplacian_gap(perturbed)
    monotone = lap_after <= lap_before + settings.MONOTONE_TOLERANCE
    if not monotone:
        logger.error(
            'combinatorial gap increased after removing %s: %.12g -> %.12g',
            (u, v), lap_before, lap_after)
    return PerturbationVerdict(
        pair=(u, v),
        kind=REMOVAL,
        gap_before=gap_before,
        gap_after=gap_after,
        gap_delta=gap_after - gap_before,
        degenerate=second.degenerate,
        laplacian_gap_before=lap_before,
        laplacian_gap_after=lap_after,
        laplacian_monotone=monotone,
        error=error,
        zero_tolerance=zero_tolerance,
    )


def _addition(g, u, v, spectra, p, zero_tolerance):
    second = spectra.second
    f, lambda2 = second.vector, second.eigenvalue
    if p is None:
        p = 2 * g.edge_count / (g.n * (g.n - 1))
    f_u, f_v = float(f[u]), float(f[v])
    gap_after = spectral_gap(add_edge(g, u, v))
    verdict = PerturbationVerdict(
        pair=(u, v),
        kind=ADDITION,
        gap_before=lambda2,
        gap_after=gap_after,
        gap_delta=gap_after - lambda2,
        degenerate=second.degenerate,
        lemma_predicate=lemma_holds(g, f, u, v, lambda2),
        sufficient_predicate=sufficient_predicate(f_u, f_v, g.n, p),
        window_predicate=window_predicate(f_u, f_v, g.n),
        projection_small=projection_is_small(g, f, u, v, p),
        variational_bound=variational_upper_bound(g, f, u, v, lambda2),
        zero_tolerance=zero_tolerance,
    )
    if verdict.lemma_failure:
        logger.error(
            'lemma predicate held but gap did not decrease: n=%d pair=%s '
            'before=%.15g after=%.15g', g.n, verdict.pair,
            verdict.gap_before, verdict.gap_after)
    return verdict
