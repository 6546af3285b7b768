"""Сертификация типичности графа G(n, p) с численными запасами.

Каждая проверка возвращает PropertyCheck: margin - знаковое расстояние до
границы, holds = margin >= 0. Дискрепансия проверяется на выборке
подмножеств, поэтому может опровергнуть свойство, но не доказать его.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List

import numpy as np
from django.conf import settings

from core.exceptions import DegenerateInputError
from core.parallel import parallel_map
from graphs.graph import GnpSpec, edges_within_subset, make_rng, sample_gnp
from spectral.decomposition import GraphSpectra, eigvals_sym
from spectral.matrices import adjacency_matrix, normalized_adjacency

logger = logging.getLogger(__name__)

DEFINITION_PROPERTIES = (
    'degrees', 'degree_sum', 'eigenvalues_A', 'eigenvalues_Ahat',
    'discrepancy_sampled',
)
MATRIX_ADJACENCY = 'A'
MATRIX_NORMALIZED = 'Ahat'


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    margin: float
    detail: Dict = field(default_factory=dict)

    @property
    def holds(self):
        return bool(self.margin >= 0)

    def to_dict(self):
        return {
            'name': self.name,
            'holds': self.holds,
            'margin': self.margin if math.isfinite(self.margin) else None,
            'detail': self.detail,
        }


def _failed(name, reason):
    return PropertyCheck(name, -math.inf, {'error': reason})


@dataclass
class TypicalityReport:
    n: int
    p: float
    subset_sample_count: int
    seed: int
    properties: List[PropertyCheck] = field(default_factory=list)

    def __getitem__(self, name):
        for check in self.properties:
            if check.name == name:
                return check
        raise KeyError(name)

    @property
    def certified(self):
        """Все пять свойств определения типичности выполнены."""
        return all(
            check.holds for check in self.properties
            if check.name in DEFINITION_PROPERTIES
        )

    def to_dict(self):
        return {
            'n': self.n,
            'p': self.p,
            'seed': self.seed,
            'subset_sample_count': self.subset_sample_count,
            'certified': self.certified,
            'properties': [check.to_dict() for check in self.properties],
        }


def _ones(n):
    return np.full(n, 1 / math.sqrt(n))


def sample_subsets(n, count, seed):
    """Случайные подмножества из одного потока: меньшая выборка - префикс."""
    rng = make_rng(seed)
    for _ in range(count):
        size = int(rng.integers(0, n + 1))
        yield np.sort(rng.choice(n, size=size, replace=False))


def structured_subsets(g):
    order = np.argsort(-g.degrees, kind='stable')
    half = g.n // 2
    return {
        'all': np.arange(g.n),
        'high_degree_half': np.sort(order[:half]),
        'low_degree_half': np.sort(order[half:]),
    }


def _window_margin(value, low, high):
    return min(value - low, high - value)


def check_degrees(g, p):
    n, log_n = g.n, math.log(g.n)
    spread = log_n * math.sqrt(n * p)
    low, high = n * p - spread, n * p + spread
    margins = np.minimum(g.degrees - low, high - g.degrees)
    worst = int(np.argmin(margins))
    total = int(g.degrees.sum())
    return [
        PropertyCheck('degrees', float(margins[worst]), {
            'window': [low, high],
            'worst_vertex': worst,
            'worst_degree': int(g.degrees[worst]),
        }),
        PropertyCheck('degree_sum', _window_margin(
            total, n * n * p - n * log_n, n * n * p + n * log_n), {
            'degree_sum': total,
            'window': [n * n * p - n * log_n, n * n * p + n * log_n],
        }),
    ]


def check_adjacency_eigenvalues(g, p, spectra):
    n = g.n
    values = spectra.adjacency.eigenvalues
    top_margin = _window_margin(
        values[0], n * p - math.log(n) * math.sqrt(n),
        n * p + math.log(n) * math.sqrt(n))
    bulk = float(np.abs(values[1:]).max()) if n > 1 else 0.0
    bulk_bound = 3 * math.sqrt(n * p * (1 - p))
    return PropertyCheck(
        'eigenvalues_A', float(min(top_margin, bulk_bound - bulk)), {
            'lambda_1': float(values[0]),
            'max_abs_rest': bulk,
            'rest_bound': bulk_bound,
        })


def check_normalized_eigenvalues(g, p, spectra):
    try:
        values = spectra.normalized_adjacency.eigenvalues
    except DegenerateInputError as exc:
        return _failed('eigenvalues_Ahat', str(exc))
    top_error = abs(values[0] - 1)
    bulk = float(np.abs(values[1:]).max()) if g.n > 1 else 0.0
    bulk_bound = 8 / math.sqrt(g.n * p)
    margin = min(settings.EV1_AHAT_TOLERANCE - top_error, bulk_bound - bulk)
    return PropertyCheck('eigenvalues_Ahat', float(margin), {
        'lambda_1': float(values[0]),
        'max_abs_rest': bulk,
        'rest_bound': bulk_bound,
    })


def check_discrepancy(g, p, subset_samples, seed):
    bound = g.n ** 1.5
    labelled = list(structured_subsets(g).items()) + [
        (f'sample_{index}', subset)
        for index, subset in enumerate(
            sample_subsets(g.n, subset_samples, seed))
    ]
    worst_label, worst_size, worst = None, 0, -1.0
    for label, subset in labelled:
        inside = edges_within_subset(g, subset)
        deviation = abs(inside - p * math.comb(len(subset), 2))
        if deviation > worst:
            worst_label, worst_size, worst = label, len(subset), deviation
    return PropertyCheck('discrepancy_sampled', float(bound - worst), {
        'worst_subset': worst_label,
        'worst_subset_size': worst_size,
        'worst_deviation': worst,
        'bound': bound,
        'subsets_checked': len(labelled),
    })


def check_definition_typical(g, p, subset_samples=200, seed=0, spectra=None):
    """Свойства 1-3 определения типичного графа."""
    spectra = spectra or GraphSpectra(g)
    report = TypicalityReport(g.n, p, subset_samples, seed)
    report.properties.extend(check_degrees(g, p))
    report.properties.append(check_adjacency_eigenvalues(g, p, spectra))
    report.properties.append(check_normalized_eigenvalues(g, p, spectra))
    report.properties.append(check_discrepancy(g, p, subset_samples, seed))
    return report


def check_evec_proximity(g, p, spectra=None):
    """‖v₁(A) - 1⃗‖ и ‖v₁(Â) - 1⃗‖ против 2log(n)/√(np) и (2/p)log(n)/√n."""
    spectra = spectra or GraphSpectra(g)
    n, ones = g.n, _ones(g.n)
    bound_a = 2 * math.log(n) / math.sqrt(n * p)
    distance_a = float(np.linalg.norm(spectra.adjacency.vector(1) - ones))
    checks = [PropertyCheck('evec_proximity_A', bound_a - distance_a, {
        'distance': distance_a, 'bound': bound_a})]
    try:
        top = spectra.normalized_adjacency.vector(1)
    except DegenerateInputError as exc:
        checks.append(_failed('evec_proximity_Ahat', str(exc)))
        return checks
    bound_hat = 2 / p * math.log(n) / math.sqrt(n)
    distance_hat = float(np.linalg.norm(top - ones))
    checks.append(PropertyCheck(
        'evec_proximity_Ahat', bound_hat - distance_hat, {
            'distance': distance_hat, 'bound': bound_hat}))
    return checks


def projected_rows(matrix, subset):
    """Строки S оператора Q_S P_S M; остальные строки нулевые."""
    rows = matrix[subset, :]
    return rows - rows.mean(axis=0)


def projection_norm(matrix, subset):
    """‖Q_S P_S M‖₂ через спектр матрицы Грама B Bᵀ."""
    if len(subset) == 0:
        return 0.0
    block = projected_rows(matrix, subset)
    gram = block @ block.T
    return math.sqrt(max(float(eigvals_sym(gram)[-1]), 0.0))


def check_projection_norms(g, p, subset_samples=50, seed=0):
    n = g.n
    subsets = [np.arange(n)] + list(sample_subsets(n, subset_samples, seed))
    bounds = {
        MATRIX_ADJACENCY: 2 * math.sqrt(n / p) * math.log(n),
        MATRIX_NORMALIZED: 2 / p * math.log(n) / math.sqrt(n),
    }
    matrices = {MATRIX_ADJACENCY: adjacency_matrix(g).entries}
    checks = []
    try:
        matrices[MATRIX_NORMALIZED] = normalized_adjacency(g).entries
    except DegenerateInputError as exc:
        checks.append(_failed('projection_norm_Ahat', str(exc)))
    for kind, matrix in matrices.items():
        norms = [projection_norm(matrix, subset) for subset in subsets]
        worst = int(np.argmax(norms))
        checks.append(PropertyCheck(
            f'projection_norm_{kind}', bounds[kind] - norms[worst], {
                'worst_norm': norms[worst],
                'worst_subset_size': len(subsets[worst]),
                'bound': bounds[kind],
                'subsets_checked': len(subsets),
            }))
    checks.sort(key=lambda check: check.name)
    return checks


def _trial_vector(rng, n, alpha):
    """Единичный x с ⟨x, 1⃗⟩ = alpha."""
    ones = _ones(n)
    z = rng.standard_normal(n)
    z -= (z @ ones) * ones
    z /= np.linalg.norm(z)
    return alpha * ones + math.sqrt(1 - alpha ** 2) * z


def check_normalization_approx(g, p, trial_vectors=100, seed=0):
    """‖Q_S P_S Âx - (1/np) Q_S P_S Ax‖ против p^{-5/2}(log²n + α√n log n)/n."""
    n = g.n
    try:
        hat = normalized_adjacency(g).entries
    except DegenerateInputError as exc:
        return _failed('normalization_approx', str(exc))
    adjacency = adjacency_matrix(g).entries
    difference = hat - adjacency / (n * p)
    log_n = math.log(n)
    alphas = (0.0, min(log_n / math.sqrt(n), 1.0))
    rng = make_rng(seed)
    worst_ratio, worst_margin, worst_fallback = 0.0, math.inf, math.inf
    for trial in range(trial_vectors):
        alpha = alphas[trial % 2]
        x = _trial_vector(rng, n, alpha)
        subset = np.sort(rng.choice(n, size=int(rng.integers(1, n + 1)),
                                    replace=False))
        left = float(np.linalg.norm(
            projected_rows(difference, subset) @ x))
        scale = p ** -2.5 * (log_n ** 2 + alpha * math.sqrt(n) * log_n) / n
        worst_margin = min(
            worst_margin, settings.NORMALIZATION_CONSTANT * scale - left)
        worst_fallback = min(
            worst_fallback,
            settings.NORMALIZATION_PROOF_CONSTANT * scale - left)
        worst_ratio = max(worst_ratio, left / scale)
    return PropertyCheck('normalization_approx', float(worst_margin), {
        'trials': trial_vectors,
        'worst_ratio': worst_ratio,
        'constant': settings.NORMALIZATION_CONSTANT,
        'proof_constant': settings.NORMALIZATION_PROOF_CONSTANT,
        'fallback_margin': float(worst_fallback),
        'fallback_holds': bool(worst_fallback >= 0),
    })


def check_ev2_lower(g, p, spectra=None):
    """λ₂(Â) >= slack * (1 - p)/(16√(np)), slack вместо (1 - o(1))."""
    spectra = spectra or GraphSpectra(g)
    try:
        lambda2 = spectra.normalized_adjacency.value(2)
    except DegenerateInputError as exc:
        return _failed('ev2_lower_bound', str(exc))
    bound = settings.EV2_LOWER_SLACK * (1 - p) / (16 * math.sqrt(g.n * p))
    return PropertyCheck('ev2_lower_bound', lambda2 - bound, {
        'lambda_2': lambda2,
        'bound': bound,
        'slack': settings.EV2_LOWER_SLACK,
    })


def default_alpha(n, p):
    return math.log(n) / (n * p) ** 0.125


def check_small_entry_mass(g, p, alpha=None, matrix=MATRIX_NORMALIZED,
                           spectra=None):
    """‖P_S v₂‖ >= (1/3)(1 - log(n)/(α⁴ λ₂ np)), S = {i : |v₂(i)| < α}.

    Вариант для A (matrix='A') использует те же константы и помечен
    как экспериментальный.
    """
    spectra = spectra or GraphSpectra(g)
    n = g.n
    alpha = default_alpha(n, p) if alpha is None else alpha
    try:
        decomposition = (
            spectra.adjacency if matrix == MATRIX_ADJACENCY
            else spectra.normalized_adjacency)
    except DegenerateInputError as exc:
        return _failed('small_entry_mass', str(exc))
    lambda2, v = decomposition.value(2), decomposition.vector(2)
    detail = {
        'alpha': alpha,
        'matrix': matrix,
        'lambda_2': lambda2,
        'degenerate': decomposition.is_degenerate(2),
        'experimental': matrix == MATRIX_ADJACENCY,
    }
    if lambda2 <= 0:
        detail['error'] = 'non-positive second eigenvalue'
        return PropertyCheck('small_entry_mass', -math.inf, detail)
    small = np.abs(v) < alpha
    mass = float(np.linalg.norm(v[small]))
    if alpha > 0:
        bound = (1 - math.log(n) / (alpha ** 4 * lambda2 * n * p)) / 3
    else:
        # S пусто, оценка пуста
        bound = -math.inf
    detail.update({'mass': mass, 'bound': bound,
                   'small_entries': int(small.sum())})
    return PropertyCheck('small_entry_mass', mass - bound, detail)


def certify(g, p, subset_samples=200, seed=0, extended=True,
            trial_vectors=100, alpha=None, jobs=None):
    """Полный отчёт: пять свойств определения и расширенные проверки."""
    spectra = GraphSpectra(g)
    try:
        spectra.normalized_adjacency
    except DegenerateInputError:
        logger.warning('graph has isolated vertices; Â checks will fail')
    spectra.adjacency
    tasks = [
        partial(check_definition_typical, g, p, subset_samples, seed,
                spectra),
    ]
    if extended:
        tasks += [
            partial(check_evec_proximity, g, p, spectra),
            partial(check_projection_norms, g, p,
                    min(subset_samples, 50), seed),
            partial(check_normalization_approx, g, p, trial_vectors, seed),
            partial(check_ev2_lower, g, p, spectra),
            partial(check_small_entry_mass, g, p, alpha,
                    MATRIX_NORMALIZED, spectra),
        ]
    results = parallel_map(lambda task: task(), tasks, jobs)
    report = results[0]
    for result in results[1:]:
        if isinstance(result, PropertyCheck):
            report.properties.append(result)
        else:
            report.properties.extend(result)
    for check in report.properties:
        if not check.holds:
            logger.warning('n=%d seed=%d: %s fails with margin %.4g',
                           g.n, seed, check.name, check.margin)
    return report


def typical_frequency(n, p, seeds, subset_samples=200, jobs=None):
    """Доля сертифицированных графов G(n, p) по списку зёрен."""
    def run(seed):
        g = sample_gnp(GnpSpec(n, p, seed))
        return check_definition_typical(g, p, subset_samples, seed).certified

    certified = parallel_map(run, seeds, jobs)
    return sum(certified) / len(certified), certified
