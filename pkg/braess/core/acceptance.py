"""Набор приёмочных критериев для команды reproduce.

Профиль full повторяет настольные размеры экспериментов; smoke - те же
проверки на малых графах, чтобы прогнать весь конвейер за минуты.
Каждый критерий возвращает CriterionResult с детерминированным digest.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from django.conf import settings
from scipy import stats

from delocalization.concentration import (BernoulliSumSpec, conc_exact_1d,
                                          conc_monte_carlo_1d,
                                          lo_bound_check,
                                          rv_projection_check, window_maximum)
from delocalization.profiles import adjacency_profiles, second_profile
from graphs.graph import (GnpSpec, Graph, add_edge, make_rng,
                          non_edge_array, sample_gnp)
from paradox.estimators import (estimate_add, estimate_remove,
                                window_verdicts)
from paradox.predicates import dirichlet_form_plus
from spectral.decomposition import (ASCENDING, eig_sym, orthonormality_error,
                                    second_eigenvector)
from spectral.matrices import normalized_laplacian
from typicality.checks import (check_definition_typical, check_ev2_lower,
                               typical_frequency)

from .output import digest

logger = logging.getLogger(__name__)

FULL = 'full'
SMOKE = 'smoke'

PROFILES = {
    FULL: {
        1: {'instances': 300, 'n_min': 10, 'n_max': 200,
            'densities': [0.3, 0.5, 0.7]},
        2: {'graphs': 40, 'pairs': 250, 'n_min': 50, 'n_max': 500,
            'densities': [0.3, 0.5, 0.7]},
        3: {'n': 2000, 'p': 0.5, 'seeds': [0, 1, 2], 'pairs': 2000,
            'subset_samples': 200, 'required': 0.99},
        4: {'n': 1000, 'p': 0.5, 'seeds': list(range(20)), 'pairs': 2000,
            'threshold': 0.05},
        5: {'n': 1000, 'p': 0.5, 'seeds': list(range(20)), 'edges': 1000},
        6: {'n': 2000, 'p': 0.5, 'seeds': list(range(20)), 'scale': 0.1,
            'fraction': 0.4, 'required': 18},
        7: {'n': 1000, 'p': 0.5, 'seeds': list(range(20)), 'scale': 0.1,
            'fraction': 0.4, 'required': 18},
        8: {'n': 2000, 'p': 0.5, 'seeds': list(range(50)), 'required': 0.9,
            'subset_samples': 200, 'counterexample_n': 200},
        9: {'sizes': [25, 100, 400], 'p': 0.5, 'r': 1.0,
            'reference_c': 2.0, 'ratio_slack': 0.15},
        10: {'d': 3, 'n': 8, 'm': 50, 'p': 0.5, 't': 1.0,
             'trials': 10 ** 6, 'reference_c': 10.0, 'standard_errors': 4},
        11: {'matrices': 50, 'n_max': 500, 'complete_n': 5},
        12: {'repeat': [1, 9, 11]},
    },
    SMOKE: {
        1: {'instances': 30, 'n_min': 10, 'n_max': 60,
            'densities': [0.3, 0.5, 0.7]},
        2: {'graphs': 6, 'pairs': 60, 'n_min': 50, 'n_max': 120,
            'densities': [0.3, 0.5, 0.7]},
        3: {'n': 400, 'p': 0.5, 'seeds': [0], 'pairs': 200,
            'subset_samples': 20, 'required': 0.99},
        4: {'n': 200, 'p': 0.5, 'seeds': [0, 1, 2], 'pairs': 200,
            'threshold': 0.05},
        5: {'n': 200, 'p': 0.5, 'seeds': [0, 1, 2], 'edges': 200},
        6: {'n': 400, 'p': 0.5, 'seeds': [0, 1, 2], 'scale': 0.1,
            'fraction': 0.4, 'required': 3},
        7: {'n': 200, 'p': 0.5, 'seeds': [0, 1, 2], 'scale': 0.1,
            'fraction': 0.4, 'required': 3},
        8: {'n': 400, 'p': 0.5, 'seeds': list(range(5)), 'required': 0.9,
            'subset_samples': 20, 'counterexample_n': 200},
        9: {'sizes': [25, 100, 400], 'p': 0.5, 'r': 1.0,
            'reference_c': 2.0, 'ratio_slack': 0.15},
        10: {'d': 3, 'n': 8, 'm': 50, 'p': 0.5, 't': 1.0,
             'trials': 10 ** 5, 'reference_c': 10.0, 'standard_errors': 4},
        11: {'matrices': 10, 'n_max': 60, 'complete_n': 5},
        12: {'repeat': [1, 9, 11]},
    },
}


@dataclass(frozen=True)
class AcceptanceContext:
    seed: int = 0
    jobs: Optional[int] = None
    zero_tolerance: Optional[float] = None

    @property
    def tolerance(self):
        if self.zero_tolerance is None:
            return settings.ZERO_TOLERANCE
        return self.zero_tolerance


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: Dict = field(default_factory=dict)

    @property
    def digest(self):
        return digest({'number': self.number, 'name': self.name,
                       'passed': self.passed, 'detail': self.detail})

    def to_dict(self):
        return {
            'number': self.number,
            'name': self.name,
            'passed': self.passed,
            'digest': self.digest,
            'detail': self.detail,
        }


def _random_instance(rng, params, seed):
    n = int(rng.integers(params['n_min'], params['n_max'] + 1))
    p = float(rng.choice(params['densities']))
    return sample_gnp(GnpSpec(n, p, seed)), p


def dirichlet_identity(params, context):
    """Замкнутая форма fᵀ𝓛₊f против прямого произведения."""
    rng = make_rng(context.seed)
    worst, checked, attempt = 0.0, 0, 0
    while checked < params['instances'] and attempt < 10 * params['instances']:
        g, _ = _random_instance(rng, params, context.seed + attempt)
        attempt += 1
        pairs = non_edge_array(g)
        if g.isolated_vertices() or len(pairs) == 0:
            continue
        u, v = (int(x) for x in pairs[int(rng.integers(len(pairs)))])
        second = second_eigenvector(g)
        f = second.vector
        closed = dirichlet_form_plus(g, f, u, v, second.eigenvalue)
        direct = float(f @ normalized_laplacian(add_edge(g, u, v)).entries @ f)
        worst = max(worst, abs(closed - direct))
        checked += 1
    return {
        'passed': checked == params['instances'] and worst <= 1e-9,
        'instances': checked,
        'max_error': worst,
    }


def lemma_soundness(params, context):
    """Ни одного случая «лемма истинна, а щель не уменьшилась»."""
    rng = make_rng(context.seed)
    totals = {'pairs': 0, 'lemma_true': 0, 'failures': 0, 'degenerate': 0}
    for index in range(params['graphs']):
        g, p = _random_instance(rng, params, context.seed + index)
        if g.isolated_vertices():
            continue
        estimate = estimate_add(
            g, params['pairs'], seed=context.seed + index, p=p,
            jobs=context.jobs, zero_tolerance=context.tolerance)
        totals['pairs'] += estimate.sample_count
        totals['lemma_true'] += estimate.lemma_true_count
        totals['failures'] += estimate.lemma_failures
        totals['degenerate'] += estimate.degenerate_count
    return {'passed': totals['pairs'] > 0 and totals['failures'] == 0,
            **totals}


def window_claim(params, context):
    """Пары из окна на типичных графах уменьшают щель."""
    n, p = params['n'], params['p']
    total, decreased, skipped = 0, 0, []
    for seed in params['seeds']:
        g = sample_gnp(GnpSpec(n, p, seed))
        report = check_definition_typical(g, p, params['subset_samples'], seed)
        if not report.certified:
            skipped.append(seed)
            continue
        for verdict in window_verdicts(g, params['pairs'], seed, p,
                                       context.jobs):
            total += 1
            if verdict.gap_delta < 0:
                decreased += 1
            else:
                logger.error(
                    'window pair did not decrease the gap: n=%d seed=%d '
                    'pair=%s before=%.15g after=%.15g degenerate=%s',
                    n, seed, verdict.pair, verdict.gap_before,
                    verdict.gap_after, verdict.degenerate)
    fraction = decreased / total if total else None
    return {
        'passed': bool(total) and fraction >= params['required'],
        'window_pairs': total,
        'decreased': decreased,
        'fraction': fraction,
        'uncertified_seeds': skipped,
    }


def addition_fraction(params, context):
    n, p = params['n'], params['p']
    values = []
    for seed in params['seeds']:
        g = sample_gnp(GnpSpec(n, p, seed))
        estimate = estimate_add(g, params['pairs'], seed=seed, p=p,
                                jobs=context.jobs,
                                zero_tolerance=context.tolerance)
        values.append(estimate.a_minus)
    mean = float(np.mean(values))
    return {'passed': mean >= params['threshold'], 'mean_a_minus': mean,
            'a_minus': values}


def removal_checks(params, context):
    """r₊ > 0 встречается, λ₂(L) не растёт ни при одном удалении."""
    n, p = params['n'], params['p']
    increased, monotone, total = 0, 0, 0
    r_plus = []
    for seed in params['seeds']:
        g = sample_gnp(GnpSpec(n, p, seed))
        estimate = estimate_remove(g, params['edges'], seed=seed,
                                   jobs=context.jobs,
                                   zero_tolerance=context.tolerance)
        r_plus.append(estimate.r_plus)
        increased += estimate.plus_count
        monotone += estimate.laplacian_monotone_count
        total += estimate.sample_count
    return {
        'passed': increased > 0 and monotone == total,
        'removals': total,
        'increased': increased,
        'laplacian_monotone': monotone,
        'r_plus': r_plus,
    }


def second_delocalization(params, context):
    fractions = []
    for seed in params['seeds']:
        g = sample_gnp(GnpSpec(params['n'], params['p'], seed))
        fractions.append(
            second_profile(g, scale=params['scale']).fraction_above)
    good = sum(fraction >= params['fraction'] for fraction in fractions)
    return {'passed': good >= params['required'], 'seeds_passing': good,
            'fractions': fractions}


def adjacency_delocalization(params, context):
    minima = []
    for seed in params['seeds']:
        g = sample_gnp(GnpSpec(params['n'], params['p'], seed))
        profiles = adjacency_profiles(g, scale=params['scale'],
                                      jobs=context.jobs)
        minima.append(min(item.fraction_above for item in profiles))
    good = sum(value >= params['fraction'] for value in minima)
    return {'passed': good >= params['required'], 'seeds_passing': good,
            'min_fractions': minima}


def _complete_bipartite(n):
    half = n // 2
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[:half, half:] = True
    adjacency[half:, :half] = True
    return Graph.from_adjacency(adjacency)


def typicality_frequency(params, context):
    n, p = params['n'], params['p']
    fraction, _ = typical_frequency(n, p, params['seeds'],
                                    params['subset_samples'], context.jobs)
    size = params['counterexample_n']
    complete = check_definition_typical(Graph.complete(size), 0.1,
                                        params['subset_samples'], context.seed)
    bipartite = check_ev2_lower(_complete_bipartite(size), p)
    return {
        'passed': (fraction >= params['required'] and not complete.certified
                   and not bipartite.holds),
        'certified_fraction': fraction,
        'complete_refuted': not complete.certified,
        'bipartite_refuted': not bipartite.holds,
    }


def _binomial_window(m, p, r):
    pmf = stats.binom.pmf(np.arange(m + 1), m, p)
    return window_maximum(pmf, r)


def littlewood_offord_exact(params, context):
    p, r = params['p'], params['r']
    rows = []
    for m in params['sizes']:
        check = lo_bound_check(BernoulliSumSpec.ones(m, p), r,
                               reference_c=params['reference_c'])
        oracle = _binomial_window(m, p, r)
        rows.append({'m': m, 'conc': check.estimate.value,
                     'oracle_error': abs(check.estimate.value - oracle),
                     'implied_c': check.implied_c})
    ratios = [after['conc'] / before['conc']
              for before, after in zip(rows, rows[1:])]
    passed = (
        all(row['oracle_error'] <= 1e-12 for row in rows)
        and all(row['implied_c'] <= params['reference_c'] for row in rows)
        and all(abs(ratio - 0.5) <= 0.5 * params['ratio_slack']
                for ratio in ratios)
    )
    return {'passed': passed, 'instances': rows, 'ratios': ratios}


def projection_concentration(params, context):
    spec = BernoulliSumSpec.ones(params['m'], params['p'])
    check = rv_projection_check(
        params['d'], params['n'], spec, params['t'], params['trials'],
        seed=context.seed, reference_c=params['reference_c'],
        jobs=context.jobs)
    exact = conc_exact_1d(spec, params['t']).value
    sampled = conc_monte_carlo_1d(spec, params['t'], params['trials'],
                                  seed=context.seed, jobs=context.jobs)
    deviation = abs(sampled.value - exact)
    allowed = params['standard_errors'] * max(sampled.standard_error,
                                              1 / params['trials'])
    return {
        'passed': check.holds and check.estimate.value <= check.bound
        and deviation <= allowed,
        'conc': check.estimate.value,
        'fitted_c': check.fitted_c,
        'bound': check.bound,
        'one_dimensional_exact': exact,
        'one_dimensional_sampled': sampled.value,
        'standard_error': sampled.standard_error,
    }


def _solver_errors(matrix):
    decomposition = eig_sym(matrix, ASCENDING)
    scale = float(np.abs(matrix).max())
    return (
        float(np.abs(decomposition.reconstruct() - matrix).max()) / scale,
        orthonormality_error(decomposition),
        decomposition,
    )


def eigensolver_checks(params, context):
    rng = make_rng(context.seed)
    worst_reconstruction, worst_orthonormality = 0.0, 0.0
    for _ in range(params['matrices']):
        n = int(rng.integers(2, params['n_max'] + 1))
        raw = rng.standard_normal((n, n))
        reconstruction, orthonormality, _ = _solver_errors((raw + raw.T) / 2)
        worst_reconstruction = max(worst_reconstruction, reconstruction)
        worst_orthonormality = max(worst_orthonormality, orthonormality)
    size = params['complete_n']
    fixtures = {
        'complete': (Graph.complete(size),
                     [0.0] + [size / (size - 1)] * (size - 1)),
        'path': (Graph.from_edges(3, [(0, 1), (1, 2)]), [0.0, 1.0, 2.0]),
        'bipartite': (_complete_bipartite(6), [0.0, 1, 1, 1, 1, 2.0]),
    }
    fixture_errors = {}
    for name, (g, expected) in fixtures.items():
        values = eig_sym(normalized_laplacian(g)).eigenvalues
        fixture_errors[name] = float(np.abs(values - expected).max())
    passed = (
        worst_reconstruction <= 1e-10
        and worst_orthonormality <= settings.ORTHONORMALITY_TOLERANCE
        and all(error <= 1e-10 for error in fixture_errors.values())
    )
    return {
        'passed': passed,
        'max_reconstruction': worst_reconstruction,
        'max_orthonormality': worst_orthonormality,
        'fixture_errors': fixture_errors,
    }


def determinism(params, context, profile):
    """Повторный прогон выбранных критериев даёт те же digest."""
    mismatched = []
    for number in params['repeat']:
        first = run_criterion(number, profile, context)
        second = run_criterion(number, profile, context)
        if first.digest != second.digest:
            mismatched.append(number)
    return {'passed': not mismatched, 'repeated': params['repeat'],
            'mismatched': mismatched}


CRITERIA = {
    1: ('dirichlet_identity', dirichlet_identity),
    2: ('lemma_soundness', lemma_soundness),
    3: ('window_claim', window_claim),
    4: ('addition_fraction', addition_fraction),
    5: ('removal_checks', removal_checks),
    6: ('second_delocalization', second_delocalization),
    7: ('adjacency_delocalization', adjacency_delocalization),
    8: ('typicality_frequency', typicality_frequency),
    9: ('littlewood_offord_exact', littlewood_offord_exact),
    10: ('projection_concentration', projection_concentration),
    11: ('eigensolver_checks', eigensolver_checks),
    12: ('determinism', None),
}


def run_criterion(number, profile=FULL, context=None):
    context = context or AcceptanceContext()
    name, check = CRITERIA[number]
    params = PROFILES[profile][number]
    if check is None:
        detail = determinism(params, context, profile)
    else:
        detail = check(params, context)
    passed = bool(detail.pop('passed'))
    logger.info('criterion %d (%s): %s', number, name,
                'pass' if passed else 'FAIL')
    return CriterionResult(number, name, passed, detail)


def run_suite(criteria=None, profile=FULL, context=None):
    numbers = sorted(criteria) if criteria else sorted(CRITERIA)
    return [run_criterion(number, profile, context) for number in numbers]