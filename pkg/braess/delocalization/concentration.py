"""Функция концентрации conc(Z, t) = max_q P(‖Z - q‖₂ <= t).

Одномерный случай с целыми весами считается точно (свёртка pmf);
многомерный - методом Монте-Карло с центрами-кандидатами в точках выборки,
что может только занизить conc.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from django.conf import settings

from core.exceptions import ParameterError
from core.parallel import parallel_map
from graphs.graph import make_rng

logger = logging.getLogger(__name__)

EXACT = 'exact_convolution'
MONTE_CARLO = 'monte_carlo'


@dataclass(frozen=True)
class BernoulliSumSpec:
    """X = Σ a_i β_i, β_i ~ Ber(p) независимы."""
    weights: tuple
    p: float

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ParameterError(f'p must lie in (0, 1), got {self.p}')
        object.__setattr__(
            self, 'weights', tuple(float(a) for a in self.weights))

    @classmethod
    def ones(cls, m, p=0.5):
        return cls((1.0,) * m, p)

    @property
    def large_weight_count(self):
        """m = #{i : |a_i| >= 1}."""
        return sum(abs(a) >= 1 for a in self.weights)

    @property
    def bound_k(self):
        """K: |X| <= Σ|a_i| почти наверное."""
        return float(sum(abs(a) for a in self.weights))

    def sample(self, rng, trials):
        """Равные веса складываются в биномиальные слагаемые."""
        values, counts = np.unique(self.weights, return_counts=True)
        total = np.zeros(trials)
        for weight, count in zip(values, counts):
            total += weight * rng.binomial(int(count), self.p, size=trials)
        return total


@dataclass(frozen=True)
class ConcEstimate:
    t: float
    value: float
    method: str
    trials: int = 0
    seed: Optional[int] = None
    standard_error: float = 0.0

    def to_dict(self):
        return asdict(self)


def exact_pmf(spec):
    """Точная pmf X на целой решётке: (offset, вероятности)."""
    weights = np.asarray(spec.weights)
    if weights.size > settings.EXACT_WEIGHTS_LIMIT:
        raise ParameterError(
            f'{weights.size} weights exceed the exact limit; '
            'use monte_carlo instead')
    if not np.all(np.mod(weights, 1) == 0):
        raise ParameterError(
            'exact concentration needs integer weights; '
            'use monte_carlo instead')
    steps = weights.astype(np.int64)
    support = int(np.abs(steps).sum()) + 1
    if support > settings.EXACT_SUPPORT_LIMIT:
        raise ParameterError(
            f'support of size {support} is too large; '
            'use monte_carlo instead')
    offset = int(steps[steps < 0].sum())
    pmf = np.zeros(support)
    pmf[0] = 1.0
    reach = 0
    for step in steps:
        if step == 0:
            continue
        shifted = np.zeros_like(pmf)
        if step > 0:
            shifted[step:reach + step + 1] = pmf[:reach + 1]
            pmf = (1 - spec.p) * pmf + spec.p * shifted
        else:
            # отрицательный вес сдвигает всё распределение вправо на |a|
            shifted[-step:reach - step + 1] = pmf[:reach + 1]
            pmf = spec.p * pmf + (1 - spec.p) * shifted
        reach += abs(int(step))
    return offset, pmf[:reach + 1]


def window_maximum(pmf, t):
    """Наибольшая масса ⌊2t⌋ + 1 подряд идущих точек решётки."""
    width = int(math.floor(2 * t)) + 1
    if width >= pmf.size:
        return float(pmf.sum())
    cumulative = np.concatenate(([0.0], np.cumsum(pmf)))
    return float((cumulative[width:] - cumulative[:-width]).max())


def conc_exact_1d(spec, t):
    if t < 0:
        raise ParameterError(f'radius must be non-negative, got {t}')
    _, pmf = exact_pmf(spec)
    return ConcEstimate(t=t, value=min(window_maximum(pmf, t), 1.0),
                        method=EXACT)


def _chunk_sizes(trials):
    chunk = settings.MONTE_CARLO_CHUNK
    sizes = [chunk] * (trials // chunk)
    if trials % chunk:
        sizes.append(trials % chunk)
    return sizes


def chunked_samples(sampler, trials, seed, jobs=None):
    """Выборки по фиксированным кускам с зёрнами SeedSequence(seed).spawn."""
    sizes = _chunk_sizes(trials)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    parts = parallel_map(
        lambda item: sampler(np.random.Generator(np.random.PCG64(item[0])),
                             item[1]),
        list(zip(children, sizes)), jobs)
    return np.concatenate(parts)


def conc_monte_carlo_1d(spec, t, trials=10 ** 6, seed=0, jobs=None):
    """Эмпирическая conc: лучшее окно [x, x + 2t] с левым концом в выборке."""
    samples = np.sort(chunked_samples(spec.sample, trials, seed, jobs))
    right = np.searchsorted(samples, samples + 2 * t, side='right')
    value = float((right - np.arange(samples.size)).max()) / trials
    return ConcEstimate(
        t=t, value=value, method=MONTE_CARLO, trials=trials, seed=seed,
        standard_error=math.sqrt(value * (1 - value) / trials))


def conc_estimate(spec, t, method=EXACT, trials=10 ** 6, seed=0, jobs=None):
    if method == EXACT:
        return conc_exact_1d(spec, t)
    if method == MONTE_CARLO:
        return conc_monte_carlo_1d(spec, t, trials, seed, jobs)
    raise ParameterError(f'unknown method {method!r}')


@dataclass(frozen=True)
class LittlewoodOffordCheck:
    estimate: ConcEstimate
    m: int
    denominator: float
    implied_c: float
    bound: float

    @property
    def holds(self):
        return self.estimate.value <= self.bound

    def to_dict(self):
        payload = asdict(self)
        payload['estimate'] = self.estimate.to_dict()
        payload['holds'] = self.holds
        return payload


def lo_bound_check(spec, r, method=EXACT, trials=10 ** 6, seed=0,
                   reference_c=None, jobs=None):
    """conc(X, r) <= C r/√(m p (1 - p)); implied_C - наименьшее такое C."""
    if r < 1:
        raise ParameterError(f'radius r must be >= 1, got {r}')
    m = spec.large_weight_count
    if m == 0:
        raise ParameterError('no weight has |a_i| >= 1')
    reference_c = (settings.LO_REFERENCE_CONSTANT if reference_c is None
                   else reference_c)
    estimate = conc_estimate(spec, r, method, trials, seed, jobs)
    denominator = math.sqrt(m * spec.p * (1 - spec.p))
    return LittlewoodOffordCheck(
        estimate=estimate,
        m=m,
        denominator=denominator,
        implied_c=estimate.value * denominator / r,
        bound=reference_c * r / denominator,
    )


def random_isometry(rng, n, d):
    """T: ℝ^d -> ℝ^n с ортонормированными столбцами."""
    q, r = np.linalg.qr(rng.standard_normal((n, d)))
    return q * np.sign(np.diag(r))


def random_unit(rng, n):
    vector = rng.standard_normal(n)
    return vector / np.linalg.norm(vector)


@dataclass(frozen=True)
class ProjectionCheck:
    estimate: ConcEstimate
    d: int
    n: int
    q: float
    k: float
    fitted_c: float
    bound: float
    reference_c: float

    @property
    def holds(self):
        return self.fitted_c <= self.reference_c

    def to_dict(self):
        payload = asdict(self)
        payload['estimate'] = self.estimate.to_dict()
        payload['holds'] = self.holds
        return payload


def ball_mass(points, counts, trials, radius, candidates):
    """Наибольшая доля выборки в шаре радиуса radius с центром-кандидатом."""
    order = np.argsort(-counts, kind='stable')[:candidates]
    best = 0
    for index in order:
        inside = np.linalg.norm(points - points[index], axis=1) <= radius
        best = max(best, int(counts[inside].sum()))
    return best / trials


def rv_projection_check(d, n, spec, t, trials=10 ** 6, seed=0,
                        embedding=None, normal=None, reference_c=None,
                        jobs=None):
    """conc(P_H T X, t√d) против (Cq)^d (K/t + 1)√d, C подбирается.

    X = (X_1..X_d) с независимыми копиями суммы Бернулли spec;
    embedding (n×d) и normal (нормаль к H) по умолчанию случайные.
    """
    if not 1 <= d < n:
        raise ParameterError(f'need 1 <= d < n, got d={d}, n={n}')
    if t <= 0:
        raise ParameterError(f'radius must be positive, got {t}')
    reference_c = (settings.RV_REFERENCE_CONSTANT if reference_c is None
                   else reference_c)
    rng = make_rng(seed)
    embedding = (random_isometry(rng, n, d) if embedding is None
                 else np.asarray(embedding, dtype=np.float64))
    normal = random_unit(rng, n) if normal is None else np.asarray(
        normal, dtype=np.float64)
    normal = normal / np.linalg.norm(normal)
    projector = np.eye(n) - np.outer(normal, normal)

    def sampler(generator, size):
        return np.column_stack([spec.sample(generator, size)
                                for _ in range(d)])

    samples = chunked_samples(sampler, trials, seed, jobs)
    unique, counts = np.unique(samples, axis=0, return_counts=True)
    points = unique @ (projector @ embedding).T
    value = ball_mass(points, counts, trials, t * math.sqrt(d),
                      settings.RV_CANDIDATE_CENTERS)
    estimate = ConcEstimate(
        t=t * math.sqrt(d), value=value, method=MONTE_CARLO, trials=trials,
        seed=seed, standard_error=math.sqrt(value * (1 - value) / trials))
    q = conc_exact_1d(spec, t).value
    k = spec.bound_k
    spread = (k / t + 1) * math.sqrt(d)
    fitted_c = (value / spread) ** (1 / d) / q
    logger.info('projection d=%d n=%d: conc %.4g, q %.4g, fitted C %.3g',
                d, n, value, q, fitted_c)
    return ProjectionCheck(
        estimate=estimate,
        d=d,
        n=n,
        q=q,
        k=k,
        fitted_c=fitted_c,
        bound=(reference_c * q) ** d * spread,
        reference_c=reference_c,
    )
