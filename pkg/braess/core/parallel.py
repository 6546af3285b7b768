"""Пул потоков экспериментов: LAPACK и numpy отпускают GIL."""
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings


def resolve_jobs(jobs=None):
    jobs = settings.BRAESS_JOBS if jobs is None else jobs
    return max(1, int(jobs))


def parallel_map(func, items, jobs=None):
    """Список func(item) в порядке items, не зависящем от числа потоков."""
    items = list(items)
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))
