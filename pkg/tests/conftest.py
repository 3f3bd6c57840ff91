import random
import sys

import pytest

from joinset import SchemeConfig, build_from_sorted

sys.setrecursionlimit(50000)

ALL_SCHEMES = ("avl", "rb", "wb", "treap")


@pytest.fixture(params=ALL_SCHEMES)
def cfg(request):
    return SchemeConfig(request.param)


def tree_of(keys, cfg):
    """Tree over the given keys (any order, duplicates collapsed)."""
    return build_from_sorted(sorted(set(keys)), cfg)


def random_sorted_floats(rng, size, lo=0, hi=None):
    """Strictly increasing floats drawn from an integer grid."""
    if hi is None:
        hi = lo + 4 * size + 4
    population = range(int(lo), int(hi))
    return sorted(float(x) for x in rng.sample(population, min(size, len(population))))


def pattern_pair(rng, pattern, na, nb):
    """Two sorted key lists with a prescribed overlap pattern."""
    if pattern == "identical":
        a = random_sorted_floats(rng, na)
        return a, list(a)
    if pattern == "disjoint":
        a = random_sorted_floats(rng, na, 0, 3 * na + 3)
        b = random_sorted_floats(rng, nb, 3 * na + 10, 3 * na + 10 + 3 * nb + 3)
        return a, b
    if pattern == "nested":
        a = [3.0 * i for i in range(na)]
        lo = 3.0 * (na // 4)
        b = sorted(lo + float(x) for x in rng.sample(range(max(3 * na // 2, nb)), nb))
        return a, b
    if pattern == "interleaved":
        a = [2.0 * i for i in range(na)]
        b = [2.0 * i + 1.0 for i in range(nb)]
        return a, b
    span = 4 * max(na, nb) + 4
    a = sorted(float(x) for x in rng.sample(range(span), na))
    b = sorted(float(x) for x in rng.sample(range(span), nb))
    return a, b


PATTERNS = ("random", "disjoint", "nested", "identical", "interleaved")
