"""Benchmark input generation.

Keys are 64-bit floats drawn from a uniform [0, 1) or Gaussian distribution.
Collisions are resampled so each generated set has exactly the requested
size, and everything is a pure function of the seed, so benchmark inputs are
reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

__all__ = ["WorkloadSpec", "generate_keys", "workload_pair", "derive_seed"]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class WorkloadSpec:
    """Recipe for one benchmark input pair.

    ``n`` is the larger set, ``m`` the smaller.  For Gaussian inputs the
    first set is centred on ``mu1`` and the second on ``mu2`` with a shared
    ``sigma`` (the overlap knob).  Uniform inputs ignore the means.
    """

    dist: str
    n: int
    m: int
    seed: int
    mu1: float = 0.0
    mu2: float = 1.0
    sigma: float = 0.25

    def __post_init__(self):
        if self.dist not in ("uniform", "gaussian"):
            raise ValueError(f"unknown distribution {self.dist!r}")
        if not (self.n >= self.m >= 0):
            raise ValueError("need n >= m >= 0")
        if self.dist == "gaussian" and not (self.sigma > 0):
            raise ValueError("sigma must be positive")
        for mu in (self.mu1, self.mu2):
            if not math.isfinite(mu):
                raise ValueError("mean must be finite")


def derive_seed(seed, stream):
    """Independent 64-bit stream seed derived from (seed, stream index)."""
    x = ((seed & _MASK64) ^ (stream * 0x9E3779B97F4A7C15)) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def generate_keys(dist, n, seed, mu=0.0, sigma=0.25):
    """Generate ``n`` distinct finite float keys; duplicates are resampled."""
    rng = random.Random(seed)
    seen = set()
    out = []
    if dist == "uniform":
        draw = rng.random
    elif dist == "gaussian":
        if not (sigma > 0):
            raise ValueError("sigma must be positive")

        def draw():
            return rng.gauss(mu, sigma)

    else:
        raise ValueError(f"unknown distribution {dist!r}")
    while len(out) < n:
        k = draw()
        # NaN has no place in a total order; gauss() cannot produce one from
        # finite parameters, but keep the guard next to the draw.
        if k != k or k in seen:
            continue
        seen.add(k)
        out.append(k)
    return out


def workload_pair(spec: WorkloadSpec):
    """The two key sets described by ``spec``, as unsorted lists."""
    a = generate_keys(spec.dist, spec.n, derive_seed(spec.seed, 1), spec.mu1, spec.sigma)
    b = generate_keys(spec.dist, spec.m, derive_seed(spec.seed, 2), spec.mu2, spec.sigma)
    return a, b
