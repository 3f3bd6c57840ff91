"""Sorted-array reference implementation of the set algebra.

Ground truth for every tree operation in the test suites: plain linear
merges over strictly-increasing key lists, written for obviousness rather
than speed.  Inputs must already be sorted and duplicate-free.
"""

from __future__ import annotations

from bisect import bisect_left

__all__ = [
    "oracle_union",
    "oracle_intersect",
    "oracle_difference",
    "oracle_split",
]


def oracle_union(a, b):
    """Sorted merge keeping one copy of keys present in both."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            out.append(y)
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def oracle_intersect(a, b):
    """Keys present in both inputs."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            out.append(x)
            i += 1
            j += 1
    return out


def oracle_difference(a, b):
    """Keys of ``a`` not present in ``b``."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    return out


def oracle_split(a, k):
    """Binary-search partition of ``a`` around ``k``: (below, found, above)."""
    i = bisect_left(a, k)
    found = i < len(a) and a[i] == k
    return a[:i], found, a[i + 1 :] if found else a[i:]
