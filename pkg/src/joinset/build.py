"""Tree construction helpers for benchmarks and tests.

The library's own bulk-build story is "insert repeatedly"; these helpers
exist so benchmarks and test fixtures can stand up large inputs quickly.
``build_from_sorted`` joins balanced halves, which is linear-time and valid
under every scheme; ``build_by_inserts`` is the slow reference path.
"""

from __future__ import annotations

from .joins import join_impl
from .setops import insert

__all__ = ["build_from_sorted", "build_by_inserts"]


def build_from_sorted(keys, cfg):
    """Build a valid tree from a strictly-increasing key sequence."""
    jn = join_impl(cfg)

    def rec(lo, hi):
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        return jn(rec(lo, mid), keys[mid], rec(mid + 1, hi))

    return rec(0, len(keys))


def build_by_inserts(keys, cfg):
    """Build by repeated insertion, in the order given."""
    t = None
    for k in keys:
        t = insert(t, k, cfg)
    return t
