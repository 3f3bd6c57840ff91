"""Generic set algebra over join.

Everything here is scheme-agnostic: split, splitLast, join2, insert, delete
and the divide-and-conquer union/intersect/difference are written once
against the scheme's join.  The bulk operations recurse on both halves of the
pivot tree; with a :class:`joinset.parallel.Parallel` context the two halves
run as fork-join tasks, and with or without one the analytic span is
accounted as if every such pair ran in parallel.

When both operands are non-trivial and their key ranges do not overlap, the
bulk operations skip the recursion entirely: a disjoint union collapses to a
single join2, an intersection to the empty tree and a difference to its left
operand.  That is what makes barely-overlapping inputs (and the disjoint
extreme) almost free.
"""

from __future__ import annotations

from typing import NamedTuple

from .counters import CostCounters
from .joins import join_impl
from .tree import rank, tree_max, tree_min

__all__ = [
    "SplitResult",
    "RankTrace",
    "split",
    "split_last",
    "join2",
    "insert",
    "delete",
    "union",
    "intersect",
    "difference",
]

# Bulk operations probe for range-disjoint operands only above this size;
# below it the probe's comparisons cost more than the recursion saves.
FASTPATH_MIN_SIZE = 32

DEFAULT_CUTOFF = 1024


class SplitResult(NamedTuple):
    left: object
    found: bool
    right: object


class RankTrace:
    """Recorded (input ranks, output rank) tuples for the rank audit."""

    __slots__ = ("cfg", "joins", "splits", "unions")

    def __init__(self, cfg):
        self.cfg = cfg
        self.joins = []
        self.splits = []
        self.unions = []


def _traced_join(jn, cfg, trace):
    def traced(tl, k, tr, C=None):
        out = jn(tl, k, tr, C)
        trace.joins.append((rank(tl, cfg), rank(tr, cfg), rank(out, cfg)))
        return out

    return traced


def _bind(cfg, trace):
    jn = join_impl(cfg)
    if trace is not None:
        jn = _traced_join(jn, cfg, trace)
    return jn


# -- split family -------------------------------------------------------------

def _split(t, k, jn, C):
    if t is None:
        return None, False, None
    if C is not None:
        C.comparisons += 1
        C.split_steps += 1
        C.analytic_work += 2
        C.analytic_span += 2
    m = t.key
    if k == m:
        return t.left, True, t.right
    if k < m:
        ll, b, lr = _split(t.left, k, jn, C)
        return ll, b, jn(lr, m, t.right, C)
    rl, b, rr = _split(t.right, k, jn, C)
    return jn(t.left, m, rl, C), b, rr


def _split_last(t, jn, C):
    # structural walk down the right spine; no key comparisons
    if C is not None:
        C.split_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if t.right is None:
        return t.left, t.key
    t1, last = _split_last(t.right, jn, C)
    return jn(t.left, t.key, t1, C), last


def _join2(tl, tr, jn, C):
    if tl is None:
        return tr
    t1, last = _split_last(tl, jn, C)
    return jn(t1, last, tr, C)


def split(t, k, cfg, counters=None, trace=None):
    """Partition ``t`` into keys below ``k``, a presence flag, and keys above."""
    jn = _bind(cfg, trace)
    l, b, r = _split(t, k, jn, counters)
    if trace is not None:
        trace.splits.append((rank(t, cfg), rank(l, cfg), rank(r, cfg)))
    return SplitResult(l, b, r)


def split_last(t, cfg, counters=None):
    """Remove and return the maximum key: ``(t without max, max)``."""
    if t is None:
        raise ValueError("split_last() on an empty tree")
    return _split_last(t, _bind(cfg, None), counters)


def join2(tl, tr, cfg, counters=None):
    """Join without a middle key; all keys of ``tl`` must precede ``tr``."""
    if cfg.validate and tl is not None and tr is not None:
        if not (tree_max(tl) < tree_min(tr)):
            raise ValueError("join2() key order violated")
    return _join2(tl, tr, _bind(cfg, None), counters)


def insert(t, k, cfg, counters=None):
    """Set-insert: the returned tree contains ``k`` exactly once."""
    jn = _bind(cfg, None)
    l, _, r = _split(t, k, jn, counters)
    return jn(l, k, r, counters)


def delete(t, k, cfg, counters=None):
    """Set-delete: removing an absent key is a no-op on the key set."""
    jn = _bind(cfg, None)
    l, _, r = _split(t, k, jn, counters)
    return _join2(l, r, jn, counters)


# -- bulk operations ----------------------------------------------------------
#
# The recursion exposes the pivot (second) tree and splits the decomposed
# (first) tree by the pivot's root key.  Counter bookkeeping around the two
# recursive calls rewrites the span of the pair to max(left, right) + 1 and
# charges one work unit for the fork, whether or not a real task was spawned,
# so counters are identical at every worker count.

def _disjoint_sides(t1, t2, C):
    # 0: t1 entirely below t2, 1: entirely above, -1: ranges overlap
    if C is not None:
        C.comparisons += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if tree_max(t1) < tree_min(t2):
        return 0
    if C is not None:
        C.comparisons += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if tree_max(t2) < tree_min(t1):
        return 1
    return -1


def _fork(rec, l1, l2, r1, r2, jn, C, pool, cutoff, tr):
    """Run the two recursive calls, as real tasks when worthwhile.

    Returns ``(left, right, max_child_span)``.  A queued task that has not
    started by the time its result is needed is reclaimed and run inline, so
    workers never block on queued work and the pool cannot deadlock.
    """
    if (
        pool is not None
        and l2 is not None
        and r2 is not None
        and l2.size >= cutoff
        and r2.size >= cutoff
    ):
        C2 = CostCounters() if C is not None else None
        fut = pool.submit(rec, r1, r2, jn, C2, pool, cutoff, tr)
        if C is None:
            lt = rec(l1, l2, jn, None, pool, cutoff, tr)
            rt = rec(r1, r2, jn, None, pool, cutoff, tr) if fut.cancel() else fut.result()
            return lt, rt, 0
        s0 = C.analytic_span
        lt = rec(l1, l2, jn, C, pool, cutoff, tr)
        sl = C.analytic_span - s0
        if fut.cancel():
            rt = rec(r1, r2, jn, C, pool, cutoff, tr)
            sr = C.analytic_span - s0 - sl
        else:
            rt = fut.result()
            sr = C2.analytic_span
            C.comparisons += C2.comparisons
            C.join_descent_steps += C2.join_descent_steps
            C.split_steps += C2.split_steps
            C.rotations += C2.rotations
            C.forks += C2.forks
            C.analytic_work += C2.analytic_work
        return lt, rt, (sl if sl > sr else sr)
    if C is None:
        lt = rec(l1, l2, jn, None, pool, cutoff, tr)
        rt = rec(r1, r2, jn, None, pool, cutoff, tr)
        return lt, rt, 0
    s0 = C.analytic_span
    lt = rec(l1, l2, jn, C, pool, cutoff, tr)
    sl = C.analytic_span - s0
    rt = rec(r1, r2, jn, C, pool, cutoff, tr)
    sr = C.analytic_span - s0 - sl
    return lt, rt, (sl if sl > sr else sr)


def _union(t1, t2, jn, C, pool, cutoff, tr):
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    if t1.size >= FASTPATH_MIN_SIZE and t2.size >= FASTPATH_MIN_SIZE:
        side = _disjoint_sides(t1, t2, C)
        if side == 0:
            return _join2(t1, t2, jn, C)
        if side == 1:
            return _join2(t2, t1, jn, C)
    l2, k2, r2 = t2.left, t2.key, t2.right
    l1, b, r1 = _split(t1, k2, jn, C)
    if tr is not None:
        tr.splits.append((rank(t1, tr.cfg), rank(l1, tr.cfg), rank(r1, tr.cfg)))
    if C is None:
        lt, rt, _ = _fork(_union, l1, l2, r1, r2, jn, None, pool, cutoff, tr)
        out = jn(lt, k2, rt, C)
    else:
        s0 = C.analytic_span
        lt, rt, smax = _fork(_union, l1, l2, r1, r2, jn, C, pool, cutoff, tr)
        C.analytic_span = s0 + smax + 1
        C.analytic_work += 1
        C.forks += 1
        out = jn(lt, k2, rt, C)
    if tr is not None:
        tr.unions.append((rank(t1, tr.cfg), rank(t2, tr.cfg), rank(out, tr.cfg)))
    return out


def _intersect(t1, t2, jn, C, pool, cutoff, tr):
    if t1 is None or t2 is None:
        return None
    if t1.size >= FASTPATH_MIN_SIZE and t2.size >= FASTPATH_MIN_SIZE:
        if _disjoint_sides(t1, t2, C) >= 0:
            return None
    l2, k2, r2 = t2.left, t2.key, t2.right
    l1, b, r1 = _split(t1, k2, jn, C)
    if tr is not None:
        tr.splits.append((rank(t1, tr.cfg), rank(l1, tr.cfg), rank(r1, tr.cfg)))
    if C is None:
        lt, rt, _ = _fork(_intersect, l1, l2, r1, r2, jn, None, pool, cutoff, tr)
    else:
        s0 = C.analytic_span
        lt, rt, smax = _fork(_intersect, l1, l2, r1, r2, jn, C, pool, cutoff, tr)
        C.analytic_span = s0 + smax + 1
        C.analytic_work += 1
        C.forks += 1
    if b:
        return jn(lt, k2, rt, C)
    return _join2(lt, rt, jn, C)


def _difference(t1, t2, jn, C, pool, cutoff, tr):
    if t1 is None:
        return None
    if t2 is None:
        return t1
    if t1.size >= FASTPATH_MIN_SIZE and t2.size >= FASTPATH_MIN_SIZE:
        if _disjoint_sides(t1, t2, C) >= 0:
            return t1
    l2, k2, r2 = t2.left, t2.key, t2.right
    l1, b, r1 = _split(t1, k2, jn, C)
    if tr is not None:
        tr.splits.append((rank(t1, tr.cfg), rank(l1, tr.cfg), rank(r1, tr.cfg)))
    if C is None:
        lt, rt, _ = _fork(_difference, l1, l2, r1, r2, jn, None, pool, cutoff, tr)
    else:
        s0 = C.analytic_span
        lt, rt, smax = _fork(_difference, l1, l2, r1, r2, jn, C, pool, cutoff, tr)
        C.analytic_span = s0 + smax + 1
        C.analytic_work += 1
        C.forks += 1
    return _join2(lt, rt, jn, C)


def _run_bulk(rec, t1, t2, cfg, counters, parallel, trace):
    jn = _bind(cfg, trace)
    pool = None
    cutoff = DEFAULT_CUTOFF
    if parallel is not None:
        pool = parallel.executor
        cutoff = parallel.cutoff
    return rec(t1, t2, jn, counters, pool, cutoff, trace)


def union(t1, t2, cfg, counters=None, parallel=None, trace=None):
    """Keys of ``t1`` or ``t2``; when a key is in both, ``t2``'s copy is kept."""
    return _run_bulk(_union, t1, t2, cfg, counters, parallel, trace)


def intersect(t1, t2, cfg, counters=None, parallel=None, trace=None):
    """Keys present in both trees."""
    return _run_bulk(_intersect, t1, t2, cfg, counters, parallel, trace)


def difference(t1, t2, cfg, counters=None, parallel=None, trace=None):
    """Keys of ``t1`` that are not in ``t2``."""
    return _run_bulk(_difference, t1, t2, cfg, counters, parallel, trace)
