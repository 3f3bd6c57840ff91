"""Randomized self-checks driving every operation against the oracle.

A trial script is a deterministic function of the seed: a sequence of
operations with pre-drawn keys.  Replaying one script under each balancing
scheme must produce identical key sets throughout (the schemes only differ
in shape), and after every step the live tree must pass check_valid, agree
with a sorted-list mirror maintained by the oracle, and respect the rank
bounds of split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .build import build_from_sorted
from .counters import CostCounters
from .joins import join_impl
from .oracle import (
    oracle_difference,
    oracle_intersect,
    oracle_split,
    oracle_union,
)
from .setops import (
    delete,
    difference,
    insert,
    intersect,
    join2,
    split,
    split_last,
    union,
)
from .tree import check_valid, contains, rank, to_sorted_list

__all__ = ["Violation", "make_script", "run_trials", "run_cross_scheme"]

_OPS = (
    "insert",
    "delete",
    "contains",
    "split",
    "split_last",
    "join2",
    "union",
    "intersect",
    "difference",
)


@dataclass(frozen=True)
class Violation:
    scheme: str
    seed: int
    step: int
    op: str
    detail: str

    def __str__(self):
        return (
            f"violation at step {self.step} ({self.op}, scheme={self.scheme}): "
            f"{self.detail} [reproduce with seed={self.seed}]"
        )


def make_script(trials, seed, key_space=512, bulk_max=64):
    """Pre-draw the operation sequence so every scheme replays the same one."""
    rng = random.Random(seed)
    script = []
    for _ in range(trials):
        op = rng.choice(_OPS)
        if op in ("union", "intersect", "difference"):
            other = sorted(
                float(k)
                for k in rng.sample(range(key_space), rng.randrange(bulk_max + 1))
            )
            script.append((op, other))
        else:
            script.append((op, float(rng.randrange(key_space))))
    return script


def _step(cfg, jn, t, mirror, op, arg):
    """Apply one scripted op; returns (tree, mirror) or raises AssertionError."""
    if op == "insert":
        t = insert(t, arg, cfg)
        lo, found, hi = oracle_split(mirror, arg)
        mirror = lo + [arg] + hi
    elif op == "delete":
        t = delete(t, arg, cfg)
        lo, found, hi = oracle_split(mirror, arg)
        mirror = lo + hi
    elif op == "contains":
        got = contains(t, arg)
        want = oracle_split(mirror, arg)[1]
        assert got == want, f"contains({arg}) = {got}, oracle says {want}"
    elif op == "split":
        counters = CostCounters()
        l, found, r = split(t, arg, cfg, counters=counters)
        lo, want_found, hi = oracle_split(mirror, arg)
        assert found == want_found, f"split flag {found}, oracle {want_found}"
        assert to_sorted_list(l) == lo, "split left keys diverge from oracle"
        assert to_sorted_list(r) == hi, "split right keys diverge from oracle"
        rt = rank(t, cfg)
        assert rank(l, cfg) <= rt and rank(r, cfg) <= rt, "split rank bound"
        for piece in (l, r):
            rep = check_valid(piece, cfg)
            assert rep.ok, f"split piece invalid: {rep}"
        t = jn(l, arg, r) if found else join2(l, r, cfg)
        mirror = lo + [arg] + hi if found else lo + hi
    elif op == "split_last":
        if t is not None:
            t2, last = split_last(t, cfg)
            assert last == mirror[-1], f"split_last key {last}, oracle {mirror[-1]}"
            rep = check_valid(t2, cfg)
            assert rep.ok, f"split_last remainder invalid: {rep}"
            t = insert(t2, last, cfg)
    elif op == "join2":
        # rebuild the tree from a random split point, exercising join2
        if mirror:
            pivot = mirror[len(mirror) // 2]
            l, found, r = split(t, pivot, cfg)
            t = join2(l, r, cfg)
            lo, _, hi = oracle_split(mirror, pivot)
            mirror = lo + hi
    else:
        other_keys = arg
        other = build_from_sorted(other_keys, cfg)
        rep = check_valid(other, cfg)
        assert rep.ok, f"built operand invalid: {rep}"
        if op == "union":
            t = union(t, other, cfg)
            mirror = oracle_union(mirror, other_keys)
        elif op == "intersect":
            t = intersect(t, other, cfg)
            mirror = oracle_intersect(mirror, other_keys)
        else:
            t = difference(t, other, cfg)
            mirror = oracle_difference(mirror, other_keys)
    rep = check_valid(t, cfg)
    assert rep.ok, f"tree invalid after {op}: {rep}"
    assert to_sorted_list(t) == mirror, f"keys diverge from oracle after {op}"
    return t, mirror


def run_trials(cfg, trials, seed):
    """Replay a scripted workload; returns the first Violation or None."""
    jn = join_impl(cfg)
    script = make_script(trials, seed)
    t, mirror = None, []
    for step, (op, arg) in enumerate(script):
        try:
            t, mirror = _step(cfg, jn, t, mirror, op, arg)
        except AssertionError as exc:
            return Violation(cfg.scheme, seed, step, op, str(exc))
    return None


def run_cross_scheme(make_cfg, trials, seed):
    """Replay one script under all four schemes; key sets must agree.

    ``make_cfg`` maps a scheme name to its SchemeConfig.  Returns the first
    Violation or None.
    """
    script = make_script(trials, seed)
    states = {}
    for scheme in ("avl", "rb", "wb", "treap"):
        cfg = make_cfg(scheme)
        states[scheme] = (cfg, join_impl(cfg), None, [])
    for step, (op, arg) in enumerate(script):
        baseline = None
        for scheme, (cfg, jn, t, mirror) in states.items():
            try:
                t, mirror = _step(cfg, jn, t, mirror, op, arg)
            except AssertionError as exc:
                return Violation(scheme, seed, step, op, str(exc))
            states[scheme] = (cfg, jn, t, mirror)
            if baseline is None:
                baseline = mirror
            elif mirror != baseline:
                return Violation(
                    scheme, seed, step, op, "key sets diverge between schemes"
                )
    return None
