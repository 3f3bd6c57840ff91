"""Benchmark and verification command line.

Subcommands
-----------
gen      write newline-delimited float keys drawn from a distribution
bench    time union/intersect/difference on generated inputs, appending one
         CSV row per repeat (plus counters); results are checked against the
         oracle before any timing is reported
verify   replay randomized operation scripts against the oracle and the
         structural invariants
scaling  fix the larger input, sweep the smaller one over powers of four and
         report normalized comparison counts

Exit codes: 0 success, 1 verification violation, 2 bad flags, 3 I/O failure,
4 benchmark correctness-check failure.  The default seed comes from the
JOINSET_SEED environment variable when set.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import statistics
import sys
import time
from dataclasses import dataclass

from .build import build_from_sorted
from .counters import CostCounters
from .oracle import oracle_difference, oracle_intersect, oracle_union
from .parallel import DEFAULT_CUTOFF, Parallel
from .setops import difference, intersect, union
from .tree import SCHEMES, SchemeConfig, to_sorted_list, contains
from .verify import run_cross_scheme, run_trials
from .workload import WorkloadSpec, derive_seed, generate_keys, workload_pair

__all__ = ["main", "CSV_HEADER", "BenchRecord"]

CSV_HEADER = (
    "scheme,op,n,m,dist,sigma,threads,cutoff,repeat,millis,"
    "comparisons,join_steps,split_steps,rotations,analytic_span"
)

_OPS = {"union": union, "intersect": intersect, "difference": difference}

_ORACLES = {
    "union": oracle_union,
    "intersect": oracle_intersect,
    "difference": oracle_difference,
}

_DEFAULT_SEED = 20240421


@dataclass(frozen=True)
class BenchRecord:
    scheme: str
    op: str
    n: int
    m: int
    dist: str
    sigma: float | None
    threads: int
    cutoff: int
    repeat: int
    millis: float
    counters: CostCounters

    def row(self):
        c = self.counters
        return [
            self.scheme,
            self.op,
            self.n,
            self.m,
            self.dist,
            "" if self.sigma is None else repr(self.sigma),
            self.threads,
            self.cutoff,
            self.repeat,
            f"{self.millis:.3f}",
            c.comparisons,
            c.join_descent_steps,
            c.split_steps,
            c.rotations,
            c.analytic_span,
        ]


def _default_seed():
    env = os.environ.get("JOINSET_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return _DEFAULT_SEED


def _append_rows(path, records):
    try:
        new_file = not os.path.exists(path) or os.path.getsize(path) == 0
        with open(path, "a", newline="") as fh:
            writer = csv.writer(fh)
            if new_file:
                writer.writerow(CSV_HEADER.split(","))
            for rec in records:
                writer.writerow(rec.row())
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(3)


def _check_result(op, result, a_keys, b_keys, seed):
    """Oracle check; full when the problem is small, sampled otherwise."""
    if len(a_keys) * len(b_keys) <= 10**6:
        expected = _ORACLES[op](sorted(a_keys), sorted(b_keys))
        return to_sorted_list(result) == expected
    a_set, b_set = set(a_keys), set(b_keys)
    if op == "union":
        expected_size = len(a_set | b_set)
    elif op == "intersect":
        expected_size = len(a_set & b_set)
    else:
        expected_size = len(a_set - b_set)
    if (result.size if result is not None else 0) != expected_size:
        return False
    rng = random.Random(derive_seed(seed, 97))
    sample = rng.sample(a_keys, min(64, len(a_keys))) + rng.sample(
        b_keys, min(64, len(b_keys))
    )
    for k in sample:
        if op == "union":
            want = True
        elif op == "intersect":
            want = k in a_set and k in b_set
        else:
            want = k in a_set and k not in b_set
        if contains(result, k) != want:
            return False
    return True


# -- gen ------------------------------------------------------------------

def _cmd_gen(args):
    if args.dist == "uniform" and (args.mu is not None or args.sigma is not None):
        print("error: --mu/--sigma only apply to gaussian", file=sys.stderr)
        return 2
    mu = 0.0 if args.mu is None else args.mu
    sigma = 0.25 if args.sigma is None else args.sigma
    if args.dist == "gaussian" and sigma <= 0:
        print("error: --sigma must be positive", file=sys.stderr)
        return 2
    if args.n < 0:
        print("error: --n must be nonnegative", file=sys.stderr)
        return 2
    keys = generate_keys(args.dist, args.n, args.seed, mu, sigma)
    try:
        with open(args.out, "w") as fh:
            for k in keys:
                fh.write(repr(k))
                fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(keys)} keys to {args.out}")
    return 0


# -- bench ----------------------------------------------------------------

def _cmd_bench(args):
    if args.m > args.n:
        print("error: need n >= m", file=sys.stderr)
        return 2
    if args.threads < 1 or args.repeats < 1 or args.cutoff < 1:
        print("error: --threads, --repeats and --cutoff must be >= 1", file=sys.stderr)
        return 2
    sigma = args.sigma if args.dist == "gaussian" else None
    spec = WorkloadSpec(
        dist=args.dist,
        n=args.n,
        m=args.m,
        seed=args.seed,
        mu2=args.mu2,
        sigma=args.sigma if sigma is not None else 0.25,
    )
    cfg = SchemeConfig(args.scheme)
    a_keys, b_keys = workload_pair(spec)
    t1 = build_from_sorted(sorted(a_keys), cfg)
    t2 = build_from_sorted(sorted(b_keys), cfg)
    op_fn = _OPS[args.op]

    records = []
    with Parallel(workers=args.threads, cutoff=args.cutoff) as par:
        # warm-up, excluded from the CSV but still checked
        result = op_fn(t1, t2, cfg, counters=CostCounters(), parallel=par)
        if not _check_result(args.op, result, a_keys, b_keys, args.seed):
            print("error: result failed the oracle check", file=sys.stderr)
            return 4
        for rep in range(args.repeats):
            counters = CostCounters()
            start = time.perf_counter()
            result = op_fn(t1, t2, cfg, counters=counters, parallel=par)
            millis = (time.perf_counter() - start) * 1000.0
            if not _check_result(args.op, result, a_keys, b_keys, args.seed):
                print("error: result failed the oracle check", file=sys.stderr)
                return 4
            records.append(
                BenchRecord(
                    scheme=args.scheme,
                    op=args.op,
                    n=args.n,
                    m=args.m,
                    dist=args.dist,
                    sigma=sigma,
                    threads=args.threads,
                    cutoff=args.cutoff,
                    repeat=rep,
                    millis=millis,
                    counters=counters,
                )
            )
    _append_rows(args.csv, records)
    median = statistics.median(r.millis for r in records)
    print(
        f"{args.scheme} {args.op} n={args.n} m={args.m} threads={args.threads}: "
        f"median {median:.1f} ms over {args.repeats} repeats "
        f"({records[0].counters.comparisons} comparisons)"
    )
    return 0


# -- verify ---------------------------------------------------------------

def _cmd_verify(args):
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return 2
    schemes = SCHEMES if args.scheme == "all" else (args.scheme,)
    for scheme in schemes:
        violation = run_trials(SchemeConfig(scheme), args.trials, args.seed)
        if violation is not None:
            print(str(violation), file=sys.stderr)
            return 1
        print(f"{scheme}: {args.trials} trials ok")
    if args.scheme == "all":
        violation = run_cross_scheme(SchemeConfig, max(args.trials // 4, 1), args.seed)
        if violation is not None:
            print(str(violation), file=sys.stderr)
            return 1
        print("cross-scheme key sets agree")
    return 0


# -- scaling --------------------------------------------------------------

def _cmd_scaling(args):
    import math

    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 2
    cfg = SchemeConfig(args.scheme)
    op_fn = _OPS[args.op]
    big = generate_keys("uniform", args.n, derive_seed(args.seed, 1))
    t1 = build_from_sorted(sorted(big), cfg)
    records = []
    m = 1
    ms = []
    while m <= args.n:
        ms.append(m)
        m *= 4
    for m in ms:
        small = generate_keys("uniform", m, derive_seed(args.seed, 2))
        t2 = build_from_sorted(sorted(small), cfg)
        counters = CostCounters()
        start = time.perf_counter()
        result = op_fn(t1, t2, cfg, counters=counters)
        millis = (time.perf_counter() - start) * 1000.0
        if not _check_result(args.op, result, big, small, args.seed):
            print("error: result failed the oracle check", file=sys.stderr)
            return 4
        records.append(
            BenchRecord(
                scheme=args.scheme,
                op=args.op,
                n=args.n,
                m=m,
                dist="uniform",
                sigma=None,
                threads=1,
                cutoff=DEFAULT_CUTOFF,
                repeat=0,
                millis=millis,
                counters=counters,
            )
        )
        norm = counters.comparisons / (m * math.log2(args.n / m + 1))
        print(
            f"m={m}: comparisons={counters.comparisons} "
            f"normalized={norm:.3f} millis={millis:.1f}"
        )
    _append_rows(args.csv, records)
    return 0


# -- parser ---------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="joinset",
        description="Benchmarks and verification for join-based ordered sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a key file")
    p.add_argument("--dist", choices=("uniform", "gaussian"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="time one bulk operation")
    p.add_argument("--op", choices=tuple(_OPS), required=True)
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dist", choices=("uniform", "gaussian"), required=True)
    p.add_argument("--mu2", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=0.25)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--csv", required=True)
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("verify", help="randomized invariant and oracle checks")
    p.add_argument("--scheme", choices=SCHEMES + ("all",), default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("scaling", help="sweep the smaller input size")
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--op", choices=tuple(_OPS), default="union")
    p.add_argument("--n", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--csv", required=True)
    p.set_defaults(fn=_cmd_scaling)

    return parser


def main(argv=None):
    sys.setrecursionlimit(50000)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
