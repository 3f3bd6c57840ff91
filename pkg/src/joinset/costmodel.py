"""Measured operations and rank auditing.

These wrappers turn the asymptotic claims about the algorithms into numbers:
``measured_union`` returns the result together with its counters (span
accounted as fully parallel), ``span_audit`` extracts just the analytic span,
and ``rank_audit`` replays a recorded trace of (input ranks, output rank)
tuples against the rank inequalities that make the whole cost argument work:

* join:   max(r(l), r(r)) <= r(out) <= 1 + max(r(l), r(r))
* split:  r(left) <= r(t) and r(right) <= r(t)
* union:  when the pivot outranks the decomposed tree (AVL, RB and WB only;
          treap ranks are only probabilistic), r(out) <= r(t1) + r(t2).
          The sum bound cannot hold verbatim for near-empty decomposed
          trees -- one key unioned into a perfect 3-node tree must come out
          at rank 2 > 0 + 1, and red-black rank parity costs up to two more
          units through decomposed rank 3 -- so below rank 4 the audit
          allows the two extra units those degenerate shapes need.  That
          slack is exactly what the surrounding work bound consumes anyway:
          it only needs the recursive results' ranks to differ by
          O(r(decomposed)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counters import CostCounters
from .setops import RankTrace, union

__all__ = ["measured_union", "span_audit", "rank_audit", "AuditReport", "RankTrace"]


def measured_union(t1, t2, cfg, parallel=None):
    """Union plus the counters it produced."""
    counters = CostCounters()
    out = union(t1, t2, cfg, counters=counters, parallel=parallel)
    return out, counters


def span_audit(t1, t2, cfg, parallel=None):
    """Analytic span of ``union(t1, t2)`` under fully-parallel accounting."""
    _, counters = measured_union(t1, t2, cfg, parallel=parallel)
    return counters.analytic_span


@dataclass
class AuditReport:
    """Rank-audit outcome; ``violations`` holds one line per bad tuple."""

    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"ok ({self.checked} tuples)"
        head = "\n".join(self.violations[:5])
        return f"{len(self.violations)} violations in {self.checked} tuples:\n{head}"


def rank_audit(trace: RankTrace) -> AuditReport:
    """Check every recorded tuple against the rank inequalities above."""
    report = AuditReport()
    for rl, rr, rout in trace.joins:
        report.checked += 1
        top = rl if rl > rr else rr
        if not (top <= rout <= top + 1):
            report.violations.append(f"join: ranks ({rl},{rr}) -> {rout}")
    for rt, rl, rr in trace.splits:
        report.checked += 1
        if rl > rt or rr > rt:
            report.violations.append(f"split: rank {rt} -> ({rl},{rr})")
    if trace.cfg.scheme in ("avl", "rb", "wb"):
        for r1, r2, rout in trace.unions:
            report.checked += 1
            if r2 > r1:
                slack = 0 if r1 >= 4 else 2
                if rout > r1 + r2 + slack:
                    report.violations.append(f"union: ranks ({r1},{r2}) -> {rout}")
    else:
        report.checked += len(trace.unions)
    return report
