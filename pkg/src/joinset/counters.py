"""Work/span accounting for tree operations.

Counters are plain mutable tallies carried through an operation.  Work-like
fields (comparisons, descent steps, split steps, rotations, forks) compose by
addition.  The analytic span composes like work inside sequential code and as
``max(left, right) + 1`` across the two branches of a fork, so the final span
is the cost of the critical path under an idealised fully-parallel schedule.
Counters are never shared between concurrent tasks; each task owns one and
they are combined after the fact, which keeps every field deterministic and
independent of the actual schedule.
"""

from __future__ import annotations

__all__ = ["CostCounters", "counters_merge_parallel"]


class CostCounters:
    """Mutable tally of the atomic operations performed by tree algorithms.

    ``analytic_work`` counts every recorded atomic operation plus one unit per
    parallel fork; ``analytic_span`` is maintained so that it equals the work
    of the critical path (sequential stretches contribute their full work,
    parallel pairs contribute ``max`` of the branches plus one).
    """

    __slots__ = (
        "comparisons",
        "join_descent_steps",
        "split_steps",
        "rotations",
        "forks",
        "analytic_work",
        "analytic_span",
    )

    def __init__(self):
        self.comparisons = 0
        self.join_descent_steps = 0
        self.split_steps = 0
        self.rotations = 0
        self.forks = 0
        self.analytic_work = 0
        self.analytic_span = 0

    def copy(self) -> "CostCounters":
        out = CostCounters()
        for name in self.__slots__:
            setattr(out, name, getattr(self, name))
        return out

    def add_sequential(self, other: "CostCounters") -> None:
        """Fold ``other`` into self as work done after self, serially."""
        for name in self.__slots__:
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}

    def __eq__(self, other):
        if not isinstance(other, CostCounters):
            return NotImplemented
        return all(getattr(self, n) == getattr(other, n) for n in self.__slots__)

    def __repr__(self):
        fields = ", ".join(f"{n}={getattr(self, n)}" for n in self.__slots__)
        return f"CostCounters({fields})"


def counters_merge_parallel(a: CostCounters, b: CostCounters) -> CostCounters:
    """Combine the counters of two parallel branches.

    Work-like fields are summed, one extra work unit is charged for the fork
    itself, and the span is ``max(a, b) + 1``.
    """
    out = CostCounters()
    out.comparisons = a.comparisons + b.comparisons
    out.join_descent_steps = a.join_descent_steps + b.join_descent_steps
    out.split_steps = a.split_steps + b.split_steps
    out.rotations = a.rotations + b.rotations
    out.forks = a.forks + b.forks + 1
    out.analytic_work = a.analytic_work + b.analytic_work + 1
    out.analytic_span = max(a.analytic_span, b.analytic_span) + 1
    return out
