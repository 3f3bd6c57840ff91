"""Fork-join execution context for the bulk set operations.

Trees are immutable, so tasks share subtrees freely without locks.  The set
algebra spawns its right-hand recursive call as a task whenever both pivot
subtrees are at least ``cutoff`` nodes; queued tasks that have not started by
the time their result is needed are reclaimed and run inline, which keeps the
pool deadlock-free at any worker count.  Results and counters are identical
at every worker count because counters are composed along the logical fork
tree, not the schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

__all__ = ["Parallel", "DEFAULT_CUTOFF"]

DEFAULT_CUTOFF = 1024


class Parallel:
    """Worker pool handed to union/intersect/difference.

    ``workers=1`` keeps everything inline (no executor is created).  Use as a
    context manager or call :meth:`shutdown`.
    """

    def __init__(self, workers=1, cutoff=DEFAULT_CUTOFF):
        if workers < 1:
            raise ValueError("workers must be >= 1")
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        self.workers = workers
        self.cutoff = cutoff
        self.executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def shutdown(self):
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()
        return False
