"""Parallel persistent ordered sets where all balancing lives in join.

The library keeps ordered sets in persistent balanced binary search trees
under four interchangeable balancing schemes (AVL, red-black, weight-balanced
and treaps).  Each scheme contributes exactly one balance-aware function, its
join; split, insert, delete and the parallel bulk operations union, intersect
and difference are generic on top of it.  Instrumented counters expose the
work and the fully-parallel analytic span of every bulk call.
"""

from .build import build_by_inserts, build_from_sorted
from .counters import CostCounters, counters_merge_parallel
from .costmodel import AuditReport, measured_union, rank_audit, span_audit
from .joins import join, join_avl, join_rb, join_treap, join_wb
from .oracle import (
    oracle_difference,
    oracle_intersect,
    oracle_split,
    oracle_union,
)
from .parallel import Parallel
from .setops import (
    RankTrace,
    SplitResult,
    delete,
    difference,
    insert,
    intersect,
    join2,
    split,
    split_last,
    union,
)
from .tree import (
    Node,
    SchemeConfig,
    ValidationReport,
    check_valid,
    contains,
    expose,
    make_node,
    priority_of,
    rank,
    rotate_left,
    rotate_right,
    to_sorted_list,
    tree_equal,
    tree_max,
    tree_min,
    tree_size,
)
from .workload import WorkloadSpec, generate_keys, workload_pair

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "CostCounters",
    "Node",
    "Parallel",
    "RankTrace",
    "SchemeConfig",
    "SplitResult",
    "ValidationReport",
    "WorkloadSpec",
    "build_by_inserts",
    "build_from_sorted",
    "check_valid",
    "contains",
    "counters_merge_parallel",
    "delete",
    "difference",
    "expose",
    "generate_keys",
    "insert",
    "intersect",
    "join",
    "join2",
    "join_avl",
    "join_rb",
    "join_treap",
    "join_wb",
    "make_node",
    "measured_union",
    "oracle_difference",
    "oracle_intersect",
    "oracle_split",
    "oracle_union",
    "priority_of",
    "rank",
    "rank_audit",
    "rotate_left",
    "rotate_right",
    "span_audit",
    "split",
    "split_last",
    "to_sorted_list",
    "tree_equal",
    "tree_max",
    "tree_min",
    "tree_size",
    "union",
    "workload_pair",
]
