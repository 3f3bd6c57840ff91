"""Persistent binary search tree core.

A tree is either ``None`` (the empty tree, written Leaf throughout) or a
:class:`Node`.  Nodes are immutable once built and freely shared between
trees, so every operation in this library returns a new tree that aliases
unchanged subtrees of its inputs.

Each node caches its subtree size plus one integer of scheme metadata:

* AVL    -- the height of the subtree (>= 1 at a node),
* RB     -- ``(black_height << 1) | is_red``,
* WB     -- unused (weight balance needs only the size),
* treap  -- the node's priority, a keyed hash of the key.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field

from .counters import CostCounters

__all__ = [
    "Node",
    "SchemeConfig",
    "ValidationReport",
    "SCHEMES",
    "ALPHA_MIN",
    "ALPHA_MAX",
    "expose",
    "make_node",
    "rank",
    "rotate_left",
    "rotate_right",
    "check_valid",
    "to_sorted_list",
    "contains",
    "tree_size",
    "tree_min",
    "tree_max",
    "tree_equal",
    "priority_of",
]

SCHEMES = ("avl", "rb", "wb", "treap")

# Single and double rotations suffice to rebalance a weight-balanced tree
# only for alpha in (2/11, 1 - 1/sqrt(2)].
ALPHA_MIN = 2.0 / 11.0
ALPHA_MAX = 1.0 - 1.0 / math.sqrt(2.0)

DEFAULT_SEED = 0x5EEDBA5E


class Node:
    __slots__ = ("left", "key", "right", "size", "meta")

    def __init__(self, left, key, right, size, meta):
        self.left = left
        self.key = key
        self.right = right
        self.size = size
        self.meta = meta

    def __repr__(self):
        return f"Node(key={self.key!r}, size={self.size}, meta={self.meta})"


@dataclass(frozen=True)
class SchemeConfig:
    """Which balancing scheme is active, plus its parameters.

    ``alpha`` applies to weight-balanced trees and must stay inside the
    open-closed interval (2/11, 1 - 1/sqrt(2)]; ``seed`` keys the hash that
    assigns treap priorities, so equal key sets always produce identical
    treap shapes.  ``validate`` turns on the (expensive) key-order check of
    the join precondition.
    """

    scheme: str
    alpha: float = 0.29
    seed: int = DEFAULT_SEED
    validate: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if not (ALPHA_MIN < self.alpha <= ALPHA_MAX):
            raise ValueError(
                f"alpha={self.alpha!r} outside the rotation-safe interval "
                f"({ALPHA_MIN!r}, {ALPHA_MAX!r}]"
            )
        if not isinstance(self.seed, int):
            raise ValueError("seed must be an integer")


# -- treap priorities ---------------------------------------------------------

_MASK64 = (1 << 64) - 1
_PACK_DOUBLE = struct.Struct("<d").pack
_UNPACK_U64 = struct.Struct("<Q").unpack


def _key_fingerprint(key):
    # Equal keys must map to equal fingerprints; ints that compare equal to a
    # float (e.g. 1 == 1.0) share the float's bit pattern.
    if isinstance(key, float):
        if key == 0.0:
            key = 0.0  # collapse -0.0
        return _UNPACK_U64(_PACK_DOUBLE(key))[0]
    if isinstance(key, int) and not isinstance(key, bool):
        if -(1 << 53) <= key <= (1 << 53):
            return _UNPACK_U64(_PACK_DOUBLE(float(key)))[0]
        return key & _MASK64
    digest = hashlib.blake2b(repr(key).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def priority_of(key, seed=DEFAULT_SEED):
    """Deterministic 64-bit treap priority of ``key`` under ``seed``."""
    return _splitmix64(_key_fingerprint(key) ^ (seed & _MASK64))


# -- node constructors --------------------------------------------------------
#
# The per-scheme constructors are the only places metadata is computed; the
# join implementations call them directly.

def avl_node(l, k, r):
    hl = l.meta if l is not None else 0
    hr = r.meta if r is not None else 0
    return Node(
        l,
        k,
        r,
        (l.size if l is not None else 0) + (r.size if r is not None else 0) + 1,
        (hl if hl > hr else hr) + 1,
    )


def rb_node(l, k, r, red):
    # black height counts this node if black; leaves have black height 0
    bhl = (l.meta >> 1) if l is not None else 0
    return Node(
        l,
        k,
        r,
        (l.size if l is not None else 0) + (r.size if r is not None else 0) + 1,
        (bhl << 1) | 1 if red else ((bhl + 1) << 1),
    )


def wb_node(l, k, r):
    return Node(
        l,
        k,
        r,
        (l.size if l is not None else 0) + (r.size if r is not None else 0) + 1,
        0,
    )


def treap_node(l, k, r, priority):
    return Node(
        l,
        k,
        r,
        (l.size if l is not None else 0) + (r.size if r is not None else 0) + 1,
        priority,
    )


def is_red(t):
    return t is not None and (t.meta & 1) == 1


def black_height(t):
    return (t.meta >> 1) if t is not None else 0


def height(t):
    """AVL height from cached metadata (0 for the empty tree)."""
    return t.meta if t is not None else 0


# -- spec operations ----------------------------------------------------------

def expose(t):
    """Return ``(left, key, right)`` of a non-empty tree."""
    if t is None:
        raise ValueError("expose() on an empty tree")
    return t.left, t.key, t.right


def make_node(l, k, r, cfg, red=False):
    """Build a fresh node over ``l < k < r`` with recomputed metadata.

    ``red`` selects the colour for red-black nodes and is ignored by the
    other schemes.  With ``cfg.validate`` set, the BST precondition is
    checked (linear in the subtree sizes).
    """
    if cfg.validate:
        _require_ordered(l, k, r)
    s = cfg.scheme
    if s == "avl":
        return avl_node(l, k, r)
    if s == "rb":
        return rb_node(l, k, r, red)
    if s == "wb":
        return wb_node(l, k, r)
    return treap_node(l, k, r, priority_of(k, cfg.seed))


def _require_ordered(l, k, r):
    if l is not None and not (tree_max(l) < k):
        raise ValueError(f"key order violated: max(left) !< {k!r}")
    if r is not None and not (k < tree_min(r)):
        raise ValueError(f"key order violated: {k!r} !< min(right)")


def rank(t, cfg):
    """Scheme-specific rank; the empty tree has rank -1 for every scheme."""
    if t is None:
        return -1
    s = cfg.scheme
    if s == "avl":
        return t.meta - 1
    if s == "rb":
        bh = t.meta >> 1
        return 2 * bh - 1 if (t.meta & 1) else 2 * (bh - 1)
    # wb and treap: ceil(log2(weight)) - 1 == bit_length(size) - 1
    return t.size.bit_length() - 1


def rotate_left(t, cfg, counters=None):
    """Single left rotation; metadata of the two rebuilt nodes is recomputed."""
    if t is None or t.right is None:
        raise ValueError("rotate_left() needs a non-empty right child")
    if counters is not None:
        counters.rotations += 1
        counters.analytic_work += 1
        counters.analytic_span += 1
    r = t.right
    return _rebuild(_rebuild(t.left, t, r.left, cfg), r, r.right, cfg)


def rotate_right(t, cfg, counters=None):
    """Single right rotation, the mirror of :func:`rotate_left`."""
    if t is None or t.left is None:
        raise ValueError("rotate_right() needs a non-empty left child")
    if counters is not None:
        counters.rotations += 1
        counters.analytic_work += 1
        counters.analytic_span += 1
    l = t.left
    return _rebuild(l.left, l, _rebuild(l.right, t, t.right, cfg), cfg)


def _rebuild(l, orig, r, cfg):
    # Rebuild orig's key over new children; colour/priority travel with the key.
    s = cfg.scheme
    if s == "avl":
        return avl_node(l, orig.key, r)
    if s == "rb":
        return rb_node(l, orig.key, r, (orig.meta & 1) == 1)
    if s == "wb":
        return wb_node(l, orig.key, r)
    return treap_node(l, orig.key, r, orig.meta)


def tree_size(t):
    return t.size if t is not None else 0


def tree_min(t):
    if t is None:
        raise ValueError("tree_min() on an empty tree")
    while t.left is not None:
        t = t.left
    return t.key


def tree_max(t):
    if t is None:
        raise ValueError("tree_max() on an empty tree")
    while t.right is not None:
        t = t.right
    return t.key


def to_sorted_list(t):
    """In-order key sequence (iterative, so height never limits recursion)."""
    out = []
    push = out.append
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        push(t.key)
        t = t.right
    return out


def contains(t, k, counters=None):
    """Standard BST membership test; at most height + 1 comparisons."""
    while t is not None:
        if counters is not None:
            counters.comparisons += 1
            counters.analytic_work += 1
            counters.analytic_span += 1
        m = t.key
        if k == m:
            return True
        t = t.left if k < m else t.right
    return False


def tree_equal(a, b):
    """Structural equality: same shape, keys and metadata."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is None or y is None:
            if x is not y:
                return False
            continue
        if x.key != y.key or x.size != y.size or x.meta != y.meta:
            return False
        stack.append((x.left, y.left))
        stack.append((x.right, y.right))
    return True


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`check_valid`: ``ok`` or the first violated rule."""

    ok: bool
    rule: str = ""
    path: str = ""
    detail: str = ""

    def __str__(self):
        if self.ok:
            return "ok"
        return f"violated {self.rule} at {self.path or 'root'}: {self.detail}"


def check_valid(t, cfg):
    """Check BST order, cached sizes, cached metadata and the balance rule.

    Violations are reported, not raised; the first one found wins.
    """
    violation = _check_node(t, cfg, None, None, "root")
    if violation is None:
        return ValidationReport(True)
    rule, path, detail = violation
    return ValidationReport(False, rule, path, detail)


def _check_node(t, cfg, lo, hi, path):
    if t is None:
        return None
    if lo is not None and not (lo < t.key):
        return ("bst-order", path, f"key {t.key!r} not above bound {lo!r}")
    if hi is not None and not (t.key < hi):
        return ("bst-order", path, f"key {t.key!r} not below bound {hi!r}")
    size = tree_size(t.left) + tree_size(t.right) + 1
    if t.size != size:
        return ("size-cache", path, f"cached {t.size}, recomputed {size}")

    s = cfg.scheme
    if s == "avl":
        hl, hr = height(t.left), height(t.right)
        if t.meta != max(hl, hr) + 1:
            return ("avl-height-cache", path, f"cached {t.meta}, children {hl},{hr}")
        if abs(hl - hr) > 1:
            return ("avl-balance", path, f"child heights {hl},{hr}")
    elif s == "rb":
        bhl, bhr = black_height(t.left), black_height(t.right)
        if bhl != bhr:
            return ("rb-black-rule", path, f"child black heights {bhl},{bhr}")
        expect = bhl + (0 if (t.meta & 1) else 1)
        if (t.meta >> 1) != expect:
            return ("rb-bh-cache", path, f"cached {t.meta >> 1}, recomputed {expect}")
        if (t.meta & 1) and (is_red(t.left) or is_red(t.right)):
            return ("rb-red-rule", path, "red node with a red child")
    elif s == "wb":
        w, wl = t.size + 1, tree_size(t.left) + 1
        if not (cfg.alpha * w <= wl <= (1.0 - cfg.alpha) * w):
            return ("wb-balance", path, f"left weight {wl} of total {w}")
    else:
        if t.meta != priority_of(t.key, cfg.seed):
            return ("treap-priority-cache", path, f"cached {t.meta}")
        for child in (t.left, t.right):
            if child is not None and not _treap_wins(t, child):
                return ("treap-heap-order", path, "child outranks parent")

    bad = _check_node(t.left, cfg, lo, t.key, path + ".left")
    if bad is not None:
        return bad
    return _check_node(t.right, cfg, t.key, hi, path + ".right")


def _treap_wins(parent, child):
    # Ties go to the smaller key, making the treap shape unique.
    if parent.meta != child.meta:
        return parent.meta > child.meta
    return parent.key < child.key
