"""Scheme-specific join implementations.

``join(l, k, r)`` concatenates two trees around a middle key, assuming every
key of ``l`` is below ``k`` and every key of ``r`` above it.  This is the only
code in the library that knows how any balancing scheme works; everything
else (split, union, ...) is built on top of it.

All four joins walk a single spine of the taller/heavier input, splice the
smaller input in at the point of matching rank, and repair the balance
invariant on the way back up, so their cost is proportional to the rank
difference of the inputs (priority depth for treaps).  They are sequential:
their span equals their work.
"""

from __future__ import annotations

from .tree import (
    DEFAULT_SEED,
    avl_node,
    black_height,
    height,
    is_red,
    priority_of,
    rb_node,
    treap_node,
    wb_node,
    _require_ordered,
)

__all__ = ["join", "join_avl", "join_rb", "join_wb", "join_treap"]


def join(tl, k, tr, cfg, counters=None):
    """Dispatch to the active scheme's join."""
    if cfg.validate:
        _require_ordered(tl, k, tr)
    s = cfg.scheme
    if s == "avl":
        return join_avl(tl, k, tr, counters)
    if s == "rb":
        return join_rb(tl, k, tr, counters)
    if s == "wb":
        return join_wb(tl, k, tr, cfg.alpha, counters)
    return join_treap(tl, k, tr, cfg.seed, counters)


def join_impl(cfg):
    """Bind ``cfg`` into a ``(tl, k, tr, counters) -> tree`` callable."""
    s = cfg.scheme
    if s == "avl":
        return join_avl
    if s == "rb":
        return join_rb
    if s == "wb":
        alpha = cfg.alpha

        def jn(tl, k, tr, counters=None, _a=alpha):
            return join_wb(tl, k, tr, _a, counters)

        return jn
    seed = cfg.seed

    def jn(tl, k, tr, counters=None, _s=seed):
        return join_treap(tl, k, tr, _s, counters)

    return jn


# -- AVL ----------------------------------------------------------------------

def _avl_rotl(t, C):
    if C is not None:
        C.rotations += 1
        C.analytic_work += 1
        C.analytic_span += 1
    r = t.right
    return avl_node(avl_node(t.left, t.key, r.left), r.key, r.right)


def _avl_rotr(t, C):
    if C is not None:
        C.rotations += 1
        C.analytic_work += 1
        C.analytic_span += 1
    l = t.left
    return avl_node(l.left, l.key, avl_node(l.right, t.key, t.right))


def _avl_join_right(tl, k, tr, C):
    # invariant: height(tl) > height(tr) + 1, so tl is a node
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    l, k2, c = tl.left, tl.key, tl.right
    if height(c) <= height(tr) + 1:
        t1 = avl_node(c, k, tr)
        if t1.meta <= height(l) + 1:
            return avl_node(l, k2, t1)
        return _avl_rotl(avl_node(l, k2, _avl_rotr(t1, C)), C)
    t1 = _avl_join_right(c, k, tr, C)
    if t1.meta <= height(l) + 1:
        return avl_node(l, k2, t1)
    return _avl_rotl(avl_node(l, k2, t1), C)


def _avl_join_left(tl, k, tr, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    c, k2, r = tr.left, tr.key, tr.right
    if height(c) <= height(tl) + 1:
        t1 = avl_node(tl, k, c)
        if t1.meta <= height(r) + 1:
            return avl_node(t1, k2, r)
        return _avl_rotr(avl_node(_avl_rotl(t1, C), k2, r), C)
    t1 = _avl_join_left(tl, k, c, C)
    if t1.meta <= height(r) + 1:
        return avl_node(t1, k2, r)
    return _avl_rotr(avl_node(t1, k2, r), C)


def join_avl(tl, k, tr, counters=None):
    """AVL join: splice along the taller spine, at most two rotations."""
    hl, hr = height(tl), height(tr)
    if hl > hr + 1:
        return _avl_join_right(tl, k, tr, counters)
    if hr > hl + 1:
        return _avl_join_left(tl, k, tr, counters)
    return avl_node(tl, k, tr)


# -- red-black ----------------------------------------------------------------
#
# Roots may be red.  The descent stops at the first black node (leaves count
# as black) whose black height matches the other tree; the new red node can
# leave a red-red pair on the spine, fixed by single rotations on the way up.

def _rb_join_right(tl, k, tr, bh_tr, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if not is_red(tl) and black_height(tl) == bh_tr:
        return rb_node(tl, k, tr, True)
    t1 = _rb_join_right(tl.right, k, tr, bh_tr, C)
    red_tl = (tl.meta & 1) == 1
    if not red_tl and is_red(t1) and is_red(t1.right):
        if C is not None:
            C.rotations += 1
            C.analytic_work += 1
            C.analytic_span += 1
        rr = t1.right
        return rb_node(
            rb_node(tl.left, tl.key, t1.left, False),
            t1.key,
            rb_node(rr.left, rr.key, rr.right, False),
            True,
        )
    return rb_node(tl.left, tl.key, t1, red_tl)


def _rb_join_left(tl, k, tr, bh_tl, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if not is_red(tr) and black_height(tr) == bh_tl:
        return rb_node(tl, k, tr, True)
    t1 = _rb_join_left(tl, k, tr.left, bh_tl, C)
    red_tr = (tr.meta & 1) == 1
    if not red_tr and is_red(t1) and is_red(t1.left):
        if C is not None:
            C.rotations += 1
            C.analytic_work += 1
            C.analytic_span += 1
        ll = t1.left
        return rb_node(
            rb_node(ll.left, ll.key, ll.right, False),
            t1.key,
            rb_node(t1.right, tr.key, tr.right, False),
            True,
        )
    return rb_node(t1, tr.key, tr.right, red_tr)


def join_rb(tl, k, tr, counters=None):
    """Red-black join; result rank grows by at most one."""
    bl, br = black_height(tl), black_height(tr)
    if bl > br:
        t1 = _rb_join_right(tl, k, tr, br, counters)
        if is_red(t1) and is_red(t1.right):
            return rb_node(t1.left, t1.key, t1.right, False)
        return t1
    if br > bl:
        t1 = _rb_join_left(tl, k, tr, bl, counters)
        if is_red(t1) and is_red(t1.left):
            return rb_node(t1.left, t1.key, t1.right, False)
        return t1
    if not is_red(tl) and not is_red(tr):
        return rb_node(tl, k, tr, True)
    return rb_node(tl, k, tr, False)


# -- weight-balanced ----------------------------------------------------------

def _weight(t):
    return t.size + 1 if t is not None else 1


def _like(wa, wb, alpha):
    w = wa + wb
    return alpha * w <= wa <= (1.0 - alpha) * w


def _heavy(wa, wb, alpha):
    return wa > (1.0 - alpha) * (wa + wb)


def _wb_single_left(l, k, t1, C):
    if C is not None:
        C.rotations += 1
        C.analytic_work += 1
        C.analytic_span += 1
    return wb_node(wb_node(l, k, t1.left), t1.key, t1.right)


def _wb_double_left(l, k, t1, C):
    if C is not None:
        C.rotations += 2
        C.analytic_work += 2
        C.analytic_span += 2
    l1 = t1.left
    return wb_node(wb_node(l, k, l1.left), l1.key, wb_node(l1.right, t1.key, t1.right))


def _wb_single_right(t1, k, r, C):
    if C is not None:
        C.rotations += 1
        C.analytic_work += 1
        C.analytic_span += 1
    return wb_node(t1.left, t1.key, wb_node(t1.right, k, r))


def _wb_double_right(t1, k, r, C):
    if C is not None:
        C.rotations += 2
        C.analytic_work += 2
        C.analytic_span += 2
    r1 = t1.right
    return wb_node(wb_node(t1.left, t1.key, r1.left), r1.key, wb_node(r1.right, k, r))


def _wb_join_right(tl, k, tr, alpha, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if _like(_weight(tl), _weight(tr), alpha):
        return wb_node(tl, k, tr)
    l, k2, c = tl.left, tl.key, tl.right
    t1 = _wb_join_right(c, k, tr, alpha, C)
    wl, w1 = _weight(l), _weight(t1)
    if _like(wl, w1, alpha):
        return wb_node(l, k2, t1)
    wl1 = _weight(t1.left)
    if _like(wl, wl1, alpha) and _like(wl + wl1, _weight(t1.right), alpha):
        return _wb_single_left(l, k2, t1, C)
    return _wb_double_left(l, k2, t1, C)


def _wb_join_left(tl, k, tr, alpha, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    if _like(_weight(tl), _weight(tr), alpha):
        return wb_node(tl, k, tr)
    c, k2, r = tr.left, tr.key, tr.right
    t1 = _wb_join_left(tl, k, c, alpha, C)
    wr, w1 = _weight(r), _weight(t1)
    if _like(w1, wr, alpha):
        return wb_node(t1, k2, r)
    wr1 = _weight(t1.right)
    if _like(wr1, wr, alpha) and _like(_weight(t1.left), wr1 + wr, alpha):
        return _wb_single_right(t1, k2, r, C)
    return _wb_double_right(t1, k2, r, C)


def join_wb(tl, k, tr, alpha=0.29, counters=None):
    """Weight-balanced join for a given alpha."""
    wl, wr = _weight(tl), _weight(tr)
    if _heavy(wl, wr, alpha):
        return _wb_join_right(tl, k, tr, alpha, counters)
    if _heavy(wr, wl, alpha):
        return _wb_join_left(tl, k, tr, alpha, counters)
    return wb_node(tl, k, tr)


# -- treap --------------------------------------------------------------------

def _treap_join(tl, k, pk, tr, C):
    if C is not None:
        C.join_descent_steps += 1
        C.analytic_work += 1
        C.analytic_span += 1
    # k wins against an empty side; priority ties go to the smaller key
    k_wins_l = tl is None or pk > tl.meta or (pk == tl.meta and k < tl.key)
    k_wins_r = tr is None or pk > tr.meta or (pk == tr.meta and k < tr.key)
    if k_wins_l and k_wins_r:
        return treap_node(tl, k, tr, pk)
    if tr is None or (
        tl is not None
        and (tl.meta > tr.meta or (tl.meta == tr.meta and tl.key < tr.key))
    ):
        return treap_node(tl.left, tl.key, _treap_join(tl.right, k, pk, tr, C), tl.meta)
    return treap_node(_treap_join(tl, k, pk, tr.left, C), tr.key, tr.right, tr.meta)


def join_treap(tl, k, tr, seed=DEFAULT_SEED, counters=None):
    """Treap join: the highest-priority key among k and the two roots wins."""
    return _treap_join(tl, k, priority_of(k, seed), tr, counters)
