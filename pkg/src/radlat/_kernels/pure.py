"""Pure-Python/numpy kernel backend.

Reference implementation of the hot relation kernels. A compiled twin lives
in ``_fast.pyx``; both backends must return identical matrices and identical
first witnesses (iteration order: ascending ``a``, then ``b``, then ``c``).

All matrices are C-contiguous square numpy arrays over one lattice:
``rel``/``leq`` are bool, ``join``/``meet`` are element-index tables (intp).
"""

from collections import deque

import numpy as np

BACKEND = "pure"


def _eye(n):
    return np.eye(n, dtype=bool)


def _first(mask):
    # row-major first True -> (row, col)
    idx = np.argwhere(mask)
    return int(idx[0, 0]), int(idx[0, 1])


def closure(rel):
    """Reflexive-transitive closure by iterated boolean squaring."""
    out = rel | _eye(rel.shape[0])
    while True:
        nxt = out | (out @ out)
        if (nxt == out).all():
            return nxt
        out = nxt


def transitivity_violation(rel):
    """First (a, b, c) with a~b, b~c but not a~c, or None."""
    n = rel.shape[0]
    for a in range(n):
        bad = rel[a][:, None] & rel & ~rel[a][None, :]
        if bad.any():
            b, c = _first(bad)
            return (a, b, c)
    return None


def h_violation(rel, leq, join):
    """First (a, b, c) with a~b and a<=c but not c~(b v c), or None."""
    n = rel.shape[0]
    cc = np.broadcast_to(np.arange(n)[None, :], (n, n))
    shifted = rel[cc, join]  # shifted[b, c] = rel[c, join[b, c]]
    for a in range(n):
        bad = rel[a][:, None] & leq[a][None, :] & ~shifted
        if bad.any():
            b, c = _first(bad)
            return (a, b, c)
    return None


def h_shift_violation(rel, join):
    """First (a, b, x) with a~b but not (a v x)~(b v x), or None."""
    n = rel.shape[0]
    for a in range(n):
        moved = rel[np.broadcast_to(join[a][None, :], (n, n)), join]
        bad = rel[a][:, None] & ~moved
        if bad.any():
            b, x = _first(bad)
            return (a, b, x)
    return None


def dual_h_violation(rel, leq, meet):
    """First (a, b, c) with a~b and c<=b but not (a ^ c)~c, or None."""
    n = rel.shape[0]
    cols = np.arange(n)
    for a in range(n):
        hit = rel[meet[a], cols]  # hit[c] = rel[meet[a, c], c]
        bad = rel[a][:, None] & leq.T & ~hit[None, :]
        if bad.any():
            b, c = _first(bad)
            return (a, b, c)
    return None


def dual_h_shift_violation(rel, meet):
    """First (a, b, x) with a~b but not (a ^ x)~(b ^ x), or None."""
    n = rel.shape[0]
    for a in range(n):
        moved = rel[np.broadcast_to(meet[a][None, :], (n, n)), meet]
        bad = rel[a][:, None] & ~moved
        if bad.any():
            b, x = _first(bad)
            return (a, b, x)
    return None


def join_violation(rel, join):
    """First (a, b, c) with a~b, a~c but not a~(b v c): up-sets not v-closed."""
    n = rel.shape[0]
    for a in range(n):
        ra = rel[a]
        bad = ra[:, None] & ra[None, :] & ~ra[join]
        if bad.any():
            b, c = _first(bad)
            return (a, b, c)
    return None


def meet_violation(rel, meet):
    """First (a, b, c) with b~a, c~a but not (b ^ c)~a: down-sets not ^-closed."""
    n = rel.shape[0]
    for a in range(n):
        ca = rel[:, a]
        bad = ca[:, None] & ca[None, :] & ~ca[meet]
        if bad.any():
            b, c = _first(bad)
            return (a, b, c)
    return None


def h_close(rel, join):
    """Least relation containing rel and closed under (a, b) -> (a v x, b v x)."""
    n = rel.shape[0]
    cur = rel.copy()
    queue = deque((a, b) for a in range(n) for b in range(n) if cur[a, b])
    while queue:
        a, b = queue.popleft()
        ja, jb = join[a], join[b]
        for x in range(n):
            u, v = ja[x], jb[x]
            if not cur[u, v]:
                cur[u, v] = True
                queue.append((u, v))
    return cur


def dual_h_close(rel, meet):
    """Least relation containing rel and closed under (a, b) -> (a ^ x, b ^ x)."""
    return h_close(rel, meet)


def up_relation(rel, leq):
    """up[a, b]: a<=b and every x in [a,b], x != b, has a strict rel-successor in [a,b]."""
    n = rel.shape[0]
    succ = rel & ~_eye(n)
    out = np.zeros_like(leq)
    for a in range(n):
        ia = leq[a]
        reach = (succ & ia[None, :]) @ leq  # reach[x, b]: successor y of x with a<=y<=b
        bad = ia[:, None] & leq & ~_eye(n) & ~reach
        out[a] = ia & ~bad.any(axis=0)
    return out


def lo_relation(rel, leq):
    """lo[a, b]: a<=b and every x in [a,b], x != a, has a strict rel-predecessor in [a,b]."""
    n = rel.shape[0]
    pred = (rel & ~_eye(n)).T  # pred[x, y]: y rel x strictly
    out = np.zeros_like(leq)
    for b in range(n):
        ib = leq[:, b]
        reach = (pred & ib[None, :]) @ leq.T  # reach[x, a]: predecessor y of x with a<=y<=b
        bad = ib[:, None] & leq.T & ~_eye(n) & ~reach
        out[:, b] = ib & ~bad.any(axis=0)
    return out


def left_complement(rel, leq):
    """left[a, b]: a<=b and no z != a with a~z and z<=b."""
    strict = rel & ~_eye(rel.shape[0])
    return leq & ~(strict @ leq)


def right_complement(rel, leq):
    """right[a, b]: a<=b and no z != b with z~b and a<=z."""
    strict = rel & ~_eye(rel.shape[0])
    return leq & ~(leq @ strict)


def order_tables(leq):
    """Join/meet tables of an order matrix.

    Returns (join, meet, bad). When some pair has no unique least upper or
    greatest lower bound, bad is that pair and the tables are partial.
    """
    n = leq.shape[0]
    join = np.zeros((n, n), dtype=np.intp)
    meet = np.zeros((n, n), dtype=np.intp)
    geq = leq.T.copy()
    not_leq_t = (~leq).T.copy()
    not_geq_t = (~geq).T.copy()
    for a in range(n):
        ub = leq[a][None, :] & leq  # ub[b, u]: u above both a and b
        least = ub & ~(ub @ not_leq_t)  # u in ub with u below all of ub
        counts = least.sum(axis=1)
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            return join, meet, (a, int(bad[0]))
        join[a] = least.argmax(axis=1)

        lb = geq[a][None, :] & geq
        greatest = lb & ~(lb @ not_geq_t)
        counts = greatest.sum(axis=1)
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            return join, meet, (a, int(bad[0]))
        meet[a] = greatest.argmax(axis=1)
    return join, meet, None
