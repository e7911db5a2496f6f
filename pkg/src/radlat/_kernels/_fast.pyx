# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend.

Twin of ``pure.py``: same contracts, same matrices, same first witnesses
(ascending a, then b, then c). Keep the two in lockstep.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "fast"

ctypedef cnp.uint8_t u8


cdef inline object _as_u8(object arr):
    return np.ascontiguousarray(arr).view(np.uint8)


cdef inline object _as_ix(object arr):
    return np.ascontiguousarray(arr, dtype=np.intp)


def closure(rel):
    """Reflexive-transitive closure (Warshall)."""
    cdef Py_ssize_t n = rel.shape[0]
    out = _as_u8(rel | np.eye(n, dtype=bool))
    cdef u8[:, ::1] m = out
    cdef Py_ssize_t i, j, k
    for k in range(n):
        for i in range(n):
            if m[i, k]:
                for j in range(n):
                    if m[k, j] and not m[i, j]:
                        m[i, j] = 1
    return out.view(bool)


def transitivity_violation(rel):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for c in range(n):
                    if m[b, c] and not m[a, c]:
                        return (a, b, c)
    return None


def h_violation(rel, leq, join):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef const Py_ssize_t[:, ::1] jn = _as_ix(join)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for c in range(n):
                    if o[a, c] and not m[c, jn[b, c]]:
                        return (a, b, c)
    return None


def h_shift_violation(rel, join):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const Py_ssize_t[:, ::1] jn = _as_ix(join)
    cdef Py_ssize_t n = m.shape[0], a, b, x
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for x in range(n):
                    if not m[jn[a, x], jn[b, x]]:
                        return (a, b, x)
    return None


def dual_h_violation(rel, leq, meet):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef const Py_ssize_t[:, ::1] mt = _as_ix(meet)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for c in range(n):
                    if o[c, b] and not m[mt[a, c], c]:
                        return (a, b, c)
    return None


def dual_h_shift_violation(rel, meet):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const Py_ssize_t[:, ::1] mt = _as_ix(meet)
    cdef Py_ssize_t n = m.shape[0], a, b, x
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for x in range(n):
                    if not m[mt[a, x], mt[b, x]]:
                        return (a, b, x)
    return None


def join_violation(rel, join):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const Py_ssize_t[:, ::1] jn = _as_ix(join)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                for c in range(n):
                    if m[a, c] and not m[a, jn[b, c]]:
                        return (a, b, c)
    return None


def meet_violation(rel, meet):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const Py_ssize_t[:, ::1] mt = _as_ix(meet)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            if m[b, a]:
                for c in range(n):
                    if m[c, a] and not m[mt[b, c], a]:
                        return (a, b, c)
    return None


def h_close(rel, join):
    cdef Py_ssize_t n = rel.shape[0]
    out = _as_u8(rel.copy())
    cdef u8[:, ::1] m = out
    cdef const Py_ssize_t[:, ::1] jn = _as_ix(join)
    qa_arr = np.empty(n * n, dtype=np.intp)
    qb_arr = np.empty(n * n, dtype=np.intp)
    cdef Py_ssize_t[::1] qa = qa_arr
    cdef Py_ssize_t[::1] qb = qb_arr
    cdef Py_ssize_t head = 0, tail = 0, a, b, x, u, v
    for a in range(n):
        for b in range(n):
            if m[a, b]:
                qa[tail] = a
                qb[tail] = b
                tail += 1
    # each pair enters the queue at most once, so capacity n*n suffices
    while head < tail:
        a = qa[head]
        b = qb[head]
        head += 1
        for x in range(n):
            u = jn[a, x]
            v = jn[b, x]
            if not m[u, v]:
                m[u, v] = 1
                qa[tail] = u
                qb[tail] = v
                tail += 1
    return out.view(bool)


def dual_h_close(rel, meet):
    return h_close(rel, meet)


def up_relation(rel, leq):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef Py_ssize_t n = m.shape[0], a, b, x, y
    out = np.zeros((n, n), dtype=np.uint8)
    cdef u8[:, ::1] res = out
    cdef bint ok, found
    for a in range(n):
        for b in range(n):
            if not o[a, b]:
                continue
            ok = True
            for x in range(n):
                if x == b or not (o[a, x] and o[x, b]):
                    continue
                found = False
                for y in range(n):
                    if y != x and m[x, y] and o[a, y] and o[y, b]:
                        found = True
                        break
                if not found:
                    ok = False
                    break
            res[a, b] = ok
    return out.view(bool)


def lo_relation(rel, leq):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef Py_ssize_t n = m.shape[0], a, b, x, y
    out = np.zeros((n, n), dtype=np.uint8)
    cdef u8[:, ::1] res = out
    cdef bint ok, found
    for a in range(n):
        for b in range(n):
            if not o[a, b]:
                continue
            ok = True
            for x in range(n):
                if x == a or not (o[a, x] and o[x, b]):
                    continue
                found = False
                for y in range(n):
                    if y != x and m[y, x] and o[a, y] and o[y, b]:
                        found = True
                        break
                if not found:
                    ok = False
                    break
            res[a, b] = ok
    return out.view(bool)


def left_complement(rel, leq):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef Py_ssize_t n = m.shape[0], a, b, z
    out = np.zeros((n, n), dtype=np.uint8)
    cdef u8[:, ::1] res = out
    cdef bint clear
    for a in range(n):
        for b in range(n):
            if not o[a, b]:
                continue
            clear = True
            for z in range(n):
                if z != a and m[a, z] and o[z, b]:
                    clear = False
                    break
            res[a, b] = clear
    return out.view(bool)


def right_complement(rel, leq):
    cdef const u8[:, ::1] m = _as_u8(rel)
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef Py_ssize_t n = m.shape[0], a, b, z
    out = np.zeros((n, n), dtype=np.uint8)
    cdef u8[:, ::1] res = out
    cdef bint clear
    for a in range(n):
        for b in range(n):
            if not o[a, b]:
                continue
            clear = True
            for z in range(n):
                if z != b and m[z, b] and o[a, z]:
                    clear = False
                    break
            res[a, b] = clear
    return out.view(bool)


def order_tables(leq):
    cdef const u8[:, ::1] o = _as_u8(leq)
    cdef Py_ssize_t n = o.shape[0], a, b, u, v, cand
    join_arr = np.zeros((n, n), dtype=np.intp)
    meet_arr = np.zeros((n, n), dtype=np.intp)
    cdef Py_ssize_t[:, ::1] jn = join_arr
    cdef Py_ssize_t[:, ::1] mt = meet_arr
    cdef bint ok
    for a in range(n):
        for b in range(n):
            cand = -1
            for u in range(n):
                if o[a, u] and o[b, u]:
                    if cand < 0 or o[u, cand]:
                        cand = u
            ok = cand >= 0
            if ok:
                for v in range(n):
                    if o[a, v] and o[b, v] and not o[cand, v]:
                        ok = False
                        break
            if not ok:
                return join_arr, meet_arr, (a, b)
            jn[a, b] = cand
        for b in range(n):
            cand = -1
            for u in range(n):
                if o[u, a] and o[u, b]:
                    if cand < 0 or o[cand, u]:
                        cand = u
            ok = cand >= 0
            if ok:
                for v in range(n):
                    if o[v, a] and o[v, b] and not o[v, cand]:
                        ok = False
                        break
            if not ok:
                return join_arr, meet_arr, (a, b)
            mt[a, b] = cand
    return join_arr, meet_arr, None
