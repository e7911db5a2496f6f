"""Finite complete lattices as order matrices with precomputed join/meet tables.

Elements are dense indices 0..n-1; labels are display metadata only. Every
constructor validates the order axioms and the existence of unique joins and
meets, so downstream code can treat lattice values as trusted and immutable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import NotALattice, NotAPoset, NotComparable, SizeLimitExceeded

DEFAULT_SIZE_CAP = 4096
DEFAULT_BLOCK_CAP = 12


def size_cap():
    """Hard bound on element count, overridable via RADLAT_CAPS."""
    return int(_caps().get("max_lattice", DEFAULT_SIZE_CAP))


def block_cap():
    """Hard bound on model-algebra block count (ideal lattices stay bounded)."""
    return int(_caps().get("max_blocks", DEFAULT_BLOCK_CAP))


def _caps():
    raw = os.environ.get("RADLAT_CAPS", "")
    out = {}
    for part in raw.split(","):
        if "=" in part:
            key, _, val = part.partition("=")
            out[key.strip()] = val.strip()
    return out


def _freeze(arr):
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Lattice:
    n: int
    leq: np.ndarray  # bool n x n, the order
    join: np.ndarray  # element tables, intp n x n
    meet: np.ndarray
    bottom: int
    top: int
    labels: tuple | None = None
    name: str = "lattice"

    def le(self, a, b):
        return bool(self.leq[a, b])

    def label(self, i):
        if self.labels and i < len(self.labels) and self.labels[i] is not None:
            return self.labels[i]
        return str(i)

    def up_set(self, a):
        return np.flatnonzero(self.leq[a])

    def down_set(self, a):
        return np.flatnonzero(self.leq[:, a])

    def join_all(self, elems):
        out = self.bottom
        for x in elems:
            out = int(self.join[out, x])
        return out

    def meet_all(self, elems):
        out = self.top
        for x in elems:
            out = int(self.meet[out, x])
        return out

    def covers(self):
        """Hasse-diagram edges (i, j) with i < j and nothing strictly between."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        redundant = strict @ strict  # i < k < j for some k
        out = strict & ~redundant
        return [(int(i), int(j)) for i, j in np.argwhere(out)]

    def structure_key(self):
        """Hashable invariant of the labelled order (not up to isomorphism)."""
        return (self.n, self.leq.tobytes())

    def __repr__(self):
        return f"Lattice({self.name!r}, n={self.n})"


@dataclass(frozen=True)
class Interval:
    lattice: Lattice
    lo: int
    hi: int
    members: tuple

    def __contains__(self, x):
        return x in self.members


def _make(leq, labels=None, name="lattice", tables=None):
    n = leq.shape[0]
    if tables is None:
        join, meet, bad = K.order_tables(leq)
        if bad is not None:
            raise NotALattice(bad)
    else:
        join, meet = tables
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    lat = Lattice(
        n=n,
        leq=_freeze(np.ascontiguousarray(leq)),
        join=_freeze(np.ascontiguousarray(join, dtype=np.intp)),
        meet=_freeze(np.ascontiguousarray(meet, dtype=np.intp)),
        bottom=bottom,
        top=top,
        labels=tuple(labels) if labels else None,
        name=name,
    )
    _sanity(lat)
    return lat


def _sanity(lat):
    # absorption a v (a ^ b) = a on every constructed lattice
    n = lat.n
    idx = np.arange(n)
    absorbed = lat.join[idx[:, None], lat.meet]
    if not (absorbed == idx[:, None]).all():
        bad = np.argwhere(absorbed != idx[:, None])[0]
        raise NotALattice((int(bad[0]), int(bad[1])), "absorption fails")


def build_lattice(n, pairs, mode="covers", labels=None, name="lattice", cap=None):
    """Validated lattice from cover or order pairs.

    The order is the reflexive-transitive closure of the pairs; cycles raise
    NotAPoset and missing unique bounds raise NotALattice with the offending
    pair.
    """
    if n < 1:
        raise ValueError("need at least one element")
    if mode not in ("covers", "leq"):
        raise ValueError(f"unknown mode {mode!r}")
    limit = cap if cap is not None else size_cap()
    if n > limit:
        raise SizeLimitExceeded(f"{n} elements exceeds cap {limit}")
    rel = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair {(a, b)} out of range")
        rel[a, b] = True
    leq = K.closure(rel)
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        a, b = np.argwhere(sym)[0]
        raise NotAPoset((int(a), int(b)))
    return _make(leq, labels=labels, name=name)


def chain(m, name=None):
    """Total order on m elements."""
    if m < 1:
        raise ValueError("need at least one element")
    if m > size_cap():
        raise SizeLimitExceeded(f"{m} elements exceeds cap {size_cap()}")
    idx = np.arange(m)
    leq = idx[:, None] <= idx[None, :]
    join = np.maximum(idx[:, None], idx[None, :]).astype(np.intp)
    meet = np.minimum(idx[:, None], idx[None, :]).astype(np.intp)
    return _make(leq, name=name or f"chain{m}", tables=(join, meet))


def boolean_lattice(k, name=None):
    """Subsets of a k-element set ordered by inclusion; element i is bitmask i."""
    if k < 0:
        raise ValueError("need a nonnegative atom count")
    n = 1 << k
    if n > size_cap():
        raise SizeLimitExceeded(f"2^{k} elements exceeds cap {size_cap()}")
    idx = np.arange(n)
    leq = (idx[:, None] & idx[None, :]) == idx[:, None]
    join = (idx[:, None] | idx[None, :]).astype(np.intp)
    meet = (idx[:, None] & idx[None, :]).astype(np.intp)
    return _make(leq, name=name or f"bool{k}", tables=(join, meet))


def is_distributive(lat):
    """(True, None) or (False, witness triple (a, b, c))."""
    n = lat.n
    cols = np.arange(n)
    for a in range(n):
        lhs = lat.meet[lat.join[a][:, None], cols[None, :]]  # lhs[b, c] = (a v b) ^ c
        rhs = lat.join[lat.meet[a][None, :], lat.meet]  # rhs[b, c] = (a ^ c) v (b ^ c)
        if (lhs != rhs).any():
            b, c = np.argwhere(lhs != rhs)[0]
            return False, (a, int(b), int(c))
    return True, None


def dual_lattice(lat):
    """Order reversed, join/meet and bottom/top swapped; an involution."""
    return Lattice(
        n=lat.n,
        leq=_freeze(np.ascontiguousarray(lat.leq.T)),
        join=lat.meet,
        meet=lat.join,
        bottom=lat.top,
        top=lat.bottom,
        labels=lat.labels,
        name=f"dual({lat.name})" if not lat.name.startswith("dual(") else lat.name[5:-1],
    )


def atoms(lat):
    """Minimal elements above bottom."""
    strict = lat.leq & ~np.eye(lat.n, dtype=bool)
    above_bottom = np.flatnonzero(strict[lat.bottom])
    out = [int(x) for x in above_bottom if not (strict[lat.bottom] & strict[:, x]).any()]
    return set(out)


def coatoms(lat):
    """Maximal elements below top."""
    strict = lat.leq & ~np.eye(lat.n, dtype=bool)
    below_top = np.flatnonzero(strict[:, lat.top])
    out = [int(x) for x in below_top if not (strict[x] & strict[:, lat.top]).any()]
    return set(out)


def interval(lat, a, b):
    """Elements z with a <= z <= b."""
    if not lat.leq[a, b]:
        raise NotComparable(a, b)
    members = tuple(int(z) for z in np.flatnonzero(lat.leq[a] & lat.leq[:, b]))
    return Interval(lat, a, b, members)


def interval_lattice(lat, a, b, name=None):
    """The interval [a, b] as a lattice of its own.

    Returns (sub, members) where members[i] is the parent element of sub
    element i. Intervals are closed under the parent join and meet, so the
    tables restrict directly.
    """
    iv = interval(lat, a, b)
    members = np.array(iv.members, dtype=np.intp)
    pos = np.full(lat.n, -1, dtype=np.intp)
    pos[members] = np.arange(members.size)
    leq = lat.leq[np.ix_(members, members)]
    join = pos[lat.join[np.ix_(members, members)]]
    meet = pos[lat.meet[np.ix_(members, members)]]
    labels = tuple(lat.label(int(m)) for m in members) if lat.labels else None
    sub = _make(
        leq,
        labels=labels,
        name=name or f"{lat.name}[{a},{b}]",
        tables=(join.astype(np.intp), meet.astype(np.intp)),
    )
    return sub, tuple(int(m) for m in members)


def _signatures(lat):
    strict = lat.leq & ~np.eye(lat.n, dtype=bool)
    down = strict.sum(axis=0)
    up = strict.sum(axis=1)
    cover = np.zeros((lat.n, lat.n), dtype=bool)
    for i, j in lat.covers():
        cover[i, j] = True
    # rank = longest chain length from bottom, by scanning in linear extension order
    order = np.argsort(down, kind="stable")
    rank = np.zeros(lat.n, dtype=int)
    for x in order:
        below = np.flatnonzero(cover[:, x])
        if below.size:
            rank[x] = max(rank[b] for b in below) + 1
    return [
        (int(rank[x]), int(cover[x].sum()), int(cover[:, x].sum()), int(up[x]), int(down[x]))
        for x in range(lat.n)
    ]


def automorphisms(lat, cap=None):
    """All order-preserving bijections, found by signature-pruned backtracking.

    The identity is always present; the result is closed under composition
    and inverse (it is the automorphism group).
    """
    return isomorphisms(lat, lat, cap=cap)


def isomorphisms(lat_a, lat_b, cap=None):
    """All bijections g with x <= y in lat_a iff g(x) <= g(y) in lat_b."""
    limit = cap if cap is not None else size_cap()
    if lat_a.n > limit or lat_b.n > limit:
        raise SizeLimitExceeded("lattice too large for isomorphism search")
    if lat_a.n != lat_b.n:
        return []
    sig_a = _signatures(lat_a)
    sig_b = _signatures(lat_b)
    if sorted(sig_a) != sorted(sig_b):
        return []
    n = lat_a.n
    candidates = [[y for y in range(n) if sig_b[y] == sig_a[x]] for x in range(n)]
    # assign most-constrained elements first
    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))
    leq_a, leq_b = lat_a.leq, lat_b.leq
    image = [-1] * n
    used = [False] * n
    found = []

    def extend(depth):
        if depth == n:
            found.append(tuple(image))
            return
        x = order[depth]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for d in range(depth):
                z = order[d]
                if leq_a[x, z] != leq_b[y, image[z]] or leq_a[z, x] != leq_b[image[z], y]:
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                extend(depth + 1)
                used[y] = False
                image[x] = -1

    extend(0)
    return sorted(found)
