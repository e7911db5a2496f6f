"""Small elements of finite lattices and the relation they induce.

An element is small when joining it with anything proper stays proper. The
induced relation (a pair relates when the upper one is small in the filter
of the lower) is a transitive join-shift relation on every finite lattice,
so its series radical exists; here it also coincides with the join of all
small elements and with the meet of the coatoms. Norm-closure subtleties
that separate these notions in the non-unital analytic setting have no
finite counterpart, so the identities are asserted universally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import relcalc as rc
from .errors import InternalCheckError
from .lattice import Lattice, coatoms, interval_lattice
from .report import VerdictReport


def is_small(lat, x):
    """x v k stays below top for every proper k; top itself only in the
    one-element lattice."""
    if lat.n == 1:
        return True
    row = lat.join[x]
    proper = np.arange(lat.n) != lat.top
    return bool((row[proper] != lat.top).all())


def small_elements(lat):
    return {x for x in range(lat.n) if is_small(lat, x)}


def s_a(lat):
    """Join of all small elements; small itself on finite lattices."""
    return lat.join_all(small_elements(lat))


def rel_sm(lat):
    """I ~ J iff I <= J and J is small in the filter [I, top]."""
    n = lat.n
    rel = np.zeros((n, n), dtype=bool)
    for lo in range(n):
        members = np.flatnonzero(lat.leq[lo])
        if members.size == 1:
            rel[lo, lo] = True
            continue
        proper = members[members != lat.top]
        for j in members:
            if j == lat.top:
                rel[lo, j] = lo == lat.top
            else:
                rel[lo, j] = bool((lat.join[j, proper] != lat.top).all())
    return rc.Relation(lat, rel)


def r_sm_tri(lat):
    """Series radical of the small-element relation.

    Verified on the way out: it dominates every small element and its filter
    carries no other small elements.
    """
    rel = rel_sm(lat)
    r = rc.radical_r_order(rc.rel_tri_right(rel))
    smalls = small_elements(lat)
    if not all(lat.leq[x, r] for x in smalls):
        raise InternalCheckError("series radical misses a small element")
    upper, _ = interval_lattice(lat, r, lat.top)
    if not small_elements(upper) <= {0}:
        raise InternalCheckError("small elements survive above the series radical")
    return r


def rad_k(lat):
    """Meet of all coatoms; the empty meet (one-element lattice) is top."""
    return lat.meet_all(coatoms(lat))


def check_sm_structure(lat):
    """Shape of the small-element relation: transitivity, the shift law,
    series-order collapse, and the transfer laws for quotients and ideals."""
    rep = VerdictReport("sm-structure")
    rel = rel_sm(lat)
    chk = rc.is_transitive(rel)
    rep.add("transitive", "small relation is transitive", chk.ok, chk.witness)
    chk = rc.is_h_relation(rel)
    rep.add("join-shift", "small relation obeys the join-shift law", chk.ok, chk.witness)
    chk = rc.is_r_order(rel)
    rep.add("r-order", "small relation is a series order", chk.ok, chk.witness)
    ok, w = rc.matrix_diff(rel.rel, rc.rel_tri_right(rel).rel)
    rep.add("closure-fixed", "series closure adds nothing", ok, w)

    smalls = small_elements(lat)
    bad = None
    for j in smalls:
        for i in range(lat.n):
            if not rel.rel[i, int(lat.join[i, j])]:
                bad = (i, int(j))
                break
        if bad:
            break
    rep.add("image-small", "images of small elements are small in every filter", bad is None, bad)

    bad = None
    for i in range(lat.n):
        for j in np.flatnonzero(lat.leq[i]):
            whole = is_small(lat, int(j))
            split = is_small(lat, i) and bool(rel.rel[i, j])
            if whole != split:
                bad = (i, int(j), {"whole": whole, "split": split})
                break
        if bad:
            break
    rep.add(
        "two-of-three",
        "an element is small exactly when a lower one is small and it is small in that filter",
        bad is None,
        bad,
    )

    bad = None
    for j in range(lat.n):
        sub, members = interval_lattice(lat, lat.bottom, j)
        for pos, i in enumerate(members):
            if is_small(sub, pos) and not is_small(lat, i):
                bad = (i, j)
                break
        if bad:
            break
    rep.add("ideal-transfer", "small in an ideal implies small in the whole lattice", bad is None, bad)

    bad = None
    for x in smalls:
        for y in smalls:
            if not is_small(lat, int(lat.join[x, y])):
                bad = (x, y)
                break
        if bad:
            break
    rep.add("join-of-small", "joins of small elements are small", bad is None, bad)

    bad = None
    for y in smalls:
        for x in np.flatnonzero(lat.leq[:, y]):
            if not is_small(lat, int(x)):
                bad = (int(x), y)
                break
        if bad:
            break
    rep.add("downward", "everything below a small element is small", bad is None, bad)
    return rep


def check_c4(lat):
    """The three small radicals coincide: coatom meet, small join, series."""
    rep = VerdictReport("c4")
    rk, sa, rt = rad_k(lat), s_a(lat), r_sm_tri(lat)
    rep.add(
        "triple-equal",
        "coatom meet, join of smalls, and series radical agree",
        rk == sa == rt,
        {"coatom_meet": rk, "small_join": sa, "series": rt},
    )
    rep.add("sa-small", "the join of all small elements is small", is_small(lat, sa), sa)
    return rep


def check_t61(lat):
    """When the small join is complemented (or its whole ideal is small),
    the filter above it carries no further small elements.

    On a finite lattice the join of all small elements is itself small (the
    finite-join law), so the complement hypothesis can never hold and the
    clause reports not-applicable; it marks the boundary of the finite case
    rather than exercising it. The substantive finite statement, that the
    filter above the small join has no nonzero small elements, is asserted
    unconditionally by r_sm_tri and the triple-equality check.
    """
    rep = VerdictReport("t61")
    sa = s_a(lat)
    if is_small(lat, sa) or sa == lat.top:
        rep.skip("direct-sum", "complement hypothesis", "small join is small or improper")
        return rep
    complements = [
        r
        for r in range(lat.n)
        if lat.join[sa, r] == lat.top and lat.meet[sa, r] == lat.bottom
    ]
    if complements:
        upper, _ = interval_lattice(lat, sa, lat.top)
        ok = small_elements(upper) <= {0}
        rep.add("direct-sum", "no small elements above a complemented small join", ok,
                {"complement": complements[0]})
    else:
        rep.skip("direct-sum", "complement hypothesis", "no complement exists")
    below = [x for x in range(lat.n) if lat.leq[x, sa] and x != lat.bottom and x != sa]
    if below and all(is_small(lat, x) for x in below):
        upper, _ = interval_lattice(lat, sa, lat.top)
        ok = small_elements(upper) <= {0}
        rep.add("small-interior", "no small elements above an all-small ideal", ok, None)
    else:
        rep.skip("small-interior", "all-small hypothesis", "interior has non-small elements")
    return rep


def check_ccr_corollary(universe):
    """Model algebras have Boolean ideal lattices, so the zero ideal is the
    only small one."""
    rep = VerdictReport("ccr")
    bad = None
    for algebra in universe:
        lat = algebra.ideal_lattice()
        smalls = small_elements(lat)
        if smalls != {lat.bottom} and lat.n > 1:
            bad = (algebra, sorted(smalls))
            break
        if lat.n == 1 and smalls != {0}:
            bad = (algebra, sorted(smalls))
            break
    rep.add("only-zero-small", "only the zero ideal is small in any model algebra", bad is None, bad)
    return rep


@dataclass
class SmallAnalysis:
    lattice: Lattice
    small_set: set
    s_a: int
    rel_sm: rc.Relation
    r_sm_tri: int
    rad_k: int

    @staticmethod
    def of(lat):
        return SmallAnalysis(
            lattice=lat,
            small_set=small_elements(lat),
            s_a=s_a(lat),
            rel_sm=rel_sm(lat),
            r_sm_tri=r_sm_tri(lat),
            rad_k=rad_k(lat),
        )

    def to_json_obj(self):
        return {
            "lattice": self.lattice.name,
            "n": self.lattice.n,
            "small": sorted(self.small_set),
            "small_join": self.s_a,
            "series_radical": self.r_sm_tri,
            "coatom_meet": self.rad_k,
            "relation_pairs": sorted(self.rel_sm.pairs(strict=True)),
        }
