"""Finite-dimensional matrix-block algebra models.

An algebra is a multiset of full matrix-block sizes; its ideals are exactly
the index subsets, so the ideal lattice is Boolean and every extension splits
as a direct sum. That splitting makes extension stability equivalent to
closure under disjoint multiset union here, which is narrower than in
general; nothing in this package claims otherwise.

Property-induced relations live on the Boolean ideal lattice (element i is
the bitmask of selected blocks), where the relation calculus computes series
closures and radicals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import relcalc as rc
from .errors import NoUniqueRadical, NotEquivariant, SizeLimitExceeded
from .lattice import block_cap, boolean_lattice
from .properties import (
    SemProp,
    compile_property,
    op_G,
    op_GPi,
    op_R,
    op_dG,
    same_over,
    subset_over,
)
from .report import VerdictReport


@dataclass(frozen=True, order=True)
class ModelAlgebra:
    blocks: tuple  # sorted ascending, every entry >= 1; () is the zero algebra

    @staticmethod
    def of(sizes):
        sizes = tuple(sorted(int(s) for s in sizes))
        if any(s < 1 for s in sizes):
            raise ValueError("block sizes must be positive")
        return ModelAlgebra(sizes)

    @staticmethod
    def parse(text):
        text = text.strip()
        if not text:
            return ModelAlgebra(())
        return ModelAlgebra.of(text.split(","))

    def format(self):
        return ",".join(str(s) for s in self.blocks)

    @property
    def num_blocks(self):
        return len(self.blocks)

    @property
    def dim(self):
        return sum(s * s for s in self.blocks)

    @property
    def is_zero(self):
        return not self.blocks

    @property
    def full_mask(self):
        return (1 << self.num_blocks) - 1

    def sub(self, mask):
        """The ideal selected by mask, as an algebra of its own."""
        return ModelAlgebra(tuple(s for i, s in enumerate(self.blocks) if mask >> i & 1))

    def quotient(self, mask):
        return ModelAlgebra(tuple(s for i, s in enumerate(self.blocks) if not mask >> i & 1))

    def subquotient(self, jmask, imask):
        """Blocks of J not in I, for I below J."""
        return self.sub(jmask & ~imask)

    def one_block(self, i):
        return ModelAlgebra((self.blocks[i],))

    def indices(self, mask):
        return tuple(i for i in range(self.num_blocks) if mask >> i & 1)

    def mask_of(self, indices):
        out = 0
        for i in indices:
            out |= 1 << i
        return out

    def ideal_lattice(self):
        if self.num_blocks > block_cap():
            raise SizeLimitExceeded(
                f"{self.num_blocks} blocks exceeds cap {block_cap()}"
            )
        return boolean_lattice(self.num_blocks)

    def __repr__(self):
        return f"ModelAlgebra([{self.format()}])"


@dataclass(frozen=True)
class IdealRef:
    algebra: ModelAlgebra
    indices: frozenset

    @staticmethod
    def from_mask(algebra, mask):
        return IdealRef(algebra, frozenset(algebra.indices(mask)))

    @property
    def mask(self):
        return self.algebra.mask_of(self.indices)

    @property
    def as_algebra(self):
        return self.algebra.sub(self.mask)

    @property
    def is_full(self):
        return len(self.indices) == self.algebra.num_blocks

    def __repr__(self):
        inner = ",".join(f"block#{i}" for i in sorted(self.indices))
        return "{" + inner + "}"


def enumerate_algebras(max_blocks, max_block_size):
    """All canonical algebras with at most max_blocks blocks of bounded size,
    zero algebra included, ordered by block count then lexicographically."""
    if max_blocks < 0 or max_block_size < 0:
        raise ValueError("bounds must be nonnegative")
    if max_blocks > block_cap():
        raise SizeLimitExceeded(f"{max_blocks} blocks exceeds cap {block_cap()}")
    out = [ModelAlgebra(())]
    level = [()]
    for _ in range(max_blocks):
        nxt = []
        for tup in level:
            lo = tup[-1] if tup else 1
            for s in range(lo, max_block_size + 1):
                nxt.append(tup + (s,))
        out.extend(ModelAlgebra(t) for t in nxt)
        level = nxt
    return out


def close_universe(algebras):
    """Sub-multiset closure; returns (sorted universe, added members)."""
    seen = set()
    for algebra in algebras:
        full = algebra.full_mask
        mask = 0
        while True:
            seen.add(algebra.sub(mask))
            if mask == full:
                break
            mask = (mask - full) & full
    given = set(algebras)
    universe = sorted(seen, key=lambda a: (a.num_blocks, a.blocks))
    added = sorted(seen - given, key=lambda a: (a.num_blocks, a.blocks))
    return universe, added


# ---------------------------------------------------------------------------
# property-induced relations and radicals


def eval_property(prop, algebra) -> bool:
    """Whether the algebra satisfies the property (expression or semantic)."""
    return compile_property(prop).test(algebra)


def relation_of_property(algebra, prop):
    """I ~ J iff I below J and the quotient J/I has the property."""
    sem = compile_property(prop)
    lat = algebra.ideal_lattice()
    n = lat.n
    rel = np.zeros((n, n), dtype=bool)
    for j in range(n):
        sub = j
        while True:
            rel[sub, j] = sem.test(algebra.subquotient(j, sub))
            if sub == 0:
                break
            sub = (sub - 1) & j
    return rc.Relation(lat, rel)


def radical_tri(algebra, prop):
    """Largest ideal reachable from zero by an ascending property series.

    Unique whenever the property is quotient stable; otherwise the candidate
    set may be empty or ambiguous and NoUniqueRadical carries it.
    """
    rel = relation_of_property(algebra, prop)
    tri = rc.rel_tri_right(rel)
    rads = rc.find_radicals(tri)
    if len(rads) != 1:
        raise NoUniqueRadical(rads)
    return IdealRef.from_mask(algebra, next(iter(rads)))


def dual_radical_tri(algebra, prop):
    """Smallest ideal reaching the whole algebra by a descending series."""
    rel = relation_of_property(algebra, prop)
    tri = rc.rel_tri_left(rel)
    rads = rc.find_dual_radicals(tri)
    if len(rads) != 1:
        raise NoUniqueRadical(rads)
    return IdealRef.from_mask(algebra, next(iter(rads)))


# ---------------------------------------------------------------------------
# stability


def is_lower_stable(prop, universe):
    """Closed under ideals (sub-multisets) over the universe."""
    sem = compile_property(prop)
    for algebra in universe:
        if not sem.test(algebra):
            continue
        full = algebra.full_mask
        for mask in range(full + 1):
            if not sem.test(algebra.sub(mask)):
                return rc.Check(False, (algebra, IdealRef.from_mask(algebra, mask)))
    return rc.Check(True)


def is_upper_stable(prop, universe):
    """Closed under quotients over the universe."""
    sem = compile_property(prop)
    for algebra in universe:
        if not sem.test(algebra):
            continue
        full = algebra.full_mask
        for mask in range(full + 1):
            if not sem.test(algebra.quotient(mask)):
                return rc.Check(False, (algebra, IdealRef.from_mask(algebra, mask)))
    return rc.Check(True)


def is_extension_stable(prop, universe):
    """Ideal and quotient in the property force the whole algebra in.

    Extensions split here, so this is closure under disjoint multiset union.
    """
    sem = compile_property(prop)
    for algebra in universe:
        if sem.test(algebra):
            continue
        full = algebra.full_mask
        for mask in range(full + 1):
            if sem.test(algebra.sub(mask)) and sem.test(algebra.quotient(mask)):
                return rc.Check(False, (algebra, IdealRef.from_mask(algebra, mask)))
    return rc.Check(True)


# ---------------------------------------------------------------------------
# theorem checks


def check_t41(prop, universe):
    """Stability of the property versus the shift laws of its relation."""
    rep = VerdictReport("t41")
    upper = is_upper_stable(prop, universe)
    all_h = rc.Check(True)
    for algebra in universe:
        chk = rc.is_h_relation(relation_of_property(algebra, prop))
        if not chk.ok:
            all_h = rc.Check(False, (algebra, chk.witness))
            break
    rep.add(
        "upper-iff-join-shift",
        "quotient stability holds exactly when every induced relation obeys the join-shift law",
        upper.ok == all_h.ok,
        {"upper": upper.ok, "witness": (upper.witness or all_h.witness)},
    )
    if upper.ok and all_h.ok:
        bad = None
        for algebra in universe:
            try:
                radical_tri(algebra, prop)
            except NoUniqueRadical as exc:
                bad = (algebra, exc.candidates)
                break
        rep.add("ascending-radical", "series closure has a unique radical everywhere", bad is None, bad)

    lower = is_lower_stable(prop, universe)
    all_dh = rc.Check(True)
    for algebra in universe:
        chk = rc.is_dual_h_relation(relation_of_property(algebra, prop))
        if not chk.ok:
            all_dh = rc.Check(False, (algebra, chk.witness))
            break
    rep.add(
        "lower-iff-meet-shift",
        "ideal stability holds exactly when every induced relation obeys the meet-shift law",
        lower.ok == all_dh.ok,
        {"lower": lower.ok, "witness": (lower.witness or all_dh.witness)},
    )
    if lower.ok and all_dh.ok:
        bad = None
        for algebra in universe:
            try:
                dual_radical_tri(algebra, prop)
            except NoUniqueRadical as exc:
                bad = (algebra, exc.candidates)
                break
        rep.add("descending-radical", "series closure has a unique dual radical everywhere", bad is None, bad)
    return rep


_POOL_KEYS = ("comm", "one", "simple", "blockdim<=2", "dim<=4")


def _pool():
    from .properties import parse_property

    return [compile_property(parse_property(t)) for t in _POOL_KEYS]


def check_closure_laws(prop, universe, operators=("G", "dG", "R", "GPi")):
    """Extensivity, idempotence, monotonicity, and the collapse rule for the
    closure-type operators, each gated on its stability hypothesis."""
    from .properties import op_or

    rep = VerdictReport("closure-laws")
    sem = compile_property(prop)
    upper = is_upper_stable(sem, universe).ok
    lower = is_lower_stable(sem, universe).ok
    table = {"G": (op_G, upper, "quotient"), "R": (op_R, upper, "quotient"),
             "GPi": (op_GPi, upper, "quotient"), "dG": (op_dG, lower, "ideal")}
    for name in operators:
        op, hyp_ok, hyp_name = table[name]
        if not hyp_ok:
            rep.skip(f"{name}-laws", f"{name} closure laws", f"{hyp_name} stability does not hold")
            continue
        once = op(sem)
        ok, w = subset_over(sem, once, universe)
        rep.add(f"{name}-extensive", f"{name} only enlarges the property", ok, w)
        ok, w = same_over(once, op(once), universe)
        rep.add(f"{name}-idempotent", f"{name} applied twice equals once", ok, w)
        bad = None
        for other in [op_or(sem, _pool()[0]), compile_property(_parse("all"))]:
            bigger_ok, _ = subset_over(sem, other, universe)
            hyp = is_upper_stable(other, universe).ok if hyp_name == "quotient" else is_lower_stable(other, universe).ok
            if not (bigger_ok and hyp):
                continue
            ok, w = subset_over(once, op(other), universe)
            if not ok:
                bad = (other.key, w)
                break
        rep.add(f"{name}-monotone", f"{name} preserves containment", bad is None, bad)
        bad = None
        for mid in _pool():
            between_ok, _ = subset_over(mid, once, universe)
            if not between_ok:
                continue
            joined = op_or(sem, mid)
            ok, w = same_over(once, op(joined), universe)
            if not ok:
                bad = (mid.key, w)
                break
        rep.add(
            f"{name}-collapse",
            f"anything between the property and its {name} closure has the same closure",
            bad is None,
            bad,
        )
    return rep


def _parse(text):
    from .properties import parse_property

    return parse_property(text)


def _between(lo, hi):
    """All masks K with lo <= K <= hi, ascending."""
    rem = hi & ~lo
    sub = 0
    while True:
        yield lo | sub
        if sub == rem:
            return
        sub = (sub - rem) & rem


def _upset_derived_relation(algebra, sem):
    """Independent derivation: I ~ J iff every K in [I, J) has a successor
    L in (K, J] whose quotient has the property. Used to cross-check the
    series-closure identity without the shared kernels."""
    n = 1 << algebra.num_blocks
    rel = np.zeros((n, n), dtype=bool)
    for j in range(n):
        for i in _between(0, j):
            good = True
            for k in _between(i, j):
                if k == j:
                    continue
                if not any(
                    sem.test(algebra.subquotient(ell, k))
                    for ell in _between(k, j)
                    if ell != k
                ):
                    good = False
                    break
            rel[i, j] = good
    return rel


def check_structure_theorems(prop, universe):
    """Identities tying operator-enlarged properties to derived relations,
    radical coincidences, stability propagation, and the transitivity and
    series-order characterizations, over a sub-multiset-closed universe."""
    from .properties import op_NG, op_dNG

    rep = VerdictReport("structure")
    sem = compile_property(prop)
    upper = is_upper_stable(sem, universe)
    lower = is_lower_stable(sem, universe)

    if upper.ok:
        gp, ngp = op_G(sem), op_NG(sem)
        bad_tri = bad_up = bad_left = bad_rad = None
        for algebra in universe:
            base = relation_of_property(algebra, prop)
            gp_rel = relation_of_property(algebra, gp)
            ok, w = rc.matrix_diff(gp_rel.rel, rc.rel_tri_right(base).rel)
            if not ok and bad_tri is None:
                bad_tri = (algebra, w)
            ok, w = rc.matrix_diff(gp_rel.rel, _upset_derived_relation(algebra, sem))
            if not ok and bad_up is None:
                bad_up = (algebra, w)
            ngp_rel = relation_of_property(algebra, ngp)
            ok, w = rc.matrix_diff(ngp_rel.rel, rc.comp_left(base).rel)
            if not ok and bad_left is None:
                bad_left = (algebra, w)
            try:
                r_tri = radical_tri(algebra, prop).mask
                r_gp = rc.radical_r_order(gp_rel)
                duals = rc.find_dual_radicals(ngp_rel)
                if not (r_tri == r_gp and duals == {r_tri}) and bad_rad is None:
                    bad_rad = (algebra, {"tri": r_tri, "gp": r_gp, "ngp": sorted(duals)})
            except NoUniqueRadical as exc:
                if bad_rad is None:
                    bad_rad = (algebra, exc.candidates)
        rep.add("gp-eq-tri", "enlarged-property relation equals ascending closure", bad_tri is None, bad_tri)
        rep.add("gp-eq-stepwise", "enlarged-property relation equals stepwise-successor derivation", bad_up is None, bad_up)
        rep.add("ngp-eq-left", "void-property relation equals the left complement", bad_left is None, bad_left)
        rep.add("radical-triple", "series, enlarged, and void radicals coincide", bad_rad is None, bad_rad)
        chk = is_extension_stable(gp, universe)
        rep.add("gp-extension-stable", "enlarged property is extension stable", chk.ok, chk.witness)
        chk = is_extension_stable(ngp, universe)
        rep.add("ngp-extension-stable", "void property is extension stable", chk.ok, chk.witness)

        bad = None
        for algebra in universe:
            r_a = radical_tri(algebra, prop).mask
            for imask in range(algebra.full_mask + 1):
                part = algebra.sub(imask)
                r_i = radical_tri(part, prop).mask
                embedded = algebra.mask_of(
                    algebra.indices(imask)[pos] for pos in part.indices(r_i)
                )
                if embedded & ~r_a:
                    bad = (algebra, IdealRef.from_mask(algebra, imask))
                    break
            if bad:
                break
        rep.add("ideal-radical-monotone", "radical of an ideal sits inside the radical", bad is None, bad)

        bad = None
        for algebra in universe:
            sem_a = compile_property(prop)
            for imask in range(algebra.full_mask + 1):
                for jmask in range(algebra.full_mask + 1):
                    if (imask | jmask) == algebra.full_mask and sem_a.test(algebra.sub(jmask)):
                        if not sem_a.test(algebra.quotient(imask)):
                            bad = (algebra, imask, jmask)
                            break
                if bad:
                    break
            if bad:
                break
        rep.add("covering-quotient", "a covering property ideal forces a property quotient", bad is None, bad)

        if lower.ok:
            bad = None
            for algebra in universe:
                base = relation_of_property(algebra, prop)
                for imask in range(algebra.full_mask + 1):
                    part = algebra.sub(imask)
                    r_i = algebra.mask_of(
                        algebra.indices(imask)[pos]
                        for pos in part.indices(radical_tri(part, prop).mask)
                    )
                    for jmask in range(algebra.full_mask + 1):
                        if base.rel[r_i, jmask] and (imask & jmask) != r_i:
                            bad = (algebra, imask, jmask)
                            break
                    if bad:
                        break
                if bad:
                    break
            rep.add(
                "ideal-radical-trace",
                "ideals trace property steps from an ideal radical back to it",
                bad is None,
                bad,
            )

    if lower.ok:
        dgp, dngp = op_dG(sem), op_dNG(sem)
        bad_tri = bad_lo = bad_right = bad_rad = None
        for algebra in universe:
            base = relation_of_property(algebra, prop)
            dgp_rel = relation_of_property(algebra, dgp)
            ok, w = rc.matrix_diff(dgp_rel.rel, rc.rel_tri_left(base).rel)
            if not ok and bad_tri is None:
                bad_tri = (algebra, w)
            ok, w = rc.matrix_diff(dgp_rel.rel, _loset_derived_relation(algebra, sem))
            if not ok and bad_lo is None:
                bad_lo = (algebra, w)
            dngp_rel = relation_of_property(algebra, dngp)
            ok, w = rc.matrix_diff(dngp_rel.rel, rc.comp_right(base).rel)
            if not ok and bad_right is None:
                bad_right = (algebra, w)
            try:
                p_tri = dual_radical_tri(algebra, prop).mask
                p_dgp = rc.dual_radical_r_order(dgp_rel)
                prims = rc.find_radicals(dngp_rel)
                if not (p_tri == p_dgp and prims == {p_tri}) and bad_rad is None:
                    bad_rad = (algebra, {"tri": p_tri, "dgp": p_dgp, "dngp": sorted(prims)})
            except NoUniqueRadical as exc:
                if bad_rad is None:
                    bad_rad = (algebra, exc.candidates)
        rep.add("dgp-eq-tri", "dual-enlarged relation equals descending closure", bad_tri is None, bad_tri)
        rep.add("dgp-eq-stepwise", "dual-enlarged relation equals stepwise-predecessor derivation", bad_lo is None, bad_lo)
        rep.add("dngp-eq-right", "dual-void relation equals the right complement", bad_right is None, bad_right)
        rep.add("dual-radical-triple", "descending, dual-enlarged, and dual-void radicals coincide", bad_rad is None, bad_rad)
        chk = is_extension_stable(dgp, universe)
        rep.add("dgp-extension-stable", "dual-enlarged property is extension stable", chk.ok, chk.witness)
        chk = is_extension_stable(dngp, universe)
        rep.add("dngp-extension-stable", "dual-void property is extension stable", chk.ok, chk.witness)

        bad = None
        for algebra in universe:
            for imask in range(algebra.full_mask + 1):
                quot = algebra.quotient(imask)
                try:
                    p_quot = dual_radical_tri(quot, prop).mask
                except NoUniqueRadical:
                    bad = (algebra, imask, "no unique dual radical")
                    break
                if p_quot:
                    continue
                base = relation_of_property(algebra, prop)
                if not rc.rel_tri_left(base).rel[imask, algebra.full_mask]:
                    bad = (algebra, imask, "quotient vanishing without descent")
                    break
                part = algebra.sub(imask)
                p_i = algebra.mask_of(
                    algebra.indices(imask)[pos]
                    for pos in part.indices(dual_radical_tri(part, prop).mask)
                )
                if p_i != dual_radical_tri(algebra, prop).mask:
                    bad = (algebra, imask, "dual radical not inherited from the ideal")
                    break
            if bad:
                break
        rep.add(
            "quotient-vanishing-transfer",
            "a vanishing quotient dual radical pushes the dual radical into the ideal",
            bad is None,
            bad,
        )

    if upper.ok and lower.ok:
        gp = op_G(sem)
        ok1 = is_lower_stable(gp, universe)
        ok2 = is_upper_stable(gp, universe)
        rep.add(
            "gp-two-sided-stable",
            "enlarged property inherits two-sided stability",
            ok1.ok and ok2.ok,
            ok1.witness or ok2.witness,
        )

    trans_all = rc.Check(True)
    for algebra in universe:
        chk = rc.is_transitive(relation_of_property(algebra, prop))
        if not chk.ok:
            trans_all = rc.Check(False, (algebra, chk.witness))
            break
    ext = is_extension_stable(sem, universe)
    rep.add(
        "transitive-iff-extension",
        "induced relations are transitive exactly when the property is extension stable",
        trans_all.ok == ext.ok,
        {"transitive": trans_all.ok, "extension": ext.ok,
         "witness": trans_all.witness or ext.witness},
    )

    if upper.ok:
        e_collapse, _ = same_over(op_G(sem), sem, universe)
        e_rorder = rc.Check(True)
        for algebra in universe:
            chk = rc.is_r_order(relation_of_property(algebra, prop))
            if not chk.ok:
                e_rorder = rc.Check(False, (algebra, chk.witness))
                break
        sums_ok = True
        for algebra in universe:
            masks = [m for m in range(algebra.full_mask + 1) if sem.test(algebra.sub(m))]
            for m1 in masks:
                for m2 in masks:
                    if not sem.test(algebra.sub(m1 | m2)):
                        sums_ok = False
                        break
                if not sums_ok:
                    break
            if not sums_ok:
                break
        e_sum = ext.ok and sums_ok
        rep.add(
            "closed-characterization",
            "closure-stable property, series-order relations, and sum-closure agree",
            e_collapse == e_rorder.ok == e_sum,
            {"stable": e_collapse, "r_order": e_rorder.ok, "sums": e_sum},
        )

    if lower.ok:
        e_collapse, _ = same_over(op_dG(sem), sem, universe)
        e_dorder = rc.Check(True)
        for algebra in universe:
            chk = rc.is_dual_r_order(relation_of_property(algebra, prop))
            if not chk.ok:
                e_dorder = rc.Check(False, (algebra, chk.witness))
                break
        coind_ok = True
        for algebra in universe:
            masks = [m for m in range(algebra.full_mask + 1) if sem.test(algebra.quotient(m))]
            for m1 in masks:
                for m2 in masks:
                    if not sem.test(algebra.quotient(m1 & m2)):
                        coind_ok = False
                        break
                if not coind_ok:
                    break
            if not coind_ok:
                break
        e_coind = lower.ok and ext.ok and coind_ok
        rep.add(
            "dual-closed-characterization",
            "dual-closure stability, dual series orders, and co-intersection closure agree",
            e_collapse == e_dorder.ok == e_coind,
            {"stable": e_collapse, "dual_r_order": e_dorder.ok, "coind": e_coind},
        )
    return rep


def _loset_derived_relation(algebra, sem):
    """Dual of the stepwise derivation: every K in (I, J] has a predecessor
    L in [I, K) whose quotient has the property."""
    n = 1 << algebra.num_blocks
    rel = np.zeros((n, n), dtype=bool)
    for j in range(n):
        for i in _between(0, j):
            good = True
            for k in _between(i, j):
                if k == i:
                    continue
                if not any(
                    sem.test(algebra.subquotient(k, ell))
                    for ell in _between(i, k)
                    if ell != k
                ):
                    good = False
                    break
            rel[i, j] = good
    return rel


def check_gp_collapse(small, mid, universe):
    """If one property sits between another and its enlargement, the two
    enlargements and both radicals agree everywhere."""
    rep = VerdictReport("gp-collapse")
    s, m = compile_property(small), compile_property(mid)
    gs = op_G(s)
    ok1, w1 = subset_over(s, m, universe)
    ok2, w2 = subset_over(m, gs, universe)
    rep.add("sandwich", "the middle property sits inside the enlargement", ok1 and ok2, w1 or w2)
    if ok1 and ok2:
        ok, w = same_over(gs, op_G(m), universe)
        rep.add("enlargement-equal", "both enlargements coincide", ok, w)
        bad = None
        for algebra in universe:
            if radical_tri(algebra, s).mask != radical_tri(algebra, m).mask:
                bad = algebra
                break
        rep.add("radical-equal", "both series radicals coincide", bad is None, bad)
    return rep


def check_c42n(prop, universe):
    """Radical anatomy per algebra: sum formula, extremality, witness series,
    successor dichotomy, and series containment, on both sides."""
    rep = VerdictReport("c42n")
    sem = compile_property(prop)
    if is_upper_stable(sem, universe).ok:
        bads = {k: None for k in ("sum", "extremal", "series", "successor", "no-succ", "contain")}
        for algebra in universe:
            base = relation_of_property(algebra, prop)
            tri = rc.rel_tri_right(base)
            lat = base.lattice
            r = rc.radical_r_order(tri)
            union = 0
            for j in range(lat.n):
                if tri.rel[0, j]:
                    union |= j
            if union != r and bads["sum"] is None:
                bads["sum"] = (algebra, r, union)
            left = rc.comp_left(tri)
            largest = all(not tri.rel[0, j] or lat.leq[j, r] for j in range(lat.n))
            smallest = left.rel[r, lat.top] and all(
                not left.rel[z, lat.top] or lat.leq[r, z] for z in range(lat.n)
            )
            if not (largest and smallest) and bads["extremal"] is None:
                bads["extremal"] = (algebra, r)
            for imask in range(lat.n):
                if lat.leq[imask, r]:
                    if not tri.rel[imask, r]:
                        bads["series"] = bads["series"] or (algebra, imask, "not related")
                    else:
                        wit = rc.series_witness(base, imask, r, "ascending")
                        if not wit.validate(base):
                            bads["series"] = bads["series"] or (algebra, imask, wit.chain)
                if not lat.leq[r, imask]:  # radical not inside I
                    if not any(base.rel[imask, j] and j != imask for j in range(lat.n)):
                        bads["successor"] = bads["successor"] or (algebra, imask)
                if tri.rel[0, imask] and not lat.leq[imask, r]:
                    bads["contain"] = bads["contain"] or (algebra, imask)
            if any(base.rel[r, j] and j != r for j in range(lat.n)):
                bads["no-succ"] = bads["no-succ"] or (algebra, r)
        rep.add("asc-sum", "radical is the union of ascending-reachable ideals", bads["sum"] is None, bads["sum"])
        rep.add("asc-extremal", "radical is extremal on both sides", bads["extremal"] is None, bads["extremal"])
        rep.add("asc-series", "every ideal below the radical carries a valid series", bads["series"] is None, bads["series"])
        rep.add("asc-successor", "ideals outside the radical filter have successors", bads["successor"] is None, bads["successor"])
        rep.add("asc-no-succ", "the radical has no successor", bads["no-succ"] is None, bads["no-succ"])
        rep.add("asc-contain", "series from zero stay inside the radical", bads["contain"] is None, bads["contain"])
    else:
        rep.skip("asc", "ascending clauses", "not quotient stable")

    if is_lower_stable(sem, universe).ok:
        bads = {k: None for k in ("meet", "extremal", "series", "pred", "no-pred", "contain")}
        for algebra in universe:
            base = relation_of_property(algebra, prop)
            tri = rc.rel_tri_left(base)
            lat = base.lattice
            p = rc.dual_radical_r_order(tri)
            inter = lat.top
            for j in range(lat.n):
                if tri.rel[j, lat.top]:
                    inter &= j
            if inter != p and bads["meet"] is None:
                bads["meet"] = (algebra, p, inter)
            right = rc.comp_right(tri)
            smallest = all(not tri.rel[j, lat.top] or lat.leq[p, j] for j in range(lat.n))
            largest = right.rel[0, p] and all(
                not right.rel[0, z] or lat.leq[z, p] for z in range(lat.n)
            )
            if not (largest and smallest) and bads["extremal"] is None:
                bads["extremal"] = (algebra, p)
            for imask in range(lat.n):
                if lat.leq[p, imask]:
                    if not tri.rel[p, imask]:
                        bads["series"] = bads["series"] or (algebra, imask, "not related")
                    else:
                        wit = rc.series_witness(base, p, imask, "descending")
                        if not wit.validate(base):
                            bads["series"] = bads["series"] or (algebra, imask, wit.chain)
                if not lat.leq[imask, p]:  # I not inside the dual radical
                    if not any(base.rel[j, imask] and j != imask for j in range(lat.n)):
                        bads["pred"] = bads["pred"] or (algebra, imask)
                if tri.rel[imask, lat.top] and not lat.leq[p, imask]:
                    bads["contain"] = bads["contain"] or (algebra, imask)
            if any(base.rel[j, p] and j != p for j in range(lat.n)):
                bads["no-pred"] = bads["no-pred"] or (algebra, p)
        rep.add("desc-meet", "dual radical is the intersection of descending-reaching ideals", bads["meet"] is None, bads["meet"])
        rep.add("desc-extremal", "dual radical is extremal on both sides", bads["extremal"] is None, bads["extremal"])
        rep.add("desc-series", "every ideal above the dual radical carries a valid series", bads["series"] is None, bads["series"])
        rep.add("desc-pred", "nonzero ideals outside the dual radical ideal have predecessors", bads["pred"] is None, bads["pred"])
        rep.add("desc-no-pred", "the dual radical has no predecessor", bads["no-pred"] is None, bads["no-pred"])
        rep.add("desc-contain", "series from the whole algebra stay above the dual radical", bads["contain"] is None, bads["contain"])
    else:
        rep.skip("desc", "descending clauses", "not ideal stable")
    return rep


def check_t36_t34(prop, universe):
    """Stability propagation and containments for the per-block operators."""
    rep = VerdictReport("t36-t34")
    sem = compile_property(prop)
    r_sem, gpi_sem = op_R(sem), op_GPi(sem)

    chk = is_upper_stable(r_sem, universe)
    rep.add("r-upper-stable", "per-block property is always quotient stable", chk.ok, chk.witness)
    ok, w = subset_over(r_sem, op_G(r_sem), universe)
    rep.add("r-below-gr", "per-block property sits inside its enlargement", ok, w)
    chk = is_upper_stable(gpi_sem, universe)
    rep.add("gpi-upper-stable", "per-image property is always quotient stable", chk.ok, chk.witness)
    ok1, w1 = subset_over(op_G(op_R(sem)), gpi_sem, universe)
    ok2, w2 = subset_over(op_R(op_G(sem)), gpi_sem, universe)
    rep.add("gpi-contains", "per-image property contains both operator compositions", ok1 and ok2, w1 or w2)
    chk = is_extension_stable(gpi_sem, universe)
    rep.add("gpi-extension-stable", "per-image property is extension stable", chk.ok, chk.witness)

    if is_lower_stable(sem, universe).ok:
        chk = is_lower_stable(r_sem, universe)
        rep.add("r-lower-stable", "per-block property inherits ideal stability", chk.ok, chk.witness)
        grp = op_G(r_sem)
        ok1 = is_lower_stable(grp, universe)
        ok2 = is_upper_stable(grp, universe)
        rep.add("grp-two-sided", "enlarged per-block property is two-sided stable", ok1.ok and ok2.ok, ok1.witness or ok2.witness)
        ok1, w1 = subset_over(r_sem, op_dG(r_sem), universe)
        ok2, w2 = subset_over(op_dG(r_sem), op_dG(sem), universe)
        rep.add("r-dg-chain", "per-block property chains into the dual enlargements", ok1 and ok2, w1 or w2)
        if is_upper_stable(sem, universe).ok:
            ok, w = same_over(op_dG(r_sem), op_dG(sem), universe)
            rep.add("dg-collapse", "dual enlargement ignores the per-block pass", ok, w)
            bad = None
            for algebra in universe:
                if dual_radical_tri(algebra, sem).mask != dual_radical_tri(algebra, r_sem).mask:
                    bad = algebra
                    break
            rep.add("dual-radical-collapse", "dual radicals agree with and without the per-block pass", bad is None, bad)
    return rep


# ---------------------------------------------------------------------------
# block maps


class BlockMap:
    """Equivariant selection of irreducible images (blocks), one subset per
    algebra. Selections must not distinguish equal-size blocks."""

    _serial = 0

    def __init__(self, name, predicate):
        BlockMap._serial += 1
        self.name = name
        self.key = ("blockmap", name, BlockMap._serial)  # distinct maps never share memo entries
        self._predicate = predicate
        self._memo = {}

    def select(self, algebra):
        hit = self._memo.get(algebra.blocks)
        if hit is None:
            chosen = frozenset(
                i for i in range(algebra.num_blocks) if self._predicate(algebra, i)
            )
            for i in range(algebra.num_blocks):
                for j in range(i + 1, algebra.num_blocks):
                    if algebra.blocks[i] == algebra.blocks[j] and (
                        (i in chosen) != (j in chosen)
                    ):
                        raise NotEquivariant(
                            f"map {self.name!r} splits equal blocks of {algebra}"
                        )
            hit = chosen
            self._memo[algebra.blocks] = hit
        return hit

    def __repr__(self):
        return f"BlockMap({self.name!r})"


def make_block_map(predicate, name="blockmap"):
    return BlockMap(name, predicate)


def size_block_map(wanted, name):
    """Selection by block size alone."""
    return BlockMap(name, lambda alg, i: wanted(alg.blocks[i]))


def r_f_member(block_map, algebra) -> bool:
    """Separating selection: the chosen images jointly see every block."""
    return len(block_map.select(algebra)) == algebra.num_blocks


def separating_property(block_map) -> SemProp:
    return SemProp(("rF",) + block_map.key, lambda alg: r_f_member(block_map, alg))


def check_compatible(block_map, universe):
    """Selections must transport along ideal embeddings and isomorphisms."""
    rep = VerdictReport("compatible")
    bad = None
    for algebra in universe:
        sel_a = block_map.select(algebra)
        for mask in range(algebra.full_mask + 1):
            part = algebra.sub(mask)
            idx = algebra.indices(mask)
            sel_i = block_map.select(part)
            for pos in sel_i:
                if idx[pos] not in sel_a:
                    bad = (algebra, IdealRef.from_mask(algebra, mask), idx[pos])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("ideal-embedding", "selected images of an ideal stay selected upstairs", bad is None, bad)
    rep.add("equivariance", "selection never splits equal blocks", True, None)
    return rep


def check_ideal_map(block_map, universe):
    """Selections must also pull back through quotients onto single blocks."""
    rep = VerdictReport("ideal-map")
    bad = None
    for algebra in universe:
        sel_a = block_map.select(algebra)
        for i in range(algebra.num_blocks):
            if block_map.select(algebra.one_block(i)) and i not in sel_a:
                bad = (algebra, i)
                break
        if bad:
            break
    rep.add("quotient-pullback", "a selected single-block image is selected in the whole algebra", bad is None, bad)
    return rep


def check_t310(block_map, universe):
    """The separating property absorbs one per-image pass, and for quotient
    pullback maps collapses to itself exactly when it is quotient stable."""
    rep = VerdictReport("t310")
    rf = separating_property(block_map)
    a, b, c = op_GPi(rf), op_G(op_R(rf)), op_R(rf)
    ok1, w1 = same_over(a, b, universe)
    ok2, w2 = same_over(b, c, universe)
    rep.add("three-way", "per-image, enlarged per-block, and per-block forms agree", ok1 and ok2, w1 or w2)
    ideal_ok = check_ideal_map(block_map, universe).passed
    if ideal_ok:
        ok, w = subset_over(c, rf, universe)
        rep.add("inside-rf", "per-block form sits inside the separating property", ok, w)
        collapse, w = same_over(c, rf, universe)
        upper = is_upper_stable(rf, universe).ok
        rep.add(
            "collapse-iff-upper",
            "collapse to the separating property happens exactly under quotient stability",
            collapse == upper,
            {"collapse": collapse, "upper": upper, "witness": w},
        )
    else:
        rep.skip("inside-rf", "per-block containment", "not a quotient-pullback map")
    return rep
