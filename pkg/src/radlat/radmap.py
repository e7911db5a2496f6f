"""Ideal-valued radical maps: the axiom system, the radical/semisimple class
correspondence, and relation-valued families with their generation test.

A radical map assigns to every algebra in a sub-multiset-closed universe one
of its ideals, equivariantly. The axioms are checked by exhaustion; the
correspondence theorems then tie every axiom-satisfying map to a pair of
stable properties whose series radicals reproduce it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import relcalc as rc
from .cstar import (
    IdealRef,
    ModelAlgebra,
    close_universe,
    dual_radical_tri,
    radical_tri,
    relation_of_property,
)
from .errors import AxiomsNotSatisfied, NoUniqueRadical
from .lattice import interval_lattice, isomorphisms
from .properties import compile_property, op_G, op_dG, same_over, set_property
from .report import VerdictReport


class RadicalMap:
    """Base: assigns an ideal (index set) to every algebra."""

    name = "radical-map"

    def apply(self, algebra) -> frozenset:
        raise NotImplementedError

    def mask(self, algebra) -> int:
        return algebra.mask_of(self.apply(algebra))

    def ideal(self, algebra) -> IdealRef:
        return IdealRef(algebra, self.apply(algebra))


class PropertyRadicalMap(RadicalMap):
    """Series radical (or dual) of a property-induced relation."""

    def __init__(self, prop, direction="right"):
        if direction not in ("right", "left"):
            raise ValueError(f"unknown direction {direction!r}")
        self.prop = compile_property(prop)
        self.direction = direction
        self.name = f"prop:{self.prop.key}:{direction}"
        self._memo = {}

    def apply(self, algebra):
        hit = self._memo.get(algebra.blocks)
        if hit is None:
            fn = radical_tri if self.direction == "right" else dual_radical_tri
            hit = fn(algebra, self.prop).indices
            self._memo[algebra.blocks] = hit
        return hit


class TableRadicalMap(RadicalMap):
    """Rule from block multiset to a sub-multiset; selections must keep
    equal-size blocks together, which pins down the index assignment."""

    def __init__(self, name, rule):
        self.name = f"table:{name}"
        self._rule = rule if callable(rule) else lambda blocks: rule[blocks]
        self._memo = {}
        if isinstance(rule, dict):
            for blocks, sub in rule.items():
                self._indices_for(ModelAlgebra(tuple(blocks)), tuple(sub))

    def _indices_for(self, algebra, sub):
        sub = tuple(sorted(sub))
        counts = {}
        for s in sub:
            counts[s] = counts.get(s, 0) + 1
        chosen = []
        for size, want in counts.items():
            have = [i for i, s in enumerate(algebra.blocks) if s == size]
            if want not in (0, len(have)):
                raise ValueError(
                    f"{self.name} selects {want} of {len(have)} size-{size} "
                    f"blocks of {algebra}: equal blocks must move together"
                )
            chosen.extend(have)
        return frozenset(chosen)

    def apply(self, algebra):
        hit = self._memo.get(algebra.blocks)
        if hit is None:
            hit = self._indices_for(algebra, tuple(self._rule(algebra.blocks)))
            self._memo[algebra.blocks] = hit
        return hit


def zero_map():
    return TableRadicalMap("zero", lambda blocks: ())


def identity_map():
    return TableRadicalMap("identity", lambda blocks: blocks)


def _quotient_positions(algebra, imask):
    """Parent indices of the quotient blocks, in quotient position order."""
    return [i for i in range(algebra.num_blocks) if not imask >> i & 1]


def check_axioms(radical_map, universe):
    """The five radical axioms, by exhaustion over a closed universe."""
    rep = VerdictReport("axioms")
    universe, added = close_universe(universe)
    if added:
        rep.skip("closure", "universe closure", f"added {len(added)} sub-algebras")

    bad = None
    for algebra in universe:
        sel = radical_map.apply(algebra)
        for i in range(algebra.num_blocks):
            for j in range(algebra.num_blocks):
                if algebra.blocks[i] == algebra.blocks[j] and (i in sel) != (j in sel):
                    bad = (algebra, sorted(sel))
                    break
            if bad:
                break
        if bad:
            break
    rep.add("equivariance", "selection never splits equal-size blocks", bad is None, bad)

    bad = None
    for algebra in universe:
        rmask = radical_map.mask(algebra)
        for imask in range(algebra.full_mask + 1):
            positions = _quotient_positions(algebra, imask)
            quotient = algebra.quotient(imask)
            image = {positions.index(j) for j in algebra.indices(rmask) if not imask >> j & 1}
            target = radical_map.apply(quotient)
            if not image <= target:
                bad = (algebra, IdealRef.from_mask(algebra, imask),
                       {"image": sorted(image), "target": sorted(target)})
                break
        if bad:
            break
    rep.add("quotient-monotone", "pushing the radical into a quotient lands inside its radical", bad is None, bad)

    bad = None
    for algebra in universe:
        quotient = algebra.quotient(radical_map.mask(algebra))
        if radical_map.apply(quotient):
            bad = (algebra, quotient)
            break
    rep.add("quotient-annihilation", "the radical of the quotient by the radical vanishes", bad is None, bad)

    bad = None
    for algebra in universe:
        part = algebra.sub(radical_map.mask(algebra))
        if len(radical_map.apply(part)) != part.num_blocks:
            bad = (algebra, part)
            break
    rep.add("idempotence", "the radical is its own radical", bad is None, bad)

    bad = None
    for algebra in universe:
        rset = radical_map.apply(algebra)
        for imask in range(algebra.full_mask + 1):
            idx = algebra.indices(imask)
            part = algebra.sub(imask)
            embedded = {idx[pos] for pos in radical_map.apply(part)}
            if not embedded <= rset:
                bad = (algebra, IdealRef.from_mask(algebra, imask),
                       {"embedded": sorted(embedded), "radical": sorted(rset)})
                break
        if bad:
            break
    rep.add("ideal-monotone", "the radical of an ideal sits inside the radical", bad is None, bad)
    return rep


def rad_of(radical_map, universe):
    """Algebras the map fixes, as an extensional property."""
    universe, _ = close_universe(universe)
    members = [a for a in universe if len(radical_map.apply(a)) == a.num_blocks]
    return set_property(("rad", radical_map.name), (a.blocks for a in members)), members


def sem_of(radical_map, universe):
    """Algebras the map kills, as an extensional property."""
    universe, _ = close_universe(universe)
    members = [a for a in universe if not radical_map.apply(a)]
    return set_property(("sem", radical_map.name), (a.blocks for a in members)), members


def check_correspondence(radical_map, universe):
    """Fixed and killed classes are closure-stable, and their series radicals
    reproduce the map from both sides."""
    universe, _ = close_universe(universe)
    axioms = check_axioms(radical_map, universe)
    if not axioms.passed:
        raise AxiomsNotSatisfied(
            f"{radical_map.name} fails {axioms.first_failure().cid}"
        )
    rep = VerdictReport("correspondence")
    p1, _ = rad_of(radical_map, universe)
    p2, _ = sem_of(radical_map, universe)
    ok, w = same_over(p1, op_G(p1), universe)
    rep.add("rad-closed", "fixed class equals its enlargement on the universe", ok, w)
    ok, w = same_over(p2, op_dG(p2), universe)
    rep.add("sem-closed", "killed class equals its dual enlargement on the universe", ok, w)

    bad = None
    for algebra in universe:
        want = radical_map.mask(algebra)
        try:
            got_r = radical_tri(algebra, p1).mask
            got_p = dual_radical_tri(algebra, p2).mask
        except NoUniqueRadical as exc:
            bad = (algebra, exc.candidates)
            break
        if want != got_r or want != got_p:
            bad = (algebra, {"map": want, "ascending": got_r, "descending": got_p})
            break
    rep.add("radical-eq", "map equals both derived series radicals", bad is None, bad)

    fixed_by_r = [a for a in universe if radical_tri(a, p1).is_full]
    ok, w = same_over(p1, set_property(("rt", radical_map.name), (a.blocks for a in fixed_by_r)), universe)
    rep.add("rad-roundtrip", "fixed class of the derived radical recovers the class", ok, w)
    killed_by_p = [a for a in universe if not dual_radical_tri(a, p2).indices]
    ok, w = same_over(p2, set_property(("pt", radical_map.name), (a.blocks for a in killed_by_p)), universe)
    rep.add("sem-roundtrip", "killed class of the derived dual radical recovers the class", ok, w)
    return rep


# ---------------------------------------------------------------------------
# relation-valued families


@dataclass(frozen=True)
class _IntervalView:
    obj: object
    emb: tuple  # emb[sub element] = parent element


class RelationFamily:
    """Assignment of a reflexive relation to the ideal lattice of every
    member of a universe, plus the structure maps the generation test needs.

    Concrete families say how a subquotient [a, b] of a member becomes a
    member-like object and how its lattice embeds back.
    """

    name = "family"

    def members(self):
        raise NotImplementedError

    def key(self, obj):
        return repr(obj)

    def ident(self, obj):
        """Hashable identity used to line up members with interval views."""
        return self.key(obj)

    def relation(self, obj) -> rc.Relation:
        raise NotImplementedError

    def interval_view(self, obj, a, b) -> _IntervalView:
        raise NotImplementedError

    def iso_pairs(self):
        """Triples (obj1, obj2, mappings) whose relations must correspond."""
        return []


class ModelRelationFamily(RelationFamily):
    """Family over canonical model algebras; the rule sees the algebra."""

    def __init__(self, name, universe, rule):
        self.name = name
        self._universe, _ = close_universe(universe)
        self._rule = rule
        self._memo = {}

    @staticmethod
    def from_property(prop, universe, name=None):
        sem = compile_property(prop)
        return ModelRelationFamily(
            name or f"prop-family:{sem.key}",
            universe,
            lambda algebra: relation_of_property(algebra, sem),
        )

    def members(self):
        return list(self._universe)

    def key(self, algebra):
        return algebra.format() or "zero"

    def ident(self, algebra):
        return algebra.blocks

    def relation(self, algebra):
        hit = self._memo.get(algebra.blocks)
        if hit is None:
            hit = self._rule(algebra)
            self._memo[algebra.blocks] = hit
        return hit

    def interval_view(self, algebra, imask, jmask):
        positions = [p for p in range(algebra.num_blocks) if (jmask & ~imask) >> p & 1]
        part = algebra.subquotient(jmask, imask)
        emb = []
        for sub in range(1 << len(positions)):
            mask = imask
            for p in range(len(positions)):
                if sub >> p & 1:
                    mask |= 1 << positions[p]
            emb.append(mask)
        return _IntervalView(part, tuple(emb))

    def iso_pairs(self):
        # canonical forms leave only block-permutation automorphisms
        out = []
        for algebra in self._universe:
            perms = _size_permutations(algebra.blocks)
            mappings = []
            for perm in perms:
                mapping = [0] * (algebra.full_mask + 1)
                for mask in range(algebra.full_mask + 1):
                    img = 0
                    for i in range(algebra.num_blocks):
                        if mask >> i & 1:
                            img |= 1 << perm[i]
                    mapping[mask] = img
                mappings.append(tuple(mapping))
            if len(mappings) > 1:
                out.append((algebra, algebra, mappings))
        return out


def _size_permutations(blocks):
    """Permutations of block indices preserving sizes."""
    from itertools import permutations

    groups = {}
    for i, s in enumerate(blocks):
        groups.setdefault(s, []).append(i)
    perms = [tuple(range(len(blocks)))]
    for size, idx in groups.items():
        if len(idx) < 2:
            continue
        new = []
        for base in perms:
            for reorder in permutations(idx):
                perm = list(base)
                for src, dst in zip(idx, reorder):
                    perm[src] = base[dst]
                new.append(tuple(perm))
        perms = sorted(set(new))
    return perms


class LatticeRelationFamily(RelationFamily):
    """Family over abstract ideal lattices; the rule sees the lattice.

    The universe is closed under intervals, deduplicated by labelled order
    structure, so subquotient objects are themselves members.
    """

    def __init__(self, name, lattices, rule):
        self.name = name
        self._rule = rule
        self._objs = {}
        self._rels = {}
        queue = list(lattices)
        while queue:
            lat = queue.pop()
            k = lat.structure_key()
            if k in self._objs:
                continue
            self._objs[k] = lat
            for a in range(lat.n):
                for b in range(lat.n):
                    if lat.leq[a, b]:
                        sub, _ = interval_lattice(lat, a, b)
                        if sub.structure_key() not in self._objs:
                            queue.append(sub)
        self._order = sorted(self._objs, key=lambda k: (k[0], k[1]))

    def members(self):
        return [self._objs[k] for k in self._order]

    def key(self, lat):
        return f"{lat.name}(n={lat.n})"

    def ident(self, lat):
        return lat.structure_key()

    def relation(self, lat):
        k = lat.structure_key()
        lat = self._objs[k]  # canonical instance
        hit = self._rels.get(k)
        if hit is None:
            hit = self._rule(lat)
            self._rels[k] = hit
        return hit

    def interval_view(self, lat, a, b):
        sub, members = interval_lattice(lat, a, b)
        return _IntervalView(self._objs[sub.structure_key()], members)

    def iso_pairs(self):
        out = []
        mems = self.members()
        for i, m1 in enumerate(mems):
            for m2 in mems[i:]:
                maps = isomorphisms(m1, m2)
                nontrivial = [g for g in maps if m1 is not m2 or g != tuple(range(m1.n))]
                if nontrivial:
                    out.append((m1, m2, nontrivial))
        return out


def check_relation_function(family):
    """Generation test for a relation family.

    A family comes from a single property exactly when it transports along
    isomorphisms, restricts to ideal objects, and projects to quotient
    objects; then the bottom-to-top flag class regenerates it. When every
    member has a unique radical, the radical map is axiom-clean exactly when
    the flag class is quotient stable and closure-stable.
    """
    rep = VerdictReport("relation-function")

    bad = None
    for m1, m2, mappings in family.iso_pairs():
        r1, r2 = family.relation(m1).rel, family.relation(m2).rel
        for g in mappings:
            gi = np.array(g, dtype=np.intp)
            if not (r1 == r2[np.ix_(gi, gi)]).all():
                bad = (family.key(m1), family.key(m2), tuple(g))
                break
        if bad:
            break
    rep.add("c1-isomorphism", "relations transport along isomorphisms", bad is None, bad)

    def _restriction_matches(obj, a, b):
        view = family.interval_view(obj, a, b)
        sub_rel = family.relation(view.obj).rel
        parent = family.relation(obj).rel
        emb = view.emb
        for x in range(len(emb)):
            for y in range(len(emb)):
                if sub_rel[x, y] != parent[emb[x], emb[y]]:
                    return (family.key(obj), (a, b), (emb[x], emb[y]),
                            {"inner": bool(sub_rel[x, y]), "outer": bool(parent[emb[x], emb[y]])})
        return None

    bad = None
    for obj in family.members():
        lat = family.relation(obj).lattice
        for k in range(lat.n):
            bad = _restriction_matches(obj, lat.bottom, k)
            if bad:
                break
        if bad:
            break
    rep.add("c2-ideal", "relations restrict to ideal objects", bad is None, bad)

    bad = None
    for obj in family.members():
        lat = family.relation(obj).lattice
        for k in range(lat.n):
            bad = _restriction_matches(obj, k, lat.top)
            if bad:
                break
        if bad:
            break
    rep.add("c3-quotient", "relations project to quotient objects", bad is None, bad)

    generated = rep.passed
    if generated:
        bad = None
        for obj in family.members():
            relation = family.relation(obj)
            lat = relation.lattice
            for a in range(lat.n):
                for b in range(lat.n):
                    if not lat.leq[a, b]:
                        continue
                    view = family.interval_view(obj, a, b)
                    sub_rel = family.relation(view.obj)
                    flag = bool(sub_rel.rel[sub_rel.lattice.bottom, sub_rel.lattice.top])
                    if flag != bool(relation.rel[a, b]):
                        bad = (family.key(obj), (a, b), {"flag": flag})
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("pf-recovery", "the bottom-to-top flag class regenerates the family", bad is None, bad)
    else:
        rep.skip("pf-recovery", "the bottom-to-top flag class regenerates the family",
                 "restriction conditions failed")

    radicals = {}
    for obj in family.members():
        rads = rc.find_radicals(family.relation(obj))
        if len(rads) != 1:
            rep.skip("t45-biconditional", "radical map axiom equivalence",
                     f"{family.key(obj)} has radical candidates {sorted(rads)}")
            return rep
        radicals[family.ident(obj)] = next(iter(rads))

    def radical(obj):
        return radicals[family.ident(obj)]

    axioms_ok = True
    detail = {}
    for m1, m2, mappings in family.iso_pairs():
        for g in mappings:
            if g[radical(m1)] != radical(m2):
                axioms_ok = False
                detail = {"axiom": "equivariance", "member": family.key(m1)}
                break
        if not axioms_ok:
            break
    if axioms_ok:
        for obj in family.members():
            lat = family.relation(obj).lattice
            r = radical(obj)
            for k in range(lat.n):
                view = family.interval_view(obj, k, lat.top)
                sub_lat = family.relation(view.obj).lattice
                image = view.emb.index(int(lat.join[r, k]))
                if not sub_lat.leq[image, radical(view.obj)]:
                    axioms_ok = False
                    detail = {"axiom": "quotient-monotone", "member": family.key(obj), "k": k}
                    break
                down = family.interval_view(obj, lat.bottom, k)
                down_lat = family.relation(down.obj).lattice
                if not lat.leq[down.emb[radical(down.obj)], r]:
                    axioms_ok = False
                    detail = {"axiom": "ideal-monotone", "member": family.key(obj), "k": k}
                    break
            if not axioms_ok:
                break
            quot = family.interval_view(obj, r, lat.top)
            if radical(quot.obj) != family.relation(quot.obj).lattice.bottom:
                axioms_ok = False
                detail = {"axiom": "quotient-annihilation", "member": family.key(obj)}
            part = family.interval_view(obj, lat.bottom, r)
            if axioms_ok and radical(part.obj) != family.relation(part.obj).lattice.top:
                axioms_ok = False
                detail = {"axiom": "idempotence", "member": family.key(obj)}
            if not axioms_ok:
                break

    flag_stable = True
    closure_stable = True
    if generated:
        flags = {}
        for obj in family.members():
            relation = family.relation(obj)
            flags[family.ident(obj)] = bool(relation.rel[relation.lattice.bottom, relation.lattice.top])
        for obj in family.members():
            if not flags[family.ident(obj)]:
                continue
            lat = family.relation(obj).lattice
            for k in range(lat.n):
                view = family.interval_view(obj, k, lat.top)
                sub_rel = family.relation(view.obj)
                if not sub_rel.rel[sub_rel.lattice.bottom, sub_rel.lattice.top]:
                    flag_stable = False
                    break
            if not flag_stable:
                break
        for obj in family.members():
            relation = family.relation(obj)
            tri = rc.rel_tri_right(relation)
            lat = relation.lattice
            in_gp = bool(tri.rel[lat.bottom, lat.top])
            if in_gp != flags[family.ident(obj)]:
                closure_stable = False
                break
    property_side = generated and flag_stable and closure_stable
    rep.add(
        "t45-biconditional",
        "radical map satisfies the axioms exactly when the flag class is "
        "quotient stable and closure-stable",
        axioms_ok == property_side,
        {"axioms": axioms_ok, "generated": generated, "quotient_stable": flag_stable,
         "closure_stable": closure_stable, **detail},
    )
    return rep
