import random

import numpy as np
import pytest

from radlat import cstar as cs
from radlat import lattice as L
from radlat import relcalc as rc
from radlat.errors import NotEquivariant, NoUniqueRadical, SizeLimitExceeded
from radlat.properties import compile_property, parse_property, same_over


def prop(text):
    return parse_property(text)


def alg(text):
    return cs.ModelAlgebra.parse(text)


U43 = cs.enumerate_algebras(4, 3)
PROPS = ["comm", "one", "simple", "dim<=4", "blockdim<=2", "G(one)", "dG(one)", "R(simple)"]


# --- algebras and ideals ----------------------------------------------------


def test_parse_and_canonical():
    assert alg("2,1,1").blocks == (1, 1, 2)
    assert alg("").is_zero and alg("").dim == 0
    assert alg("1,2").dim == 5
    assert alg("1,2").format() == "1,2"
    with pytest.raises(ValueError):
        cs.ModelAlgebra.of([0])


def test_subquotient_identities():
    # (J + I)/I matches J/(I & J), and iterated quotients collapse
    rng = random.Random(1)
    for _ in range(60):
        a = cs.ModelAlgebra.of(rng.choices([1, 2, 3], k=rng.randint(1, 4)))
        full = a.full_mask
        i, j, k = (rng.randrange(full + 1) for _ in range(3))
        assert a.sub((j | i) & ~i).blocks == a.sub(j & ~(i & j)).blocks
        i, j, k = sorted((i, i | j, i | j | k))
        assert a.subquotient(k, j).blocks == a.sub((k & ~i) & ~(j & ~i)).blocks


def test_ideal_lattice_is_boolean_and_distributive():
    for a in (alg("1,2"), alg("1,1,2"), alg("2,3,3")):
        lat = a.ideal_lattice()
        assert lat.n == 1 << a.num_blocks
        assert L.is_distributive(lat)[0]


def test_enumerate_algebras():
    assert [a.format() for a in cs.enumerate_algebras(0, 5)] == [""]
    assert [a.format() for a in cs.enumerate_algebras(1, 2)] == ["", "1", "2"]
    got = [a.format() for a in cs.enumerate_algebras(2, 2)]
    assert got == ["", "1", "2", "1,1", "1,2", "2,2"]
    assert len(U43) == 35
    with pytest.raises(SizeLimitExceeded):
        cs.enumerate_algebras(40, 2)


def test_close_universe():
    universe, added = cs.close_universe([alg("1,2")])
    assert {a.blocks for a in universe} == {(), (1,), (2,), (1, 2)}
    assert len(added) == 3


# --- relations and radicals -------------------------------------------------


def test_relation_of_property_examples():
    rel = cs.relation_of_property(alg("1,2"), prop("comm"))
    assert sorted(rel.pairs(strict=True)) == [(0, 1), (2, 3)]
    full = cs.relation_of_property(alg("1,2"), prop("all"))
    assert (full.rel == full.lattice.leq).all()
    ident = cs.relation_of_property(alg("1,2"), prop("zero"))
    assert (ident.rel == np.eye(4, dtype=bool)).all()


def test_radical_tri_examples():
    assert cs.radical_tri(alg("1,2"), prop("comm")).indices == {0}
    assert cs.radical_tri(alg("1,1"), prop("comm")).is_full
    assert cs.radical_tri(alg("2,3"), prop("comm")).indices == frozenset()
    assert cs.dual_radical_tri(alg("1,2"), prop("one")).indices == {1}


def test_radical_tri_oracle():
    # largest ideal reachable by stepwise property quotients, by brute search
    def oracle(algebra, sem):
        reach = {0}
        grew = True
        while grew:
            grew = False
            for j in range(algebra.full_mask + 1):
                if j in reach:
                    continue
                for i in list(reach):
                    if i & j == i and sem.test(algebra.subquotient(j, i)):
                        reach.add(j)
                        grew = True
        best = 0
        for j in reach:
            best |= j
        return best

    for text in ("comm", "one", "dim<=4", "blockdim<=2"):
        sem = compile_property(prop(text))
        for a in cs.enumerate_algebras(3, 3):
            assert cs.radical_tri(a, sem).mask == oracle(a, sem), (text, a)


def test_radical_no_unique():
    # an unstable selection can leave several maximal candidates
    weird = parse_property("!(blocks<=1) & blocks<=2")
    bad = None
    for a in U43:
        try:
            cs.radical_tri(a, weird)
        except NoUniqueRadical as exc:
            bad = (a, exc.candidates)
            break
    assert bad is not None


def test_stability_examples():
    for fn in (cs.is_lower_stable, cs.is_upper_stable, cs.is_extension_stable):
        assert fn(prop("comm"), U43).ok
    chk = cs.is_extension_stable(prop("dim<=4"), U43)
    assert not chk.ok
    a, ideal = chk.witness
    assert a == alg("1,2") and ideal.indices == {0}
    assert cs.is_lower_stable(prop("dim<=4"), U43).ok
    assert cs.is_upper_stable(prop("dim<=4"), U43).ok
    # operator outputs are stable on the proper side by construction
    for text in PROPS:
        sem = compile_property(prop(text))
        from radlat.properties import op_G, op_NG, op_dG, op_dNG

        assert cs.is_upper_stable(op_G(sem), U43).ok
        assert cs.is_lower_stable(op_NG(sem), U43).ok
        assert cs.is_lower_stable(op_dG(sem), U43).ok
        assert cs.is_upper_stable(op_dNG(sem), U43).ok


# --- theorem checks ---------------------------------------------------------


@pytest.mark.parametrize("text", PROPS)
def test_check_t41(text):
    assert cs.check_t41(prop(text), U43).passed


def test_check_t41_negative_control():
    two_blocks = parse_property("!(blocks<=1) & blocks<=2")
    assert not cs.is_upper_stable(two_blocks, U43).ok
    bad = None
    for a in U43:
        chk = rc.is_h_relation(cs.relation_of_property(a, two_blocks))
        if not chk.ok:
            bad = a
            break
    assert bad is not None
    # the biconditional still holds: both sides are false
    assert cs.check_t41(two_blocks, U43).passed


@pytest.mark.parametrize("text", PROPS)
def test_structure_theorems(text):
    assert cs.check_structure_theorems(prop(text), U43).passed


@pytest.mark.parametrize("text", PROPS)
def test_c42n(text):
    assert cs.check_c42n(prop(text), U43).passed


@pytest.mark.parametrize("text", PROPS)
def test_closure_laws(text):
    assert cs.check_closure_laws(prop(text), U43).passed


@pytest.mark.parametrize("text", PROPS)
def test_t36_t34(text):
    assert cs.check_t36_t34(prop(text), U43).passed


def test_dim4_not_transitive_matches_extension_failure():
    rel = cs.relation_of_property(alg("1,2"), prop("dim<=4"))
    assert not rc.is_transitive(rel).ok


def test_gp_collapse_one_comm():
    rep = cs.check_gp_collapse(prop("one"), prop("comm"), U43)
    assert rep.passed
    for a in (alg("1,1,2"), alg("1,3")):
        assert cs.radical_tri(a, prop("one")).mask == cs.radical_tri(a, prop("comm")).mask


def test_membership_matches_radical_fixpoints():
    # quotient-stable properties: enlarged membership is radical saturation
    for text in ("comm", "one", "blockdim<=2"):
        sem = compile_property(prop(text))
        from radlat.properties import op_G, op_NG, op_dG, op_dNG

        for a in cs.enumerate_algebras(3, 3):
            r = cs.radical_tri(a, sem)
            assert op_G(sem).test(a) == r.is_full
            assert op_NG(sem).test(a) == (not r.indices)
            p = cs.dual_radical_tri(a, sem)
            assert op_dG(sem).test(a) == (not p.indices)
            assert op_dNG(sem).test(a) == p.is_full


def test_radical_automorphism_invariance():
    for text in ("comm", "one", "dim<=4"):
        for a in (alg("1,1,2"), alg("2,2"), alg("1,1,1")):
            rel = cs.relation_of_property(a, prop(text))
            assert rc.check_automorphism_invariance(rel).passed


# --- block maps -------------------------------------------------------------


def test_block_maps():
    universe = U43
    upto1 = cs.size_block_map(lambda s: s <= 1, "upto1")
    assert cs.check_compatible(upto1, universe).passed
    assert cs.check_ideal_map(upto1, universe).passed
    assert cs.check_t310(upto1, universe).passed
    ok, w = same_over(cs.separating_property(upto1), compile_property(prop("comm")), universe)
    assert ok
    for n in (2, 3):
        bmap = cs.size_block_map(lambda s, n=n: s <= n, f"upto{n}")
        assert cs.check_t310(bmap, universe).passed
        ok, _ = same_over(
            cs.separating_property(bmap), compile_property(prop(f"blockdim<={n}")), universe
        )
        assert ok
    every = cs.size_block_map(lambda s: True, "every")
    assert cs.r_f_member(every, alg("3,3"))
    assert cs.check_t310(every, universe).passed
    even = cs.size_block_map(lambda s: s % 2 == 0, "even")
    assert cs.check_compatible(even, universe).passed
    assert cs.check_ideal_map(even, universe).passed
    assert cs.check_t310(even, universe).passed


def test_non_equivariant_rejected():
    lopsided = cs.make_block_map(lambda a, i: i == 0, "first-index")
    with pytest.raises(NotEquivariant):
        lopsided.select(alg("1,1"))


def test_non_ideal_map_detected():
    # selects singles everywhere but drops them inside larger algebras
    fickle = cs.make_block_map(lambda a, i: a.num_blocks == 1, "only-alone")
    assert not cs.check_ideal_map(fickle, U43).passed
    assert not cs.check_compatible(fickle, U43).passed
