import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from radlat import lattice as L
from radlat import relcalc as rc
from radlat.errors import NotAnROrder, NotStrongerThanOrder, NoWitness


def chain3():
    return L.chain(3)


def rel_on(lat, pairs):
    return rc.validate_relation(lat, pairs)


# --- construction -----------------------------------------------------------


def test_validate_relation():
    r = rel_on(chain3(), [])
    assert (r.rel == np.eye(3, dtype=bool)).all()
    r = rel_on(chain3(), [(0, 1), (1, 2)])
    assert r.rel[0, 1] and r.rel[1, 2] and not r.rel[0, 2]
    with pytest.raises(NotStrongerThanOrder) as err:
        rel_on(chain3(), [(2, 0)])
    assert err.value.pair == (2, 0)


# --- classification ---------------------------------------------------------


def test_h_relation_examples():
    assert rc.is_h_relation(rel_on(chain3(), [(0, 1), (1, 2)])).ok
    assert rc.is_h_relation(rc.identity_relation(L.boolean_lattice(2))).ok
    chk = rc.is_h_relation(rel_on(L.boolean_lattice(2), [(0, 1)]))
    assert not chk.ok
    assert chk.witness == (0, 1, 2)  # bottom, first atom, second atom


def test_dual_h_relation_examples():
    assert rc.is_dual_h_relation(rc.identity_relation(chain3())).ok
    chk = rc.is_dual_h_relation(rel_on(chain3(), [(0, 2)]))
    assert not chk.ok and chk.witness == (0, 2, 1)
    full = rc.order_relation(L.boolean_lattice(2))
    assert rc.is_dual_h_relation(full).ok


def test_h_closure_examples():
    closed = rc.h_closure(rel_on(chain3(), [(0, 2)]))
    assert sorted(closed.pairs(strict=True)) == [(0, 2), (1, 2)]
    ident = rc.identity_relation(chain3())
    assert (rc.h_closure(ident).rel == ident.rel).all()


def test_closures_idempotent_and_verified():
    rng = random.Random(2)
    for _ in range(25):
        lat = L.boolean_lattice(3)
        pairs = []
        for _ in range(rng.randint(1, 5)):
            a = rng.randrange(lat.n)
            ups = np.flatnonzero(lat.leq[a])
            pairs.append((a, int(ups[rng.randrange(len(ups))])))
        closed = rc.h_closure(rel_on(lat, pairs))
        assert rc.is_h_relation(closed).ok
        assert (rc.h_closure(closed).rel == closed.rel).all()
        dual = rc.dual_h_closure(rel_on(lat, pairs))
        assert rc.is_dual_h_relation(dual).ok
        assert (rc.dual_h_closure(dual).rel == dual.rel).all()


def test_complements_examples():
    r = rel_on(chain3(), [(0, 1)])
    left = rc.comp_left(r).rel
    assert not left[0, 1] and left[1, 2]
    ident = rc.identity_relation(chain3())
    assert (rc.comp_left(ident).rel == chain3().leq).all()
    full = rc.order_relation(chain3())
    assert (rc.comp_left(full).rel == np.eye(3, dtype=bool)).all()


def test_up_relation_examples():
    r = rel_on(chain3(), [(0, 1), (1, 2)])
    assert rc.rel_up(r).rel[0, 2]
    ident = rc.identity_relation(chain3())
    up = rc.rel_up(ident).rel
    assert not up[0, 1] and not up[0, 2]


def test_tri_examples_and_oracle():
    r = rel_on(chain3(), [(0, 1), (1, 2)])
    tri = rc.rel_tri_right(r)
    assert tri.rel[0, 2]
    wit = rc.series_witness(r, 0, 2)
    assert wit.chain == (0, 1, 2) and wit.validate(r)
    # closure of a transitive relation is itself
    full = rc.order_relation(L.boolean_lattice(2))
    assert (rc.rel_tri_right(full).rel == full.rel).all()
    # matches the independent chain-search oracle
    want = oracles.chain_search_closure(r.rel.tolist())
    assert tri.rel.tolist() == want


def test_series_witness_directions_and_missing():
    r = rel_on(chain3(), [(0, 1), (1, 2)])
    down = rc.series_witness(r, 0, 2, "descending")
    assert down.chain == (2, 1, 0) and down.direction == "descending"
    # descending validity: consecutive entries step down through the relation
    assert down.validate(r)
    with pytest.raises(NoWitness):
        rc.series_witness(rc.identity_relation(chain3()), 0, 2)
    point = rc.series_witness(r, 1, 1)
    assert point.chain == (1,) and point.validate(r)


def test_r_order_examples():
    assert rc.is_r_order(rc.order_relation(L.boolean_lattice(2))).ok
    # refl + {(0,1)} is transitive, join-shifted, and join-stable: a series order
    assert rc.is_r_order(rel_on(chain3(), [(0, 1)])).ok
    # a non-transitive relation is not
    chk = rc.is_r_order(rel_on(chain3(), [(0, 1), (1, 2)]))
    assert not chk.ok and chk.witness[0] == "transitivity"
    # an h-closed relation is a series order iff closure adds nothing
    for seed_pairs in ([(0, 1)], [(0, 1), (1, 2)], [(0, 2)]):
        r = rc.h_closure(rel_on(chain3(), seed_pairs))
        tri = rc.rel_tri_right(r)
        assert rc.is_r_order(r).ok == (r.rel == tri.rel).all()


def test_radicals_examples():
    assert rc.find_radicals(rel_on(chain3(), [(0, 1)])) == {1}
    assert rc.find_radicals(rc.identity_relation(chain3())) == {0}
    assert rc.find_radicals(rc.order_relation(chain3())) == {2}


def test_radical_r_order():
    full = rc.order_relation(L.boolean_lattice(2))
    assert rc.radical_r_order(full) == 3
    assert rc.radical_r_order(rel_on(chain3(), [(0, 1)])) == 1
    with pytest.raises(NotAnROrder):
        rc.radical_r_order(rel_on(chain3(), [(0, 1), (1, 2)]))
    # radical via closure equals the unique member of the radical set
    r = rc.h_closure(rel_on(L.boolean_lattice(2), [(0, 1)]))
    tri = rc.rel_tri_right(r)
    assert rc.find_radicals(tri) == {rc.radical_r_order(tri)}


def test_restrict_to_interval():
    full = rc.order_relation(L.chain(4))
    sub = rc.restrict_to_interval(full, 1, 2)
    assert sub.lattice.n == 2 and (sub.rel == sub.lattice.leq).all()
    r = rc.restrict_to_interval(rel_on(chain3(), [(0, 2)]), 0, 1)
    assert (r.rel == np.eye(2, dtype=bool)).all()
    whole = rc.restrict_to_interval(rel_on(chain3(), [(0, 1)]), 0, 2)
    assert (whole.rel == rel_on(chain3(), [(0, 1)]).rel).all()


# --- structural checks ------------------------------------------------------


def fuzzed_relations(count=60, seed=4):
    rng = random.Random(seed)
    lats = [L.chain(5), L.boolean_lattice(3),
            L.build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
            L.boolean_lattice(4)]
    for k in range(count):
        lat = lats[k % len(lats)]
        pairs = []
        for _ in range(rng.randint(1, lat.n // 2 + 1)):
            a = rng.randrange(lat.n)
            ups = np.flatnonzero(lat.leq[a])
            pairs.append((a, int(ups[rng.randrange(len(ups))])))
        seed_rel = rc.validate_relation(lat, pairs)
        yield seed_rel, rc.h_closure(seed_rel), rc.dual_h_closure(seed_rel)


def test_p11_for_arbitrary_relations():
    for raw, _, _ in fuzzed_relations():
        ok, w = rc.matrix_diff(rc.comp_left(rc.comp_right(raw)).rel, rc.rel_lo(raw).rel)
        assert ok, w
        ok, w = rc.matrix_diff(rc.comp_right(rc.comp_left(raw)).rel, rc.rel_up(raw).rel)
        assert ok, w


def test_theorem_inf_clauses_on_fuzz():
    for _, hrel, drel in fuzzed_relations():
        assert rc.check_theorem_inf(hrel).passed
        assert rc.check_theorem_inf(drel).passed
        # up-set collapse and radical facts, asserted directly as well
        tri = rc.rel_tri_right(hrel)
        assert (rc.rel_up(hrel).rel == tri.rel).all()
        assert rc.is_r_order(tri).ok
        rads = rc.find_radicals(tri)
        assert len(rads) == 1
        r = next(iter(rads))
        lat = hrel.lattice
        assert r == lat.join_all(int(x) for x in np.flatnonzero(tri.rel[lat.bottom]))
        # base relation sits inside its interval upper-set relation
        assert not (hrel.rel & ~rc.rel_up(hrel).rel).any()


def test_t35_clauses_on_fuzz():
    for _, hrel, drel in fuzzed_relations(count=40, seed=6):
        assert rc.check_t35(hrel).passed
        assert rc.check_t35(drel).passed


def test_t35_successor_dichotomy_direct():
    for _, hrel, _ in fuzzed_relations(count=20, seed=8):
        lat = hrel.lattice
        tri = rc.rel_tri_right(hrel)
        r = rc.radical_r_order(tri)
        strict = hrel.rel & ~np.eye(lat.n, dtype=bool)
        for z in range(lat.n):
            if not lat.leq[r, z]:
                assert strict[z].any()
            if lat.leq[z, r]:
                assert tri.rel[z, r]
                assert rc.series_witness(hrel, int(z), r).validate(hrel)
        assert not strict[r].any()


def test_duality_transport():
    for raw, hrel, _ in fuzzed_relations(count=30, seed=10):
        for rel in (raw, hrel):
            co = rc.dualize(rel)
            assert rc.is_h_relation(rel).ok == rc.is_dual_h_relation(co).ok
            assert rc.is_dual_h_relation(rel).ok == rc.is_h_relation(co).ok
            assert (rc.rel_up(rel).rel == rc.rel_lo(co).rel.T).all()
            assert (rc.comp_left(rel).rel == rc.comp_right(co).rel.T).all()
            assert (rc.rel_tri_right(rel).rel == rc.rel_tri_left(co).rel.T).all()
            assert rc.find_radicals(rel) == rc.find_dual_radicals(co)


def test_internal_equivalence_guard_detects_corruption():
    hrel = rc.h_closure(rel_on(chain3(), [(0, 1)]))
    rep = rc.check_theorem_inf(hrel)
    assert rep.passed
    # negative control: corrupt the cached interval relation
    corrupted = rc.Relation(hrel.lattice, hrel.rel)
    broken = rc.rel_up(hrel).rel.copy()
    broken[0, hrel.lattice.top] = not broken[0, hrel.lattice.top]
    corrupted._cache["up"] = rc.Relation(corrupted.lattice, broken)
    rep = rc.check_theorem_inf(corrupted)
    fails = [cl.cid for cl in rep.failures()]
    assert "up-eq-tri" in fails or "p11-up" in fails


def test_automorphism_invariance():
    lat = L.boolean_lattice(2)
    # symmetric relation under the atom swap
    r = rc.h_closure(rc.validate_relation(lat, [(0, 1), (0, 2)]))
    rep = rc.check_automorphism_invariance(r)
    assert rep.passed
    # chains are rigid: vacuous pass
    assert rc.check_automorphism_invariance(rc.h_closure(rel_on(chain3(), [(0, 1)]))).passed
    # non-symmetric relation: swap is excluded by the preservation filter
    r2 = rc.h_closure(rc.validate_relation(lat, [(0, 1)]))
    rep2 = rc.check_automorphism_invariance(r2)
    filter_clause = [cl for cl in rep2.clauses if cl.cid == "filter"][0]
    assert rep2.passed and filter_clause.witness is None


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_property_closure_contains_and_h(m, data):
    lat = L.chain(m)
    k = data.draw(st.integers(1, 4))
    pairs = []
    for _ in range(k):
        a = data.draw(st.integers(0, m - 1))
        b = data.draw(st.integers(a, m - 1))
        pairs.append((a, b))
    seed_rel = rc.validate_relation(lat, pairs)
    closed = rc.h_closure(seed_rel)
    assert not (seed_rel.rel & ~closed.rel).any()
    assert rc.is_h_relation(closed).ok
    tri = rc.rel_tri_right(closed)
    assert not (closed.rel & ~tri.rel).any()
    assert rc.is_transitive(tri).ok
