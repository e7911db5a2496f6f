import pytest

import oracles
from radlat import lattice as L
from radlat.errors import NotALattice, NotAPoset, NotComparable, SizeLimitExceeded


def diamond():
    return L.build_lattice(4, [(0, 1), (0, 2), (1, 3), (2, 3)], name="diamond")


def m3():
    return L.build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], name="m3")


def test_singleton():
    lat = L.build_lattice(1, [])
    assert lat.bottom == lat.top == 0


def test_chain_from_covers():
    lat = L.build_lattice(3, [(0, 1), (1, 2)])
    assert lat.bottom == 0 and lat.top == 2
    assert lat.le(0, 2)


def test_diamond_bounds_against_bruteforce():
    lat = diamond()
    leq = lat.leq.tolist()
    assert lat.join[1, 2] == oracles.lub(leq, 1, 2) == 3
    assert lat.meet[1, 2] == oracles.glb(leq, 1, 2) == 0


def test_tables_match_bruteforce_everywhere():
    for lat in (diamond(), m3(), L.chain(6), L.boolean_lattice(3)):
        leq = lat.leq.tolist()
        for a in range(lat.n):
            for b in range(lat.n):
                assert lat.join[a, b] == oracles.lub(leq, a, b)
                assert lat.meet[a, b] == oracles.glb(leq, a, b)


def test_absorption_and_bound_laws():
    for lat in (m3(), L.boolean_lattice(3), L.chain(5)):
        for a in range(lat.n):
            for b in range(lat.n):
                assert lat.leq[a, lat.join[a, b]]
                assert lat.leq[lat.meet[a, b], a]
                assert lat.join[a, lat.meet[a, b]] == a


def test_cycle_rejected():
    with pytest.raises(NotAPoset) as err:
        L.build_lattice(3, [(0, 1), (1, 2), (2, 0)])
    assert err.value.pair is not None


def test_no_unique_bound_rejected():
    # two maximal elements: the pair of tops has no join
    with pytest.raises(NotALattice) as err:
        L.build_lattice(4, [(0, 1), (0, 2)], mode="covers")
    assert err.value.pair is not None


def test_size_cap():
    with pytest.raises(SizeLimitExceeded):
        L.chain(10, name="big") and L.build_lattice(10, [], cap=5)
    with pytest.raises(SizeLimitExceeded):
        L.boolean_lattice(13)


def test_boolean_lattice_shape():
    lat = L.boolean_lattice(2)
    assert lat.n == 4
    assert L.atoms(lat) == {1, 2}
    assert L.coatoms(lat) == {1, 2}
    assert lat.join[1, 2] == 3 and lat.meet[1, 2] == 0
    assert L.boolean_lattice(0).n == 1


def test_distributivity():
    assert L.is_distributive(L.boolean_lattice(3)) == (True, None)
    assert L.is_distributive(L.chain(5)) == (True, None)
    ok, witness = L.is_distributive(m3())
    assert not ok
    assert oracles.naive_distributive(m3().join.tolist(), m3().meet.tolist())[0] is False
    a, b, c = witness
    lat = m3()
    assert lat.meet[lat.join[a, b], c] != lat.join[lat.meet[a, c], lat.meet[b, c]]


def test_dual_lattice_swaps_everything():
    for lat in (L.chain(3), L.boolean_lattice(3), m3()):
        dual = L.dual_lattice(lat)
        assert dual.bottom == lat.top and dual.top == lat.bottom
        assert (dual.leq == lat.leq.T).all()
        assert (dual.join == lat.meet).all() and (dual.meet == lat.join).all()
        assert L.atoms(dual) == L.coatoms(lat)
        back = L.dual_lattice(dual)
        assert (back.leq == lat.leq).all()


def test_chain_is_rigid():
    assert L.automorphisms(L.chain(5)) == [tuple(range(5))]
    assert L.automorphisms(L.build_lattice(1, [])) == [(0,)]


def test_bool2_automorphisms_against_full_enumeration():
    lat = L.boolean_lattice(2)
    found = L.automorphisms(lat)
    brute = oracles.all_bijection_automorphisms(lat.leq.tolist())
    assert sorted(found) == sorted(brute)
    assert len(found) == 2


def test_automorphism_group_axioms():
    for lat in (L.boolean_lattice(3), m3(), diamond()):
        autos = set(L.automorphisms(lat))
        assert tuple(range(lat.n)) in autos
        for g in autos:
            inverse = tuple(sorted(range(lat.n), key=lambda x: g[x]))
            assert inverse in autos
            for h in autos:
                assert tuple(g[h[x]] for x in range(lat.n)) in autos


def test_interval():
    lat = L.chain(4)
    assert L.interval(lat, 1, 3).members == (1, 2, 3)
    with pytest.raises(NotComparable):
        L.interval(L.boolean_lattice(2), 1, 2)


def test_interval_lattice_inherits_structure():
    lat = L.boolean_lattice(3)
    sub, members = L.interval_lattice(lat, 1, 7)
    assert members == (1, 3, 5, 7)
    # [atom, top] of a cube is a diamond
    assert sub.n == 4 and L.is_distributive(sub)[0]
    full, members = L.interval_lattice(lat, 0, 7)
    assert (full.leq == lat.leq).all()


def test_covers_of_chain():
    assert L.chain(4).covers() == [(0, 1), (1, 2), (2, 3)]


def test_caps_env(monkeypatch):
    monkeypatch.setenv("RADLAT_CAPS", "max_lattice=8, max_blocks=3")
    assert L.size_cap() == 8
    assert L.block_cap() == 3
    with pytest.raises(SizeLimitExceeded):
        L.chain(9)
