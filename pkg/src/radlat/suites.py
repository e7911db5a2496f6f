"""Verification suites: each bundles one cluster of checks over fuzzed
instances or a model universe and aggregates the per-instance verdicts into
a single report, keeping the first failing witness per clause."""

from __future__ import annotations

import time

import numpy as np

from . import cstar as cs
from . import radmap as rm
from . import relcalc as rc
from . import smallideal as sm
from .errors import RadlatError
from .fuzz import RunConfig, fuzz_distributive_lattices, fuzz_instances
from .lattice import boolean_lattice, chain
from .properties import compile_property, op_GPi, op_R, parse_property, same_over
from .report import FAIL, PASS, SKIP, VerdictReport


class _Aggregate:
    """Collapse many per-instance reports into one clause list."""

    def __init__(self, suite):
        self.suite = suite
        self.order = []
        self.stats = {}

    def feed(self, label, rep):
        for cl in rep.clauses:
            if cl.cid not in self.stats:
                self.order.append(cl.cid)
                self.stats[cl.cid] = {
                    "description": cl.description,
                    PASS: 0,
                    FAIL: 0,
                    SKIP: 0,
                    "witness": None,
                }
            stat = self.stats[cl.cid]
            stat[cl.status] += 1
            if cl.status == FAIL and stat["witness"] is None:
                stat["witness"] = {"instance": label, "witness": cl.witness}

    def report(self):
        rep = VerdictReport(self.suite)
        for cid in self.order:
            stat = self.stats[cid]
            if stat[PASS] == 0 and stat[FAIL] == 0:
                rep.skip(cid, stat["description"], "hypotheses never met")
                continue
            rep.add(
                cid,
                f"{stat['description']} [{stat[PASS]} instances]",
                stat[FAIL] == 0,
                stat["witness"],
            )
        return rep


def _universe(config):
    return cs.enumerate_algebras(config.max_blocks, config.max_block_size)


def _props(config):
    return [(text, parse_property(text)) for text in config.properties]


def suite_inf(config):
    agg = _Aggregate("inf")
    for k, (lat, rel) in enumerate(fuzz_instances(config)):
        agg.feed(k, rc.check_theorem_inf(rel))
    return agg.report()


def suite_t35(config):
    agg = _Aggregate("t35")
    for k, (lat, rel) in enumerate(fuzz_instances(config)):
        agg.feed(k, rc.check_t35(rel))
        flipped = rc.dualize(rel)
        agg.feed(f"{k}*", rc.check_t35(flipped))
        agg.feed(k, rc.check_automorphism_invariance(rel))
    return agg.report()


def suite_duality(config):
    """Every verdict on an instance equals the dual verdict on the dual."""
    agg = _Aggregate("duality")
    for k, (lat, rel) in enumerate(fuzz_instances(config)):
        rep = VerdictReport("duality-instance")
        co = rc.dualize(rel)
        rep.add("h-flip", "join-shift law flips to the meet-shift law",
                rc.is_h_relation(rel).ok == rc.is_dual_h_relation(co).ok, k)
        rep.add("dual-h-flip", "meet-shift law flips to the join-shift law",
                rc.is_dual_h_relation(rel).ok == rc.is_h_relation(co).ok, k)
        rep.add("r-order-flip", "series orders flip to dual series orders",
                rc.is_r_order(rel).ok == rc.is_dual_r_order(co).ok, k)
        ok, w = rc.matrix_diff(rc.rel_up(rel).rel, rc.rel_lo(co).rel.T)
        rep.add("up-lo-flip", "up-relation transposes to the lo-relation", ok, w)
        ok, w = rc.matrix_diff(rc.rel_tri_right(rel).rel, rc.rel_tri_left(co).rel.T)
        rep.add("tri-flip", "series closures transpose to each other", ok, w)
        ok, w = rc.matrix_diff(rc.comp_left(rel).rel, rc.comp_right(co).rel.T)
        rep.add("complement-flip", "left complement transposes to the right complement", ok, w)
        rep.add("radical-flip", "radicals flip to dual radicals",
                rc.find_radicals(rel) == rc.find_dual_radicals(co), k)
        ok, w = rc.matrix_diff(rc.h_closure(rel).rel, rc.dual_h_closure(co).rel.T)
        rep.add("closure-flip", "shift closures transpose to each other", ok, w)
        agg.feed(k, rep)
    return agg.report()


def suite_t41(config):
    agg = _Aggregate("t41")
    universe = _universe(config)
    for text, prop in _props(config):
        agg.feed(text, cs.check_t41(prop, universe))
    return agg.report()


def suite_t30_t37(config):
    agg = _Aggregate("t30-t37")
    universe = _universe(config)
    for text, prop in _props(config):
        agg.feed(text, cs.check_structure_theorems(prop, universe))
        agg.feed(text, cs.check_c42n(prop, universe))
    agg.feed("one<=comm", cs.check_gp_collapse(parse_property("one"), parse_property("comm"), universe))
    return agg.report()


def suite_closure_laws(config):
    agg = _Aggregate("closure-laws")
    universe = _universe(config)
    for text, prop in _props(config):
        agg.feed(text, cs.check_closure_laws(prop, universe))
        rep = VerdictReport("per-image")
        sem = compile_property(prop)
        ok, w = same_over(op_GPi(sem), op_R(sem), universe)
        rep.add("per-image-eq-per-block",
                "per-image and per-block operators agree on block models", ok, w)
        agg.feed(text, rep)
    rep = VerdictReport("named")
    comm, one = parse_property("comm"), parse_property("one")
    ok, w = same_over(compile_property(parse_property("G(comm)")), compile_property(comm), universe)
    rep.add("g-comm-fixed", "all-ones property equals its enlargement", ok, w)
    ok, w = same_over(compile_property(parse_property("dG(one)")), compile_property(comm), universe)
    rep.add("dg-one-comm", "dual enlargement of the unit property is the all-ones property", ok, w)
    agg.feed("named", rep)
    return agg.report()


def suite_t36_t34(config):
    agg = _Aggregate("t36-t34")
    universe = _universe(config)
    for text, prop in _props(config):
        agg.feed(text, cs.check_t36_t34(prop, universe))
    return agg.report()


def suite_compatible_maps(config):
    agg = _Aggregate("compatible-maps")
    universe = _universe(config)
    maps = [
        cs.size_block_map(lambda s: s <= 1, "size-upto-1"),
        cs.size_block_map(lambda s: s <= 2, "size-upto-2"),
        cs.size_block_map(lambda s: s <= 3, "size-upto-3"),
        cs.size_block_map(lambda s: True, "all-blocks"),
        cs.size_block_map(lambda s: s % 2 == 0, "even-size"),
    ]
    for bmap in maps:
        agg.feed(bmap.name, cs.check_compatible(bmap, universe))
        agg.feed(bmap.name, cs.check_ideal_map(bmap, universe))
        agg.feed(bmap.name, cs.check_t310(bmap, universe))
    rep = VerdictReport("separating")
    for n in (1, 2, 3):
        bound = compile_property(parse_property(f"blockdim<={n}"))
        sep = cs.separating_property(maps[n - 1])
        ok, w = same_over(sep, bound, universe)
        rep.add(
            f"separating-{n}",
            f"size-bounded selection separates exactly the blockdim<={n} algebras",
            ok,
            w,
        )
    ok, w = same_over(cs.separating_property(maps[0]), compile_property(parse_property("comm")), universe)
    rep.add("separating-1-comm", "size-one selection separates exactly the all-ones algebras", ok, w)
    agg.feed("separating", rep)
    return agg.report()


def suite_axioms(config):
    agg = _Aggregate("axioms")
    universe = _universe(config)
    for text, prop in _props(config):
        sem = compile_property(prop)
        if cs.is_upper_stable(sem, universe).ok:
            agg.feed(f"{text}:right", rm.check_axioms(rm.PropertyRadicalMap(sem, "right"), universe))
        if cs.is_lower_stable(sem, universe).ok:
            agg.feed(f"{text}:left", rm.check_axioms(rm.PropertyRadicalMap(sem, "left"), universe))
    agg.feed("zero", rm.check_axioms(rm.zero_map(), universe))
    agg.feed("identity", rm.check_axioms(rm.identity_map(), universe))

    rep = VerdictReport("violator")
    crafted = rm.TableRadicalMap("has-unit-block", lambda blocks: blocks if 1 in blocks else ())
    verdict = rm.check_axioms(crafted, universe)
    failing = [cl.cid for cl in verdict.failures()]
    witness = verdict.first_failure().witness if failing else None
    expected = (
        failing == ["quotient-monotone"]
        and witness is not None
        and witness[0] == cs.ModelAlgebra.parse("1,2")
    )
    rep.add(
        "crafted-violator",
        "the crafted map fails exactly quotient monotonicity at the two-block witness",
        expected,
        {"failing": failing, "witness": witness},
    )
    try:
        rm.TableRadicalMap("asymmetric", {(1, 1): (1,)})
        rep.add("asymmetric-rejected", "asymmetric table selections are rejected", False, None)
    except ValueError:
        rep.add("asymmetric-rejected", "asymmetric table selections are rejected", True, None)
    agg.feed("crafted", rep)
    return agg.report()


def suite_correspondence(config):
    agg = _Aggregate("correspondence")
    universe = _universe(config)
    for text, prop in _props(config):
        sem = compile_property(prop)
        if cs.is_upper_stable(sem, universe).ok:
            agg.feed(f"{text}:right", rm.check_correspondence(rm.PropertyRadicalMap(sem, "right"), universe))
        if cs.is_lower_stable(sem, universe).ok:
            agg.feed(f"{text}:left", rm.check_correspondence(rm.PropertyRadicalMap(sem, "left"), universe))
    agg.feed("zero", rm.check_correspondence(rm.zero_map(), universe))
    agg.feed("identity", rm.check_correspondence(rm.identity_map(), universe))
    return agg.report()


def suite_relation_function(config):
    agg = _Aggregate("relation-function")
    universe = cs.enumerate_algebras(min(config.max_blocks, 3), min(config.max_block_size, 2))
    fam = rm.ModelRelationFamily.from_property(parse_property("comm"), universe, name="comm-family")
    agg.feed("comm-family", rm.check_relation_function(fam))
    ident = rm.ModelRelationFamily(
        "identity-family", universe, lambda a: rc.identity_relation(a.ideal_lattice())
    )
    agg.feed("identity-family", rm.check_relation_function(ident))
    return agg.report()


def _small_fixtures(config):
    lattices = [chain(m) for m in range(1, 9)]
    lattices += [boolean_lattice(k) for k in range(0, 6)]
    lattices += fuzz_distributive_lattices(config.fuzz_seed, max(100, config.fuzz_count // 2), cap=64)
    return lattices


def suite_small(config):
    agg = _Aggregate("small")
    for lat in _small_fixtures(config):
        agg.feed(lat.name, sm.check_sm_structure(lat))
        agg.feed(lat.name, sm.check_t61(lat))
    agg.feed("universe", sm.check_ccr_corollary(_universe(config)))
    return agg.report()


def suite_c4(config):
    agg = _Aggregate("c4")
    for lat in _small_fixtures(config):
        agg.feed(lat.name, sm.check_c4(lat))
    rep = VerdictReport("fixture")
    c3 = chain(3)
    rep.add("chain3-middle", "three-chain yields its middle element", sm.r_sm_tri(c3) == 1, sm.r_sm_tri(c3))
    agg.feed("chain3", rep)
    return agg.report()


def suite_r3_demo(config):
    """The small-element family is not property-generated: its restriction
    condition fails on the three-chain, and no interval-class rule matches."""
    rep = VerdictReport("r3-demo")
    fam = rm.LatticeRelationFamily("small-family", [chain(3)], sm.rel_sm)
    verdict = rm.check_relation_function(fam)
    failing = [cl.cid for cl in verdict.failures()]
    witness = verdict.first_failure().witness if failing else None
    ok = (
        failing == ["c2-ideal"]
        and witness is not None
        and tuple(witness[1]) == (0, 1)
        and tuple(witness[2]) == (0, 1)
    )
    rep.add(
        "fails-only-restriction",
        "the small family fails exactly the ideal-restriction condition at (bottom, middle)",
        ok,
        {"failing": failing, "witness": witness},
    )
    biconditional = [cl for cl in verdict.clauses if cl.cid == "t45-biconditional"]
    rep.add(
        "not-a-radical-map",
        "the induced radical map fails the axioms, matching the failed generation test",
        bool(biconditional) and biconditional[0].status == PASS,
        None,
    )

    c3 = chain(3)
    target = sm.rel_sm(c3).rel
    classes = {}
    for a in range(3):
        for b in range(3):
            if c3.leq[a, b]:
                classes[(a, b)] = b - a + 1  # interval of a chain is a chain
    lengths = sorted(set(classes.values()))
    match = None
    for pick in range(1 << len(lengths)):
        chosen = {lengths[i] for i in range(len(lengths)) if pick >> i & 1}
        derived = np.zeros((3, 3), dtype=bool)
        for (a, b), size in classes.items():
            derived[a, b] = size in chosen
        if (derived == target).all():
            match = sorted(chosen)
            break
    rep.add(
        "no-interval-class-rule",
        "no interval-class rule reproduces the small relation on the three-chain",
        match is None,
        match,
    )

    universe = cs.enumerate_algebras(min(config.max_blocks, 3), min(config.max_block_size, 2))
    fam2 = rm.ModelRelationFamily.from_property(parse_property("comm"), universe, name="comm-family")
    verdict2 = rm.check_relation_function(fam2)
    rep.add("comm-family-generated", "the all-ones family passes the full generation test",
            verdict2.passed, [cl.cid for cl in verdict2.failures()])
    return rep


SUITES = {
    "inf": suite_inf,
    "t35": suite_t35,
    "duality": suite_duality,
    "t41": suite_t41,
    "t30-t37": suite_t30_t37,
    "closure-laws": suite_closure_laws,
    "t36-t34": suite_t36_t34,
    "compatible-maps": suite_compatible_maps,
    "axioms": suite_axioms,
    "correspondence": suite_correspondence,
    "relation-function": suite_relation_function,
    "small": suite_small,
    "c4": suite_c4,
    "r3-demo": suite_r3_demo,
}


def run_suite(name, config: RunConfig) -> VerdictReport:
    if name == "all":
        rep = VerdictReport("all")
        start = time.perf_counter()
        for sub in SUITES:
            inner = run_suite(sub, config)
            rep.extend(inner, prefix=f"{sub}/")
        rep.elapsed = time.perf_counter() - start
        return rep
    if name not in SUITES:
        raise RadlatError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    start = time.perf_counter()
    rep = SUITES[name](config)
    rep.elapsed = time.perf_counter() - start
    return rep
