import json

import pytest

from radlat.errors import RadlatError
from radlat.fuzz import RunConfig
from radlat.report import VerdictReport
from radlat.suites import SUITES, _Aggregate, run_suite

FAST = RunConfig(fuzz_seed=3, fuzz_count=12, max_blocks=3, max_block_size=2)


def test_every_registered_suite_runs_clean():
    for name in SUITES:
        rep = run_suite(name, FAST)
        assert rep.passed, (name, rep.failures()[:1])
        assert rep.clauses


def test_unknown_suite_rejected():
    with pytest.raises(RadlatError):
        run_suite("nope", FAST)


def test_all_merges_with_prefixes():
    rep = run_suite("all", FAST)
    assert rep.passed
    prefixes = {cl.cid.split("/", 1)[0] for cl in rep.clauses}
    assert prefixes == set(SUITES)


def test_aggregate_keeps_first_failure_with_instance_label():
    agg = _Aggregate("demo")
    good = VerdictReport("x")
    good.add("c", "clause", True)
    bad = VerdictReport("x")
    bad.add("c", "clause", False, witness=(1, 2))
    worse = VerdictReport("x")
    worse.add("c", "clause", False, witness=(3, 4))
    agg.feed("i0", good)
    agg.feed("i1", bad)
    agg.feed("i2", worse)
    rep = agg.report()
    assert not rep.passed
    clause = rep.clauses[0]
    assert clause.witness == {"instance": "i1", "witness": (1, 2)}


def test_aggregate_skip_when_hypotheses_never_met():
    agg = _Aggregate("demo")
    rep_in = VerdictReport("x")
    rep_in.skip("h", "hypothesis clause", "not applicable")
    agg.feed("i0", rep_in)
    rep = agg.report()
    assert rep.clauses[0].status == "skip"


def test_json_lines_stable_under_clause_order():
    one = VerdictReport("s")
    one.add("b", "later", True)
    one.add("a", "earlier", True)
    two = VerdictReport("s")
    two.add("a", "earlier", True)
    two.add("b", "later", True)
    assert one.to_json_lines() == two.to_json_lines()
    parsed = [json.loads(line) for line in one.to_json_lines().strip().split("\n")]
    assert parsed[1]["clause"] == "a"


def test_config_property_list_drives_model_suites():
    slim = RunConfig(fuzz_seed=1, fuzz_count=4, max_blocks=2, max_block_size=2,
                     properties=("comm",))
    rep = run_suite("t41", slim)
    assert rep.passed
    rep = run_suite("closure-laws", slim)
    assert rep.passed
