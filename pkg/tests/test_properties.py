import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radlat import properties as P
from radlat.cstar import ModelAlgebra, enumerate_algebras
from radlat.errors import ParseError


def alg(text):
    return ModelAlgebra.parse(text)


def ev(text, algebra_text):
    return P.compile_property(P.parse_property(text)).test(alg(algebra_text))


# --- parsing ----------------------------------------------------------------


def test_parse_basic():
    expr = P.parse_property("G(R(simple))")
    assert expr == P.OpCall("G", P.OpCall("R", P.Atom("simple")))
    expr = P.parse_property("dim<=4 & comm")
    assert expr == P.BinOp("&", P.Atom("dim", 4), P.Atom("comm"))


def test_parse_errors():
    with pytest.raises(ParseError):
        P.parse_property("G(")
    with pytest.raises(ParseError):
        P.parse_property("dim<4")
    with pytest.raises(ParseError):
        P.parse_property("frob")
    with pytest.raises(ParseError) as err:
        P.parse_property("comm comm")
    assert err.value.position > 0


def test_precedence():
    expr = P.parse_property("!comm & one | zero")
    assert expr == P.BinOp("|", P.BinOp("&", P.Not(P.Atom("comm")), P.Atom("one")), P.Atom("zero"))


def test_format_parse_roundtrip_examples():
    for text in [
        "comm",
        "dim<=4 & comm",
        "G(one) | !simple",
        "!(blocks<=1) & blocks<=2",
        "dG(R(simple))",
        "comm & (one | simple)",
        "!!comm",
    ]:
        expr = P.parse_property(text)
        assert P.parse_property(P.format_property(expr)) == expr


_atoms = st.sampled_from(
    [P.Atom("zero"), P.Atom("all"), P.Atom("comm"), P.Atom("simple"), P.Atom("one"),
     P.Atom("dim", 4), P.Atom("blockdim", 2), P.Atom("blocks", 3)]
)


def _exprs(depth):
    if depth == 0:
        return _atoms
    sub = _exprs(depth - 1)
    return st.one_of(
        _atoms,
        st.builds(P.Not, sub),
        st.builds(lambda l_, r_: P.BinOp("&", l_, r_), sub, sub),
        st.builds(lambda l_, r_: P.BinOp("|", l_, r_), sub, sub),
        st.builds(P.OpCall, st.sampled_from(P.OPS), sub),
    )


@settings(max_examples=150, deadline=None)
@given(_exprs(3))
def test_format_parse_roundtrip_random(expr):
    assert P.parse_property(P.format_property(expr)) == expr


# --- evaluation -------------------------------------------------------------


def test_atoms():
    assert not ev("comm", "1,1,2") and ev("comm", "1,1")
    assert ev("simple", "3") and not ev("simple", "1,1")
    assert ev("one", "1") and not ev("one", "2") and not ev("one", "1,1")
    assert ev("dim<=4", "2") and not ev("dim<=4", "1,2")
    assert ev("blockdim<=2", "1,2,2") and not ev("blockdim<=2", "3")
    assert ev("blocks<=2", "1,2") and not ev("blocks<=2", "1,1,1")
    assert ev("zero", "") and not ev("zero", "1")
    assert ev("all", "3,3,3")


def test_zero_algebra_always_satisfies():
    zero = ModelAlgebra(())
    for text in ["comm", "!comm", "zero", "!zero", "NG(all)", "dNG(all)", "G(one)", "!(dim<=4)"]:
        assert P.compile_property(P.parse_property(text)).test(zero), text


def test_not_reintroduces_zero():
    assert ev("!comm", "2") and not ev("!comm", "1,1")
    assert ev("!all", "") and not ev("!all", "1")


def test_operator_examples():
    assert not ev("dG(one)", "1,2") and ev("dG(one)", "1,1")
    assert not ev("G(one)", "2")
    assert ev("R(simple)", "2,3") and ev("R(simple)", "")
    assert ev("G(comm)", "1,1,1") and not ev("G(comm)", "1,2")
    assert ev("NG(one)", "2,3") and not ev("NG(one)", "1,2")
    # no nonzero quotient of [2] is commutative, so the dual-void form holds
    assert ev("dNG(comm)", "2") and not ev("dNG(comm)", "1")


def test_g_one_equals_comm_extensionally():
    universe = enumerate_algebras(4, 3)
    g_one = P.compile_property(P.parse_property("G(one)"))
    comm = P.compile_property(P.parse_property("comm"))
    assert P.same_over(g_one, comm, universe)[0]


def test_gpi_equals_r_extensionally():
    universe = enumerate_algebras(4, 3)
    for text in ["comm", "simple", "one", "dim<=4", "blockdim<=2"]:
        sem = P.compile_property(P.parse_property(text))
        ok, w = P.same_over(P.op_GPi(sem), P.op_R(sem), universe)
        assert ok, (text, w)


@settings(max_examples=80, deadline=None)
@given(_exprs(2), st.lists(st.integers(1, 3), max_size=4))
def test_memo_consistency(expr, blocks):
    algebra = ModelAlgebra.of(blocks)
    sem = P.compile_property(expr)
    assert sem.test(algebra) == sem.test(algebra)
    # isomorphism invariance: evaluation only sees the sorted multiset
    assert sem.test(ModelAlgebra.of(tuple(reversed(sorted(blocks))))) == sem.test(algebra)


def test_set_property():
    table = P.set_property("demo", [(), (1,), (1, 1)])
    assert table.test(ModelAlgebra(())) and table.test(alg("1,1"))
    assert not table.test(alg("2"))
