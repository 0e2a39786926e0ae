import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import RING_TEXTS, rand_coeff, rand_op, ring
from twistcalc.config import parse_config
from twistcalc.errors import InvalidTwist, ParseError, UnknownSymbol
from twistcalc.expr import parse
from twistcalc.oreweyl import GRADED, WEYL
from twistcalc.randgen import random_scalar


def test_config_examples():
    c = parse_config("field = Q(q)\ngenerators = x\nmode = laurent\ntwist x = q*x\n")
    assert c.strong and c.mode == "laurent"
    with pytest.raises(InvalidTwist):
        parse_config("field = Q; generators = x; mode = laurent; twist x = x + 1")
    c = parse_config("field = GF(3); generators = x; twist x = x + 1")
    assert c.strong
    assert c.summary()["twists"] == ["x -> x + 1"]


def test_defaults_and_families():
    c = parse_config("field = Q; generators = x, y; twist y = 3*y")
    assert c.summary()["twists"] == ["x -> x", "y -> 3*y"]
    fam = parse_config("field = Q(t); generators = x; twist x = t^2*x; twist x = t*x")
    assert len(fam.twist) == 2 and not fam.strong or len(fam.twist) == 2


@pytest.mark.parametrize(
    "src,loc",
    [
        ("field = Q\ngenerators = x\ntwist x = q*x", "3:11"),
        ("field = Q\ngenerators = x\ntwist x = 2*x +", "3:16"),
        ("field = R\ngenerators = x", "1:9"),
        ("field = Q\n  generators x", "2:3"),
        ("field = Q\ngenerators = T", "2:14"),
        ("field = Q\ngenerators = x\ncolour = red", "3:1"),
    ],
)
def test_config_error_locations(src, loc):
    with pytest.raises((ParseError, UnknownSymbol, InvalidTwist)) as exc:
        parse_config(src)
    assert str(exc.value).startswith(loc) or loc in str(exc.value)


def test_nonaffine_twist_rejected():
    with pytest.raises(InvalidTwist):
        parse_config("field = Q; generators = x; twist x = x^2")
    with pytest.raises(InvalidTwist):
        parse_config("field = Q; generators = x, y; twist x = x + y")


def test_operator_grammar():
    c = ring("qdil")
    # juxtaposition is noncommutative product in written order
    assert c.parse_operator("d x") == c.parse_operator("d*x")
    assert c.parse_operator("-d^2") == -c.parse_operator("d") ** 2
    assert c.parse_operator("-x d") == c.parse_operator("(-x)*d")
    assert c.operator_kind("T*x") == GRADED and c.operator_kind("x d") == WEYL
    with pytest.raises(ParseError):
        c.operator_kind("T*d")
    with pytest.raises(UnknownSymbol):
        c.parse_coeff("z + 1")
    with pytest.raises(ParseError) as exc:
        parse("x + * 2")
    assert str(exc.value).startswith("1:5")


def test_matrix_syntax():
    c = ring("two")
    a = c.parse_matrix("[x, 1] [0, y]")
    b = c.parse_matrix("[[x, 1], [0, y]]")
    assert a == b and len(a) == 2
    with pytest.raises(ParseError):
        c.parse_matrix("[x, 1] [0]")


# -- print / parse round trip --------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(list(RING_TEXTS)), st.integers(0, 2**31))
def test_coefficient_round_trip(name, seed):
    c = ring(name)
    rng = random.Random(seed)
    f = rand_coeff(c, rng)
    assert c.parse_coeff(str(f)) == f
    s = random_scalar(c.field, rng)
    assert c.parse_scalar(str(s)) == s


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([n for n in RING_TEXTS if n != "ratfunc"]), st.sampled_from([GRADED, WEYL]),
       st.integers(0, 2**31))
def test_operator_round_trip(name, kind, seed):
    c = ring(name)
    alg = c.algebra(kind)
    P_ = rand_op(alg, random.Random(seed))
    assert c.parse_operator(str(P_), kind) == P_
