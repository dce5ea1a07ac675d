import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.errors import BadPrime, PreradicalSyntaxError, UnknownName
from entroflow.parser import format_preradical, parse_preradical
from entroflow.preradicals import (
    Alpha,
    Coproduct,
    Identity,
    Join,
    Meet,
    Omega,
    Product,
    PTorsion,
    Torsion,
    Zero,
)

Z2 = mc.finite_module([2])
NAMES = {"Z2": Z2, "all": mc.whole(Z2), "none": mc.zero_submodule(Z2)}


def test_examples():
    assert parse_preradical("ptor(2) | ptor(3)") == Join(PTorsion(2), PTorsion(3))
    assert parse_preradical("tor . (zero : id)") == Product(Torsion(), Coproduct(Zero(), Identity()))
    with pytest.raises(BadPrime):
        parse_preradical("ptor(4)")


def test_precedence_and_associativity():
    assert parse_preradical("zero : id | tor & ptor(2) . id") == Coproduct(
        Zero(), Join(Identity(), Meet(Torsion(), Product(PTorsion(2), Identity())))
    )
    assert parse_preradical("zero | id | tor") == Join(Join(Zero(), Identity()), Torsion())
    assert parse_preradical("zero . id . tor") == Product(Product(Zero(), Identity()), Torsion())


def test_alpha_omega_names():
    e = parse_preradical("alpha(Z2, all) & omega(Z2, none)", NAMES)
    assert e == Meet(Alpha(Z2, mc.whole(Z2)), Omega(Z2, mc.zero_submodule(Z2)))
    assert format_preradical(e) == "alpha(Z2, all) & omega(Z2, none)"
    with pytest.raises(UnknownName):
        parse_preradical("alpha(Z3, all)", NAMES)
    with pytest.raises(UnknownName):
        parse_preradical("alpha(all, Z2)", NAMES)


@pytest.mark.parametrize(
    "text, position",
    [("", 0), ("zero |", 6), ("ptor(2", 6), ("(id", 3), ("id id", 3), ("tor $", 4), ("frob", 0)],
)
def test_syntax_errors_report_positions(text, position):
    with pytest.raises(PreradicalSyntaxError) as err:
        parse_preradical(text)
    assert err.value.position == position


def test_formatting_is_minimal():
    assert format_preradical(Join(PTorsion(2), PTorsion(3))) == "ptor(2) | ptor(3)"
    assert format_preradical(Product(Torsion(), Coproduct(Zero(), Identity()))) == "tor . (zero : id)"
    assert format_preradical(Join(Zero(), Join(Identity(), Torsion()))) == "zero | (id | tor)"
    assert format_preradical(Join(Join(Zero(), Identity()), Torsion())) == "zero | id | tor"


@given(st.integers(0, 2**32), st.integers(0, 4))
def test_round_trip(seed, depth):
    e = bt.random_expr(random.Random(seed), depth)
    assert parse_preradical(format_preradical(e)) == e
    assert parse_preradical(str(e)) == e
