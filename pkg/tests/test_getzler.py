"""The Getzler complex and the map J."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcharclass.core import Form, drop_generators, parse_expr
from eqcharclass.lie import get_action
from eqcharclass.sampling import random_cochain, random_form
from eqcharclass.simplicial import ActionSpace, SimplicialForm, simplicial_del
from eqcharclass.simplicial.getzler import (
    GetzlerCochain,
    J_map,
    chain_map_check,
    dbar,
    getzler_defects,
    group_average,
    iota_bar,
    pr0,
)
from eqcharclass.simplicial.spaces import SimplicialError

ROT = ActionSpace(get_action("rotation-plane"))
HOPF = ActionSpace(get_action("hopf"))
seeds = st.integers(0, 2**32 - 1)


def on(p, text, X=ROT):
    return parse_expr(text, X.chart(p), forms=True)


def cochain(p, text, X=ROT, mono=()):
    return GetzlerCochain(X, p, {mono: on(p, text, X)})


def test_group_directions_rejected():
    with pytest.raises(SimplicialError):
        cochain(1, "du1")


# ---------------------------------------------------------------- dbar


def test_dbar_of_invariant_form():
    assert dbar(cochain(0, "dx^dy + (x**2 + y**2)*dx^dy")).is_zero()


def test_dbar_of_x_dy_is_the_del_pattern():
    f = cochain(0, "x*dy")
    got = dbar(f)
    want = drop_generators(simplicial_del(SimplicialForm(ROT, 0, on(0, "x*dy"))).form, ROT.group_indices(1))
    assert got.components[()] == want
    assert not got.is_zero()


@given(seeds, st.integers(0, 1))
def test_dbar_squared(seed, p):
    f = random_cochain(ROT, p, random.Random(seed))
    assert dbar(dbar(f)).is_zero()


# ---------------------------------------------------------------- group average


def test_average_of_slot_independent_cochain():
    assert group_average(cochain(1, "x*dy")) == cochain(0, "x*dy")
    # the surviving second slot becomes the first one
    assert group_average(cochain(2, "u2*x + y")) == cochain(1, "u1*x + y")


@pytest.mark.parametrize("n", [1, -1, 2, 3])
def test_average_of_character(n):
    assert group_average(cochain(1, f"u1**{n}*x*dy")).is_zero()


@given(seeds, st.integers(0, 1))
def test_contraction_identity(seed, p):
    g = random_cochain(ROT, p, random.Random(seed))
    f = dbar(g)
    assert dbar(group_average(f)) == f


def test_group_average_needs_positive_level():
    with pytest.raises(SimplicialError):
        group_average(cochain(0, "x"))


# ---------------------------------------------------------------- iota bar


def test_iota_bar_level_zero():
    assert iota_bar(cochain(0, "x*dy")).is_zero()


@pytest.mark.parametrize("n", [1, -2, 3])
def test_iota_bar_of_character(n):
    # d/dt exp(int) at 0 is i n
    got = iota_bar(cochain(1, f"u1**{n}*x*dy"))
    assert got == GetzlerCochain(ROT, 0, {(0,): on(0, f"{n}*I*x*dy")})


@given(seeds)
def test_iota_bar_squared(seed):
    f = random_cochain(ROT, 2, random.Random(seed))
    assert iota_bar(iota_bar(f)).is_zero()


@pytest.mark.parametrize("X", [ROT, HOPF], ids=["rot", "hopf"])
@settings(max_examples=15)
@given(seed=seeds, p=st.integers(0, 2))
def test_getzler_identities(X, seed, p):
    f = random_cochain(X, p, random.Random(seed))
    assert getzler_defects(f) == {}


# ---------------------------------------------------------------- J


def test_J_level_zero_is_identity():
    f = on(0, "x*dy + y**2")
    (c,) = J_map(SimplicialForm(ROT, 0, f))
    assert c == GetzlerCochain.from_form(ROT, 0, f)


def test_J_on_forms_without_group_differentials():
    w = on(1, "(u1 + u1**-1)*x*dy")
    c0, c1 = J_map(SimplicialForm(ROT, 1, w))
    assert c0.is_zero()
    assert c1 == GetzlerCochain.from_form(ROT, 1, w)


def test_J_contracts_group_differentials():
    w = on(1, "du1^(x*dy)")
    c0, c1 = J_map(SimplicialForm(ROT, 1, w))
    # i(i u1 d/du1) du1 = i u1, evaluated at u1 = 1
    assert c0 == GetzlerCochain(ROT, 0, {(0,): on(0, "I*x*dy")})
    assert c1.is_zero()


@pytest.mark.parametrize("X", [ROT, HOPF], ids=["rot", "hopf"])
@settings(max_examples=12)
@given(seed=seeds, p=st.integers(0, 2))
def test_J_is_a_chain_map(X, seed, p):
    x = SimplicialForm(X, p, random_form(X.chart(p), random.Random(seed), 2, 1, max_degree=3))
    rep = chain_map_check(x)
    assert rep["ok"], rep["failures"]


def test_pr0_keeps_level_zero():
    c0 = cochain(0, "x*dy")
    c1 = cochain(1, "y")
    w = pr0([c0, c1])
    assert w.components == {(): on(0, "x*dy")}
