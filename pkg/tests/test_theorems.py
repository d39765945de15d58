"""The simplicial Chern-Weil comparison, its multiplicativity and the universal case."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcharclass.cartan import EquivariantForm
from eqcharclass.chern_weil import char_form, equivariant_char_form, get_connection, polynomial
from eqcharclass.lie import get_action
from eqcharclass.simplicial import ActionSpace, dupont_char_form, simplicial_connection
from eqcharclass.simplicial.checks import (
    algebra_hom_check,
    classform_check,
    degeneracy_counterexample,
    pr0_J_integral,
    random_dupont_form,
    universal_inverse_check,
)

seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize(
    "key,P",
    [
        (("trivial-r2", "rotation-plane", 0), "id"),
        (("trivial-r2", "rotation-plane", 0), "X^2"),
        (("trivial-r2", "rotation-plane", 2), "X^2"),
        (("hopf", "hopf", 0), "id"),
        (("hopf", "hopf", 1), "X^2"),
        (("weighted-hopf", "weighted-hopf", 0), "id"),
    ],
)
def test_simplicial_and_cartan_forms_agree(key, P):
    rep = classform_check(polynomial(P), get_connection(*key), p_max=3)
    assert rep["ok"], rep


@pytest.mark.parametrize("P", ["id", "X^2"])
def test_trivial_action_reduces_to_ordinary_chern_weil(P):
    conn = get_connection("trivial-r2", "trivial", 0)
    theta = simplicial_connection(conn, 2)
    got = pr0_J_integral(dupont_char_form(polynomial(P), theta))
    assert got == EquivariantForm.from_form(got.action, char_form(polynomial(P), conn))
    assert got == equivariant_char_form(polynomial(P), conn)


@pytest.mark.parametrize("name", ["rotation-plane", "hopf"])
@settings(max_examples=10)
@given(seed=seeds)
def test_integration_is_multiplicative(name, seed):
    X = ActionSpace(get_action(name))
    rng = random.Random(seed)
    w1, w2 = random_dupont_form(X, rng), random_dupont_form(X, rng)
    assert not w1.degeneracy_defects() and not w2.degeneracy_defects()
    rep = algebra_hom_check(w1, w2)
    assert rep["ok"], rep["mismatch"]


def test_degeneracy_compatibility_is_needed():
    X = ActionSpace(get_action("rotation-plane"))
    w1, w2 = degeneracy_counterexample(X)
    assert w1.is_compatible() and w2.is_compatible()
    assert w1.degeneracy_defects()
    rep = algebra_hom_check(w1, w2)
    assert not rep["ok"]
    assert rep["product"] == "(-1/3*y)*xi"
    assert pr0_J_integral(w1).is_zero() or pr0_J_integral(w2).is_zero()


@pytest.mark.parametrize("P,expected", [("id", "(i)*xi"), ("X^2", "(-1)*xi*xi"), ("X^3", "(-i)*xi*xi*xi")])
def test_universal_case(P, expected):
    # P evaluated on X = i xi
    rep = universal_inverse_check(polynomial(P), p_max=3)
    assert rep["identification"] == []
    assert rep["result"] == expected
    assert rep["ok"]
