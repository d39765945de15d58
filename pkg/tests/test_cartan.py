"""The Cartan complex for torus actions."""
import random

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from eqcharclass.cartan import (
    EquivariantForm,
    cartan_d,
    cartan_d_defect,
    check_equivariance,
    expected_defect,
    invariant_part,
    is_invariant,
    wedge_equivariant,
)
from eqcharclass.core import POINT, Form, Scalar, contract, exterior_d, parse_expr
from eqcharclass.lie import ActionModel, TorusGroupModel, fundamental_vf, get_action
from eqcharclass.sampling import random_equivariant

from . import oracles

ROT = get_action("rotation-plane")
seeds = st.integers(0, 2**32 - 1)


def F(text, act=ROT):
    return parse_expr(text, act.space, forms=True)


def test_constant_is_closed():
    assert cartan_d(EquivariantForm.const(ROT, 3)).is_zero()


def test_point_polynomials_are_closed():
    act = ActionModel.trivial(TorusGroupModel(2, "u", "t2"), POINT)
    one = Form.const(POINT, 1)
    w = EquivariantForm(act, {(0, 0): one, (0, 1): one * 3, (1,): one})
    assert cartan_d(w).is_zero()


def test_rotation_moment_solved_symbolically():
    # mu = a x^2 + b x y + c y^2 with d mu = -i(X#)(dx^dy)
    a, b, c = sp.symbols("a b c")
    x, y = sp.symbols("x y")
    mu = a * x**2 + b * x * y + c * y**2
    v = oracles.sym_field(fundamental_vf(ROT, (1,)))
    target = oracles.contract(v, oracles.sym_form(F("dx^dy")))
    dmu = oracles.d({(): mu}, ROT.space)
    eqs = [sp.expand(dmu.get(k, 0) + target.get(k, 0)) for k in set(dmu) | set(target)]
    coeffs = []
    for e in eqs:
        coeffs.extend(sp.Poly(e, x, y).coeffs())
    sol = sp.solve(coeffs, [a, b, c], dict=True)[0]
    assert sol == {a: sp.Rational(1, 2), b: 0, c: sp.Rational(1, 2)}
    w = EquivariantForm(ROT, {(): F("dx^dy"), (0,): F("(x**2 + y**2)/2")})
    assert cartan_d(w).is_zero()


def test_defect_of_non_invariant_form():
    w = EquivariantForm.from_form(ROT, F("x*dy"))
    lhs = cartan_d_defect(w, 0)
    assert not lhs.is_zero()
    # independent: L = d i + i d by hand on x dy with X# = -y d/dx + x d/dy
    assert lhs == F("x*dx - y*dy")
    assert lhs == expected_defect(w, 0)


def test_defect_trivial_action():
    act = get_action("trivial")
    w = random_equivariant(act, random.Random(3))
    assert cartan_d_defect(w, 0).is_zero()


@pytest.mark.parametrize("name", ["rotation-plane", "hopf", "torus-plane", "rotation-line"])
@given(seed=seeds)
def test_defect_equals_lie_derivative(name, seed):
    act = get_action(name)
    w = random_equivariant(act, random.Random(seed))
    for a in range(act.algebra.dim):
        assert cartan_d_defect(w, a) == expected_defect(w, a)


@pytest.mark.parametrize("name", ["rotation-plane", "hopf", "torus-plane"])
@given(seed=seeds)
def test_squares_to_zero_on_equivariant(name, seed):
    act = get_action(name)
    w = random_equivariant(act, random.Random(seed), invariant=True)
    assert check_equivariance(w)
    assert cartan_d(cartan_d(w)).is_zero()


@given(seed=seeds)
def test_cartan_d_is_a_derivation(seed):
    rng = random.Random(seed)
    a = random_equivariant(ROT, rng)
    b = random_equivariant(ROT, rng)
    a0 = EquivariantForm(ROT, {m: f.homogeneous_part(1) for m, f in a.components.items()})
    lhs = cartan_d(a0 ^ b)
    assert lhs == (cartan_d(a0) ^ b) - (a0 ^ cartan_d(b))


def test_wedge_unit_and_point_product():
    w = EquivariantForm(ROT, {(0,): F("x*dy")})
    assert wedge_equivariant(EquivariantForm.const(ROT, 1), w) == w
    act = ActionModel.trivial(TorusGroupModel(2, "u", "t2"), POINT)
    one = Form.const(POINT, 1)
    p = EquivariantForm(act, {(0,): one, (1,): one * 2})
    q = EquivariantForm(act, {(0,): one * 3, (1,): one})
    # (xi1 + 2 xi2)(3 xi1 + xi2) = 3 xi1^2 + 7 xi1 xi2 + 2 xi2^2
    assert p ^ q == EquivariantForm(act, {(0, 0): one * 3, (0, 1): one * 7, (1, 1): one * 2})


def test_total_degree_additive():
    a = EquivariantForm(ROT, {(0,): F("x + y")})
    b = EquivariantForm(ROT, {(): F("dx^dy")})
    assert a.total_degree() == 2 and b.total_degree() == 2
    assert (a ^ b).total_degree() == 4


def test_equivariance_examples():
    assert check_equivariance(EquivariantForm.from_form(ROT, F("dx^dy")))
    assert not check_equivariance(EquivariantForm.from_form(ROT, F("x*dy")))
    triv = get_action("trivial")
    assert check_equivariance(EquivariantForm.from_form(triv, parse_expr("x*dy", triv.space, forms=True)))


@given(seed=seeds)
def test_invariant_part_is_invariant_and_idempotent(seed):
    from eqcharclass.sampling import random_form

    f = random_form(ROT.space, random.Random(seed), 3, 2)
    g = invariant_part(ROT, f)
    assert is_invariant(ROT, g)
    assert invariant_part(ROT, g) == g


def test_json_round_trip():
    w = EquivariantForm(ROT, {(): F("dx^dy"), (0,): F("(x**2 + y**2)/2")})
    from eqcharclass.core import dumps
    import json

    assert EquivariantForm.from_json(ROT, json.loads(dumps(w.to_json()))) == w
