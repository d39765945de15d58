"""Charts, Laurent scalars, exterior calculus, parsing and serialization."""
import json
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from eqcharclass.core import (
    ChartError,
    Form,
    GaussQ,
    ParseError,
    Scalar,
    Substitution,
    VectorField,
    complex_chart,
    contract,
    drop_variable,
    dumps,
    euclidean,
    exterior_d,
    form_from_json,
    form_to_json,
    identity_substitution,
    integrate_param,
    lie_derivative,
    parse_expr,
    product,
    pullback,
    scalar_from_json,
    scalar_to_json,
    sphere3,
    torus_chart,
    wedge,
    with_interval,
)

from . import oracles
from .strategies import fields, forms, scalars

R2 = euclidean("x", "y")
R3 = euclidean("x", "y", "z")
T2R1 = product(torus_chart("u"), euclidean("x", "y"))
S3 = sphere3()


def F(text, chart=R2):
    return parse_expr(text, chart, forms=True)


def S(text, chart=R2):
    return parse_expr(text, chart)


# ---------------------------------------------------------------- coefficients


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_gaussq_field_axioms(a, b, c, d):
    x, y = GaussQ(a, b), GaussQ(c, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x
    assert x.conjugate().conjugate() == x
    assert complex(*(float(v) for v in (a, b))) * complex(float(c), float(d)) == pytest.approx((x * y).to_complex())


def test_gaussq_i_squared():
    i = GaussQ(0, 1)
    assert i * i == GaussQ(-1)


# ---------------------------------------------------------------- scalars


@given(scalars(T2R1), scalars(T2R1))
def test_scalar_product_matches_sympy(a, b):
    assert sp.expand(oracles.sym_scalar(a * b) - oracles.sym_scalar(a) * oracles.sym_scalar(b)) == 0


def test_unit_variable_inverse():
    u = Scalar.var(T2R1, "u")
    assert u * u.inverse() == Scalar.const(T2R1, 1)
    assert u.conjugate() == Scalar.var(T2R1, "u", -1)


def test_negative_power_of_real_variable_rejected():
    with pytest.raises(ChartError):
        Scalar.var(R2, "x", -1)


def test_sphere_relation_reduces_to_one():
    assert S("z1*z1b + z2*z2b", S3) == Scalar.const(S3, 1)


# ---------------------------------------------------------------- wedge


def test_wedge_repeated_generator():
    assert wedge(F("dx"), F("dx")).is_zero()


def test_wedge_antisymmetric():
    assert wedge(F("dx"), F("dy")) == -wedge(F("dy"), F("dx"))


def test_wedge_example():
    # numeric oracle: evaluate both sides on random points and vectors
    from eqcharclass.numeric import eval_form

    lhs = wedge(F("x*dy"), F("y*dx"))
    rhs = F("-x*y*dx^dy")
    assert lhs == rhs
    rng = random.Random(5)
    for _ in range(20):
        pt = {"x": rng.uniform(-2, 2), "y": rng.uniform(-2, 2)}
        vs = [{"x": rng.uniform(-1, 1), "y": rng.uniform(-1, 1)} for _ in range(2)]
        assert eval_form(lhs, pt, vs) == pytest.approx(eval_form(rhs, pt, vs))


@given(forms(R3), forms(R3))
def test_wedge_matches_oracle(a, b):
    assert oracles.same(oracles.sym_form(wedge(a, b)), oracles.wedge(oracles.sym_form(a), oracles.sym_form(b)))


@given(forms(R3, max_degree=1), forms(R3), forms(R3))
def test_wedge_graded_leibniz(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    a = a.homogeneous_part(1)
    lhs = exterior_d(wedge(a, b))
    rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * -1
    assert lhs == rhs


# ---------------------------------------------------------------- d


def test_d_of_constant():
    assert exterior_d(Form.const(R2, 7)).is_zero()


def test_d_example():
    assert exterior_d(F("x*dy")) == F("dx^dy")


def test_d_finite_difference():
    from eqcharclass.numeric import eval_form, fd_exterior_d

    theta = F("x*dy")
    rng = random.Random(1)
    for _ in range(10):
        pt = {"x": rng.uniform(-1, 1), "y": rng.uniform(-1, 1)}
        v, w = {"x": 1.0, "y": 0.3}, {"x": -0.2, "y": 0.9}
        assert fd_exterior_d(theta, pt, v, w) == pytest.approx(eval_form(exterior_d(theta), pt, [v, w]), rel=1e-6)


def test_d_of_sphere_relation():
    f = Form.scalar(S("z1*z1b + z2*z2b", S3))
    assert f == Form.const(S3, 1)
    assert exterior_d(f).is_zero()


@given(forms(T2R1))
def test_d_matches_oracle(f):
    assert oracles.same(oracles.sym_form(exterior_d(f)), oracles.d(oracles.sym_form(f), f.chart))


@given(forms(S3, terms=2, max_exp=1))
def test_d_squared_on_sphere(f):
    assert exterior_d(exterior_d(f)).is_zero()


# ---------------------------------------------------------------- contraction and Lie derivative


def test_contract_zero_form():
    v = VectorField.from_names(R2, {"x": 1})
    assert contract(v, F("x*y")).is_zero()


def test_contract_dual_pairing():
    v = VectorField.from_names(R2, {"x": 1})
    assert contract(v, F("dx^dy")) == F("dy")


def test_contract_rotation_field():
    # hand expansion: i(V)(dx^dy) = dx(V) dy - dy(V) dx with V = x d/dy - y d/dx
    v = VectorField.from_names(R2, {"x": S("-y"), "y": S("x")})
    assert contract(v, F("dx^dy")) == F("-x*dx - y*dy")


@given(fields(R3), forms(R3))
def test_contract_matches_oracle(v, f):
    got = oracles.sym_form(contract(v, f))
    assert oracles.same(got, oracles.contract(oracles.sym_field(v), oracles.sym_form(f)))


@given(fields(S3), forms(S3, terms=2, max_exp=1))
def test_contract_squared(v, f):
    assert contract(v, contract(v, f)).is_zero()


def test_lie_derivative_examples():
    dx = VectorField.from_names(R2, {"x": 1})
    assert lie_derivative(dx, Form.const(R2, 1)).is_zero()
    assert lie_derivative(dx, F("x*dy")) == F("dy")
    rot = VectorField.from_names(R2, {"x": S("-y"), "y": S("x")})
    assert lie_derivative(rot, F("dx^dy")).is_zero()


@given(fields(T2R1), forms(T2R1))
def test_cartan_magic_formula(v, f):
    lhs = lie_derivative(v, f)
    assert lhs == exterior_d(contract(v, f)) + contract(v, exterior_d(f))


# ---------------------------------------------------------------- pullback


def test_identity_pullback():
    f = F("x*dy + y^2*dx^dy")
    assert pullback(identity_substitution(R2), f) == f


def test_pullback_torus_multiplication():
    src = torus_chart("w")
    tgt = torus_chart("u", "v")
    sub = Substitution.from_names(src, tgt, {"w": "u*v"})
    mc = F("w**-1*dw", src)
    assert pullback(sub, mc) == F("u**-1*du + v**-1*dv", tgt)


def test_constant_substitution_kills_generators():
    sub = Substitution.from_names(R2, euclidean("s"), {"x": "3", "y": "s"})
    assert pullback(sub, F("dx")).is_zero()


@given(st.integers(0, 2**32 - 1))
def test_pullback_commutes_with_d(seed):
    rng = random.Random(seed)
    tgt = euclidean("s", "t")
    images = {"x": "s*t + 1", "y": "s**2 - t"}
    sub = Substitution.from_names(R2, tgt, images)
    from eqcharclass.sampling import random_form

    f = random_form(R2, rng, terms=2, max_exp=2)
    assert pullback(sub, exterior_d(f)) == exterior_d(pullback(sub, f))


# ---------------------------------------------------------------- fibre integration


def test_integrate_param_examples():
    C = with_interval(R2)
    base = drop_variable(C, "t")
    assert integrate_param(F("dx", C)).is_zero()
    assert integrate_param(F("t**2*dt^dx", C)) == F("1/3*dx", base)
    assert integrate_param(F("dt^(x*dy)", C)) == F("x*dy", base)


# ---------------------------------------------------------------- parsing and serialization


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_expr("x +", R2)
    with pytest.raises(ParseError):
        parse_expr("w", R2)
    with pytest.raises(ParseError):
        parse_expr("x**y", R2)


def test_zero_serializes_to_empty_list():
    assert dumps(form_to_json(Form.zero(R2))) == "[]"


@given(forms(T2R1))
def test_form_json_round_trip(f):
    text = dumps(form_to_json(f))
    assert form_from_json(json.loads(text), T2R1) == f
    assert dumps(form_to_json(form_from_json(json.loads(text), T2R1))) == text


@given(scalars(complex_chart("z")))
def test_scalar_json_round_trip(s):
    assert scalar_from_json(json.loads(dumps(scalar_to_json(s))), s.chart) == s


def test_latex_output():
    assert "\\wedge" in F("dx^dy").to_str(latex=True)
    assert str(F("dx^dy")) == "dx∧dy"


def test_wedge_binds_tighter_than_sum():
    C = euclidean("a", "b", "c", "d")
    lhs = parse_expr("da^db + dc^dd", C, forms=True)
    rhs = wedge(Form.d_of(C, "a"), Form.d_of(C, "b")) + wedge(Form.d_of(C, "c"), Form.d_of(C, "d"))
    assert lhs == rhs
    assert parse_expr("2*da∧db/4", C, forms=True) == wedge(Form.d_of(C, "a"), Form.d_of(C, "b")) * Fraction(1, 2)
