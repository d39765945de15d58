"""Connections, curvature, moment maps, characteristic forms and transgressions."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcharclass.cartan import EquivariantForm, cartan_d, check_equivariance
from eqcharclass.chern_weil import (
    Connection,
    basic_defects,
    bundle_actions,
    bundle_names,
    char_form,
    compare_pb_vb,
    connection_count,
    curvature,
    equivariant_char_form,
    fibre_lie_derivative,
    get_connection,
    get_line_bundle,
    line_bundle_names,
    moment_map,
    polynomial,
    pull_connection,
    pullback_bundle,
    transgression,
    transgression_defect,
    triangle_transgression,
    vb_moment_map,
)
from eqcharclass.core import Form, Scalar, euclidean, exterior_d, lift, parse_expr, pullback
from eqcharclass.numeric import curvature_oracle
from eqcharclass.simplicial.checks import universal_bundle

ID, SQ = polynomial("id"), polynomial("X^2")


def registered():
    for b in bundle_names():
        for a in bundle_actions(b):
            for i in range(connection_count(b, a)):
                yield b, a, i


ALL = list(registered())


def on_total(conn, text):
    return parse_expr(text, conn.bundle.total, forms=True)


def on_base(conn, text):
    return lift(parse_expr(text, conn.bundle.base, forms=True), conn.bundle.total)


# ---------------------------------------------------------------- curvature and moment maps


def test_flat_maurer_cartan():
    c = get_connection("trivial-r2", "trivial", 1)
    assert curvature(c).components[0].is_zero()


def test_trivial_r2_curvature():
    c = get_connection("trivial-r2", "trivial", 0)
    assert curvature(c).components[0] == on_base(c, "dx^dy")


def test_hopf_curvature():
    c = get_connection("hopf", "hopf", 0)
    assert curvature(c).components[0] == on_total(c, "dz1b^dz1 + dz2b^dz2")


def test_moment_maps():
    assert moment_map(get_connection("trivial-r2", "trivial", 0), (1,)).components[0].is_zero()
    c = get_connection("hopf", "hopf", 0)
    assert moment_map(c, (1,)).components[0] == on_total(c, "I*z1*z1b")
    c = get_connection("trivial-r2", "rotation-plane", 0)
    assert moment_map(c, (1,)).components[0] == on_base(c, "(x**2 + y**2)/2")


def test_universal_moment_map_is_identity():
    c = universal_bundle()
    for v in (1, 3, -2):
        mu = moment_map(c, (v,)).components[0]
        assert mu == Form.const(c.bundle.total, 1) * (v * parse_expr("I", c.bundle.total))


@pytest.mark.parametrize("key", [("trivial-r2", "rotation-plane", 0), ("trivial-r2", "trivial", 0), ("hopf", "hopf", 0), ("hopf", "hopf", 1), ("weighted-hopf", "weighted-hopf", 0)])
def test_numeric_oracle(key):
    rep = curvature_oracle(get_connection(*key), samples=50, seed=1)
    assert rep["ok"], rep["failures"][:3]
    assert rep["max_rel_error"] <= 1e-6


# ---------------------------------------------------------------- registered examples


@pytest.mark.parametrize("key", ALL, ids=lambda k: "/".join(map(str, k)))
def test_registered_connection_is_valid(key):
    c = get_connection(*key)
    assert not c.normalization_defects()
    assert c.is_K_invariant() and c.is_G_invariant()
    assert not c.bundle.invariant_defects()


@pytest.mark.parametrize("key", ALL, ids=lambda k: "/".join(map(str, k)))
@pytest.mark.parametrize("P", [ID, SQ], ids=["id", "X^2"])
def test_char_form_basic_and_closed(key, P):
    c = get_connection(*key)
    w = equivariant_char_form(P, c)
    assert basic_defects(w, c.bundle) == []
    assert cartan_d(w).is_zero()
    assert exterior_d(char_form(P, c)).is_zero()
    assert check_equivariance(w)


def test_char_form_rotation_example():
    c = get_connection("trivial-r2", "rotation-plane", 0)
    w = equivariant_char_form(ID, c)
    assert w == EquivariantForm(w.action, {(): on_base(c, "dx^dy"), (0,): on_base(c, "(x**2 + y**2)/2")})


def test_degree_overflow_and_flat_cases():
    c = get_connection("trivial-r2", "trivial", 0)
    assert char_form(SQ, c).is_zero()
    assert equivariant_char_form(ID, get_connection("trivial-r2", "trivial", 1)).is_zero()


@pytest.mark.parametrize("key", ALL, ids=lambda k: "/".join(map(str, k)))
def test_polynomial_product_maps_to_wedge(key):
    c = get_connection(*key)
    assert equivariant_char_form(ID.times(ID), c) == equivariant_char_form(ID, c) ^ equivariant_char_form(ID, c)
    assert equivariant_char_form(SQ.times(ID), c) == equivariant_char_form(SQ, c) ^ equivariant_char_form(ID, c)


# ---------------------------------------------------------------- transgression


def test_transgression_of_equal_connections():
    c = get_connection("hopf", "hopf", 1)
    assert transgression(SQ, c, c).is_zero()


def test_transgression_example():
    c0 = get_connection("trivial-r2", "trivial", 1)
    c1 = get_connection("trivial-r2", "trivial", 0)
    t = transgression(ID, c0, c1)
    assert t == EquivariantForm.from_form(t.action, on_base(c0, "x*dy"))


@pytest.mark.parametrize("bundle,action", [("trivial-r2", "rotation-plane"), ("trivial-r2", "trivial"), ("hopf", "hopf")])
@pytest.mark.parametrize("P", [ID, SQ], ids=["id", "X^2"])
def test_transgression_formula(bundle, action, P):
    n = connection_count(bundle, action)
    cs = [get_connection(bundle, action, i) for i in range(n)]
    for a in cs:
        for b in cs:
            lhs = cartan_d(transgression(P, a, b))
            assert lhs == equivariant_char_form(P, b) - equivariant_char_form(P, a)


def test_additivity_defect_is_exact_but_not_zero():
    cs = [get_connection("trivial-r2", "rotation-plane", i) for i in (0, 1, 3)]
    defect = transgression_defect(SQ, *cs)
    assert not defect.is_zero()
    assert defect == cartan_d(triangle_transgression(SQ, *cs))
    want = EquivariantForm(defect.action, {(0,): on_base(cs[0], "(x**3 + x*y**2)/2*dx + (x**2*y + y**3)/2*dy")})
    assert defect == want


def test_additivity_defect_vanishes_for_id():
    cs = [get_connection("trivial-r2", "rotation-plane", i) for i in range(3)]
    assert transgression_defect(ID, *cs).is_zero()


# ---------------------------------------------------------------- naturality


@pytest.mark.parametrize("key", [("trivial-r2", "trivial", 0), ("trivial-r2", "trivial", 2)])
@pytest.mark.parametrize("P", [ID, SQ], ids=["id", "X^2"])
def test_pullback_naturality(key, P):
    conn = get_connection(*key)
    new, fbar = pullback_bundle(conn.bundle, euclidean("x"), {"x": "x", "y": "0"})
    pulled = pull_connection(conn, new, fbar)
    assert pullback(fbar, char_form(P, conn)) == char_form(P, pulled)
    assert pullback(fbar, curvature(conn).components[0]) == curvature(pulled).components[0]


# ---------------------------------------------------------------- vector bundle comparison


@pytest.mark.parametrize("name", line_bundle_names())
def test_principal_and_vector_bundle_moment_maps_agree(name):
    L = get_line_bundle(name)
    B, conn = L.principal()
    rep = compare_pb_vb(conn, L)
    assert rep["ok"], rep["mismatch"]


@pytest.mark.parametrize("name", line_bundle_names())
def test_perturbed_connection_is_detected(name):
    L = get_line_bundle(name)
    B, conn = L.principal()
    bent = Connection(B, [conn.components[0] + parse_expr("x*y*dx", B.total, forms=True)])
    assert not compare_pb_vb(bent, L)["ok"]


def test_vb_moment_map_expansion():
    L = get_line_bundle("line-r2-w1")
    B = L.base
    x = Scalar.var(B, "x")
    # nabla_{X#} x = -y + A(X#) x and the weight-1 fibre term adds i x + y
    want = x * parse_expr("I + (x**2 + y**2)/2", B)
    assert vb_moment_map(L, (1,), x) == want
    assert fibre_lie_derivative(L, (1,), Scalar.const(B, 1)) == parse_expr("I", B)


def test_vb_moment_map_weight_zero_constant_section():
    L = get_line_bundle("line-r2-w0")
    B = L.base
    # weight 0 and a constant section: only A(X#) survives
    assert vb_moment_map(L, (1,), Scalar.const(B, 1)) == parse_expr("x**2", B)
