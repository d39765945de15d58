"""Lie algebras, torus actions, fundamental fields and invariant polynomials."""
import itertools

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from eqcharclass.core import Form, GaussQ, I, Scalar, VectorField, euclidean, parse_expr
from eqcharclass.lie import (
    Ad,
    AlgebraForm,
    LieError,
    abelian_algebra,
    abelian_power,
    bracket,
    evaluate_inv_poly,
    evaluate_power,
    fundamental_vf,
    get_action,
    get_algebra,
    invariance_defects,
    jacobi_defects,
    symmetry_defects,
    trace_polynomial,
    vf_bracket_sign,
)
from eqcharclass.registry import load_registry

from . import oracles

R2 = euclidean("x", "y")
small = st.integers(-3, 3)


def to_sym(m):
    return sp.Matrix([[oracles.coeff(v) for v in row] for row in m])


@pytest.mark.parametrize("name", ["sl2", "gl2-formal"])
def test_structure_constants_from_commutators(name):
    alg = get_algebra(name)
    for a, b in itertools.product(range(alg.dim), repeat=2):
        A = to_sym(alg.matrices[a])
        B = to_sym(alg.matrices[b])
        want = A * B - B * A
        got = to_sym(alg.to_matrix(bracket(alg, alg.basis_element(a), alg.basis_element(b))))
        assert got == want


def test_sl2_e_f_is_h():
    alg = get_algebra("sl2")
    assert bracket(alg, alg.basis_element(0), alg.basis_element(1)) == alg.basis_element(2)


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_bracket_antisymmetric(x, y):
    alg = get_algebra("sl2")
    assert bracket(alg, x, x) == (GaussQ(0),) * 3
    assert bracket(alg, x, y) == tuple(-c for c in bracket(alg, y, x))


def test_abelian_bracket_vanishes():
    alg = abelian_algebra("t3", 3)
    assert bracket(alg, (1, 2, 3), (3, -1, 0)) == (GaussQ(0),) * 3


@pytest.mark.parametrize("name", ["u1", "torus2", "sl2", "gl2-formal"])
def test_jacobi(name):
    assert jacobi_defects(get_algebra(name)) == []


def test_left_action_bracket_sign():
    # X -> X# is an anti-homomorphism for a left action
    assert vf_bracket_sign(get_algebra("sl2")) == -1
    assert vf_bracket_sign(get_algebra("gl2-formal")) == -1


# ---------------------------------------------------------------- Ad


def test_Ad_torus_and_identity():
    alg = get_algebra("torus2")
    assert Ad(alg, None, (1, 5)) == alg.element((1, 5))
    sl2 = get_algebra("sl2")
    assert Ad(sl2, [[1, 0], [0, 1]], (1, 2, 3)) == sl2.element((1, 2, 3))


@given(st.lists(small, min_size=4, max_size=4), small, small, small)
def test_Ad_matches_matrix_conjugation(x, a, b, c):
    alg = get_algebra("gl2-formal")
    g = [[1 + a * a, b], [c, 1]]
    if (1 + a * a) - b * c == 0:
        return
    G = sp.Matrix(g)
    want = G * to_sym(alg.to_matrix(alg.element(x))) * G.inv()
    assert to_sym(alg.to_matrix(Ad(alg, g, x))) == want


def test_Ad_unsupported_without_matrices():
    from eqcharclass.lie import LieAlgebraModel

    alg = LieAlgebraModel("odd", ("a", "b"), ("a*", "b*"), (((0, 1, 0), GaussQ(1)),))
    with pytest.raises(LieError):
        Ad(alg, [[1, 0], [0, 1]], (1, 0))


# ---------------------------------------------------------------- fundamental fields


def test_trivial_action_field():
    assert fundamental_vf(get_action("trivial"), (1,)).is_zero()


def test_rotation_line_field():
    act = get_action("rotation-line")
    C = act.space
    z, zb = Scalar.var(C, "z"), Scalar.var(C, "zb")
    # differentiate u = exp(it) at t = 0
    want = VectorField.from_names(C, {"z": z * I, "zb": zb * (-I)})
    assert fundamental_vf(act, (1,)) == want
    doubled = VectorField.from_names(C, {"z": z * I * 2, "zb": zb * (-I) * 2})
    assert fundamental_vf(get_action("weighted-rotation"), (1,)) == doubled


def test_rotation_plane_field():
    act = get_action("rotation-plane")
    C = act.space
    want = VectorField.from_names(C, {"x": -Scalar.var(C, "y"), "y": Scalar.var(C, "x")})
    assert fundamental_vf(act, (1,)) == want


def test_registry_loads_every_entry():
    reg = load_registry()
    for name in reg.algebra_names():
        assert get_algebra(name).dim >= 1
    for name in reg.action_names():
        act = get_action(name)
        assert act.substitution().source == act.space


# ---------------------------------------------------------------- invariant polynomials


def test_identity_polynomial_on_curvature():
    P = abelian_power(get_algebra("u1"), 1)
    om = AlgebraForm(P.algebra, [parse_expr("dx^dy", R2, forms=True)])
    assert evaluate_inv_poly(P, [om]) == parse_expr("dx^dy", R2, forms=True)


def test_square_overflows_top_degree():
    P = abelian_power(get_algebra("u1"), 2)
    om = AlgebraForm(P.algebra, [parse_expr("dx^dy", R2, forms=True)])
    assert evaluate_power(P, om).is_zero()


def test_trace_square_matches_polarization():
    alg = get_algebra("gl2-formal")
    P = trace_polynomial(alg, 2)
    C = euclidean("a", "b", "c", "d")
    x = [parse_expr(s, C, forms=True) for s in ("da", "a*db", "dc", "b*da + dd")]
    y = [parse_expr(s, C, forms=True) for s in ("c*dd", "da", "db - dc", "a*dc")]
    got = evaluate_inv_poly(P, [AlgebraForm(alg, x), AlgebraForm(alg, y)])
    # brute force: A = sum x_k E_k with entries in the exterior algebra
    E = [to_sym(m) for m in alg.matrices]
    sx = [oracles.sym_form(f) for f in x]
    sy = [oracles.sym_form(f) for f in y]
    want = {}
    for perm in ((0, 1), (1, 0)):
        args = [sx, sy]
        for k1, k2 in itertools.product(range(4), repeat=2):
            tr = (E[k1] * E[k2]).trace()
            if tr == 0:
                continue
            a1, a2 = args[perm[0]][k1], args[perm[1]][k2]
            w = oracles.wedge(a1, a2) if perm == (0, 1) else oracles.wedge(a2, a1)
            for key, val in w.items():
                want[key] = want.get(key, 0) + sp.Rational(1, 2) * tr * val
    assert oracles.same(oracles.sym_form(got), want)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_trace_polynomials_invariant(q):
    for name in ("sl2", "gl2-formal"):
        P = trace_polynomial(get_algebra(name), q)
        assert invariance_defects(P) == []
        assert symmetry_defects(P) == []


def test_polynomial_product_is_symmetric_product():
    alg = get_algebra("torus2")
    P, Q = abelian_power(alg, 1, weights=(1, 0)), abelian_power(alg, 1, weights=(0, 1))
    PQ = P.times(Q)
    assert PQ.coeff_map == {(0, 1): GaussQ(1, 0) / 2}
    assert PQ.value([(1, 0), (0, 1)]) == GaussQ(1, 0) / 2


def test_arity_mismatch():
    P = abelian_power(get_algebra("u1"), 2)
    om = AlgebraForm(P.algebra, [Form.const(R2, 1)])
    with pytest.raises(LieError):
        evaluate_inv_poly(P, [om])
