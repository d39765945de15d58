"""Simplicial spaces, the simplicial de Rham complex and Dupont forms."""
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcharclass.chern_weil import get_connection, polynomial
from eqcharclass.core import Form, Scalar, lift, parse_expr, pullback
from eqcharclass.lie import TorusGroupModel, get_action
from eqcharclass.sampling import random_form
from eqcharclass.simplicial import (
    NK,
    ActionSpace,
    DupontForm,
    NbarK,
    SimplicialForm,
    double_complex_defect,
    dupont_chart,
    dupont_d,
    gamma_defects,
    simplex_integrate,
    simplex_monomial_integral,
    simplicial_connection,
    simplicial_del,
    universal_connection,
)
from eqcharclass.simplicial.checks import random_dupont_form, stokes_defects
from eqcharclass.simplicial.dupont import _integrate_level, barycentric, orientation_sign, vertex_substitution, volume_form

from . import oracles

ROT = ActionSpace(get_action("rotation-plane"))
TRIV = ActionSpace(get_action("trivial"))
HOPF = ActionSpace(get_action("hopf"))
seeds = st.integers(0, 2**32 - 1)


def on(X, p, text):
    return parse_expr(text, X.chart(p), forms=True)


def on_dupont(X, p, text):
    return parse_expr(text, dupont_chart(X, p), forms=True)


# ---------------------------------------------------------------- simplicial identities


@pytest.mark.parametrize("X", [ROT, HOPF, NbarK(TorusGroupModel(1, "k")), NK(TorusGroupModel(1, "k")), NbarK(TorusGroupModel(2, "k"))], ids=["rot", "hopf", "nbar", "nk", "nbar-t2"])
def test_simplicial_identities(X):
    assert X.relation_defects(4) == []


def test_gamma_is_simplicial():
    K = TorusGroupModel(1, "k")
    assert gamma_defects(NbarK(K), NK(K), 3) == []


def test_faces_of_action_space():
    # d_0 drops g_1, d_1 multiplies, d_2 acts with g_2
    C = ROT.chart(2)
    f = lambda i: [str(s) for s in ROT.face(2, i).images]
    assert f(0) == ["u2", "x", "y"]
    assert f(1) == ["u1*u2", "x", "y"]
    assert pullback(ROT.face(2, 2), on(ROT, 1, "u1")) == on(ROT, 2, "u1")


# ---------------------------------------------------------------- simplicial del


def test_del_of_invariant_form_trivial_action():
    w = SimplicialForm(TRIV, 0, on(TRIV, 0, "x*dy"))
    assert simplicial_del(w).is_zero()


def test_del_of_x_dy_under_rotation():
    w = SimplicialForm(ROT, 0, on(ROT, 0, "x*dy"))
    got = simplicial_del(w)
    act = get_action("rotation-plane").substitution()
    direct = lift(on(ROT, 0, "x*dy"), ROT.chart(1))
    acted = pullback(act, on(ROT, 0, "x*dy"))
    # act is on T(u) x R^2; rename u -> u1
    from eqcharclass.core import Substitution

    ren = Substitution.from_names(act.target, ROT.chart(1), {"u": "u1"})
    assert got.form == direct - pullback(ren, acted)
    assert not got.is_zero()


@given(seeds, st.integers(0, 1))
def test_del_squared(seed, p):
    x = SimplicialForm(ROT, p, random_form(ROT.chart(p), random.Random(seed), 2, 1, max_degree=2))
    assert simplicial_del(simplicial_del(x)).is_zero()
    assert not double_complex_defect(x)


# ---------------------------------------------------------------- simplex integration


def test_simplex_volume():
    vols = volume_form(ROT, 5)
    for p in range(6):
        assert _integrate_level(ROT, p, vols[p]) == Form.const(ROT.chart(p), Fraction(1, factorial(p)))


def test_orientation_is_dt0_first():
    # Delta^p is oriented by dt_0 ^ ... ^ dt_{p-1} = (-1)^p dt_1 ^ ... ^ dt_p
    for p in range(6):
        assert orientation_sign(p) == (-1) ** p
        names = [f"dt{i}" for i in range(1, p + 1)]
        text = "^".join(names) if names else "1"
        got = _integrate_level(ROT, p, on_dupont(ROT, p, text))
        assert got == Form.const(ROT.chart(p), Fraction((-1) ** p, factorial(p)))


def test_one_simplex_examples():
    # t_0 dt_0 integrates to 1/2; with t_0 = 1 - t_1 the form t_0 dt_1 gives -1/2
    assert _integrate_level(ROT, 1, on_dupont(ROT, 1, "(t1 - 1)*dt1")) == Form.const(ROT.chart(1), Fraction(1, 2))
    assert _integrate_level(ROT, 1, on_dupont(ROT, 1, "(1 - t1)*dt1")) == Form.const(ROT.chart(1), Fraction(-1, 2))


def test_one_simplex_with_forms():
    # int (dt_0 theta_0 + dt_1 theta_1) = theta_0 - theta_1
    th0, th1 = "x*dy", "u1*dx"
    w = on_dupont(ROT, 1, f"-dt1^({th0}) + dt1^({th1})")
    assert _integrate_level(ROT, 1, w) == on(ROT, 1, f"{th0} - ({th1})")


def test_level_zero_integration_is_identity():
    f = on(ROT, 0, "x*dy + y")
    w = DupontForm(ROT, [lift(f, dupont_chart(ROT, 0))])
    assert simplex_integrate(w)[0].form == f


@pytest.mark.parametrize("exps", [(), (0,), (3,), (1, 2), (2, 0, 1), (1, 1, 1, 1)])
def test_monomial_integral_matches_iterated_integral(exps):
    assert simplex_monomial_integral(exps) == oracles.simplex_integral(exps)


@settings(max_examples=10)
@given(seeds)
def test_stokes_and_compatibility(seed):
    rng = random.Random(seed)
    w1, w2 = random_dupont_form(ROT, rng), random_dupont_form(ROT, rng)
    assert w1.is_compatible()
    assert dupont_d(w1).is_compatible()
    assert (w1 * w2).is_compatible()
    assert stokes_defects(w1) == []


# ---------------------------------------------------------------- simplicial connections


def test_simplicial_connection_levels():
    c = get_connection("hopf", "hopf", 0)
    (theta,) = simplicial_connection(c, p_max=2)
    X = theta.space
    assert theta.levels[0] == lift(c.components[0], dupont_chart(X, 0))
    ts = barycentric(dupont_chart(X, 1), 1)
    act = pullback(vertex_substitution(X, 1, 0), c.components[0])
    pr = pullback(vertex_substitution(X, 1, 1), c.components[0])
    assert theta.levels[1] == act * ts[0] + pr * ts[1]
    assert theta.is_compatible() and not theta.degeneracy_defects()


def test_simplicial_connection_trivial_action():
    c = get_connection("trivial-r2", "trivial", 0)
    (theta,) = simplicial_connection(c, p_max=1)
    assert theta.levels[1] == lift(c.components[0], dupont_chart(theta.space, 1))


def test_universal_connection_compatible():
    (theta,) = universal_connection(TorusGroupModel(1, "k"), p_max=3)
    assert theta.is_compatible()
    assert not theta.degeneracy_defects()
