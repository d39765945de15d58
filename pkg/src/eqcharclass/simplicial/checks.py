"""End-to-end comparisons between the simplicial and the Cartan pictures."""
from __future__ import annotations

import random
from typing import Dict, List, Sequence

from ..cartan import EquivariantForm
from ..chern_weil import Connection, equivariant_char_form, make_trivial_bundle, trivial_action, trivial_mc
from ..core import POINT, Form, Scalar, VectorField, contract, exterior_d, lie_derivative, lift, pullback
from ..lie import InvariantPolynomial, TorusGroupModel, abelian_power
from .derham import SimplicialForm, simplicial_del
from .dupont import (
    DupontForm,
    dupont_char_form,
    dupont_chart,
    dupont_d,
    simplex_integrate,
    simplicial_connection,
    universal_connection,
    vertex_family,
)
from .getzler import J_map, pr0
from .spaces import ActionSpace, NbarK, nbar_identification


def lift_vf(v: VectorField, chart) -> VectorField:
    src = v.chart
    return VectorField.from_names(chart, {src.variables[i]: lift(s, chart) for i, s in v.coefficients.items()})


def pr0_J_integral(w: DupontForm) -> EquivariantForm:
    """``pr_0 J int_Delta w``: the level-0 parts of J applied to every level."""
    chains = []
    for x in simplex_integrate(w):
        chains.extend(J_map(x))
    return pr0(chains)


def levelwise_basic_defects(w: DupontForm, bundle) -> List[str]:
    """Horizontality and K-invariance (as vanishing Lie derivative) of each level."""
    bad = []
    fields = bundle.vertical_fields()
    for p, f in enumerate(w.levels):
        for a, v in enumerate(fields):
            y = lift_vf(v, f.chart)
            if not contract(y, f).is_zero():
                bad.append(f"level {p} not horizontal for Y_{a}")
            if not lie_derivative(y, f).is_zero():
                bad.append(f"level {p} not K-invariant for Y_{a}")
    return bad


def _diff_report(lhs: EquivariantForm, rhs: EquivariantForm) -> Dict[str, str]:
    diff = lhs - rhs
    return {lhs.monomial_name(m): str(f) for m, f in sorted(diff.components.items())}


def classform_check(P: InvariantPolynomial, conn: Connection, p_max: int = None) -> Dict[str, object]:
    """Compare ``pr_0 J int_Delta omega_P(Theta)`` with ``P(Omega + mu)``."""
    p_max = P.degree if p_max is None else max(p_max, P.degree)
    theta = simplicial_connection(conn, p_max)
    omega = dupont_char_form(P, theta)
    report: Dict[str, object] = {"polynomial": P.name, "p_max": p_max}
    report["compatibility"] = omega.compatibility_defects()
    report["basic"] = levelwise_basic_defects(omega, conn.bundle)
    lhs = pr0_J_integral(omega)
    rhs = equivariant_char_form(P, conn)
    report["simplicial"] = str(lhs)
    report["cartan"] = str(rhs)
    report["mismatch"] = _diff_report(lhs, rhs)
    report["ok"] = not (report["compatibility"] or report["basic"] or report["mismatch"])
    return report


def _truncate(w: EquivariantForm, n: int) -> EquivariantForm:
    return EquivariantForm(w.action, {m: f for m, f in w.components.items() if len(m) <= n})


def algebra_hom_check(w1: DupontForm, w2: DupontForm) -> Dict[str, object]:
    """``pr_0 J int (w1 ^ w2)`` against the product of the images.

    Level ``p`` only feeds the ``xi``-degree ``p`` part, so forms truncated at
    ``p_max`` are compared up to that polynomial degree.
    """
    n = min(w1.p_max, w2.p_max)
    lhs = _truncate(pr0_J_integral(w1 * w2), n)
    rhs = _truncate(pr0_J_integral(w1) ^ pr0_J_integral(w2), n)
    mismatch = _diff_report(lhs, rhs)
    return {"product": str(lhs), "ok": not mismatch, "mismatch": mismatch}


def universal_bundle(K: TorusGroupModel = None):
    """``K -> pt`` with ``G = K`` acting by left translation and ``theta_0 = k^-1 dk``."""
    K = K or TorusGroupModel(1, "k", "u1")
    G = TorusGroupModel(K.rank, "u", K.name)
    B = make_trivial_bundle("universal", POINT, K, trivial_action(G, POINT), weight=1)
    return Connection(B, [trivial_mc(B)], label="k^-1 dk")


def universal_inverse_check(P: InvariantPolynomial, p_max: int = None) -> Dict[str, object]:
    """``pr_0 J int_Delta omega_P(theta-bar)`` against ``P`` as a polynomial function on the algebra.

    The universal connection on N-bar K is transported to ``G^. x K`` (``G = K``
    acting by left translation); the value ``X = i xi`` of the basis element
    turns ``P`` into the polynomial ``P(i xi)`` in the dual coordinate.
    """
    conn = universal_bundle()
    K = conn.bundle.structure
    p_max = P.degree if p_max is None else max(p_max, P.degree)
    report: Dict[str, object] = {"polynomial": P.name, "p_max": p_max}
    nbar = NbarK(K)
    theta_bar = universal_connection(K, p_max, nbar)
    theta = simplicial_connection(conn, p_max)
    X = theta[0].space
    bad = []
    for p in range(p_max + 1):
        ident = nbar_identification(nbar, X, p)
        sub = _with_simplex(ident, dupont_chart(nbar, p), dupont_chart(X, p), p)
        if pullback(sub, theta_bar[0].levels[p]) != theta[0].levels[p]:
            bad.append(p)
    report["identification"] = bad
    lhs = pr0_J_integral(dupont_char_form(P, theta))
    want = {}
    q = P.degree
    c = P.coeff_map.get((0,) * q)
    if c:
        from ..core.coeffs import I

        want[(0,) * q] = Form.const(X.space, c * I ** q)
    rhs = EquivariantForm(X.action, want)
    report["result"] = str(lhs)
    report["mismatch"] = _diff_report(lhs, rhs)
    report["ok"] = not (bad or report["mismatch"])
    return report


def _with_simplex(sub, src, tgt, p):
    """Extend a substitution by the identity on the barycentric coordinates."""
    from ..core import Substitution

    images = [Scalar.var(tgt, f"t{i}") for i in range(1, p + 1)] + [lift(s, tgt) for s in sub.images]
    return Substitution(src, tgt, images, validate=False)


# ---------------------------------------------------------------- Stokes and random Dupont forms


def stokes_defects(w: DupontForm) -> List[str]:
    """``int_Delta dw = (-1)^p d int_Delta w - del int_Delta w`` at every level ``p``."""
    bad = []
    ints = simplex_integrate(w)
    dints = simplex_integrate(dupont_d(w))
    for p in range(w.p_max + 1):
        rhs = exterior_d(ints[p].form) * (-1 if p & 1 else 1)
        if p >= 1:
            rhs = rhs - simplicial_del(ints[p - 1]).form
        if dints[p].form != rhs:
            bad.append(f"level {p}")
    return bad


def random_space_form(chart, rng: random.Random, terms: int = 3, max_exp: int = 2) -> Form:
    out = Form.zero(chart)
    for _ in range(terms):
        s = Scalar.const(chart, rng.randint(-3, 3))
        for v, kind in zip(chart.variables, chart.kinds):
            e = rng.randint(-1, 1) if kind == "unit" else rng.randint(0, max_exp)
            if e:
                s = s * Scalar.var(chart, v, e)
        f = Form.scalar(s)
        for v in chart.variables:
            if rng.random() < 0.3:
                f = f ^ Form.d_of(chart, v)
        out = out + f
    return out


def random_dupont_form(X: ActionSpace, rng: random.Random, p_max: int = 2, normalized: bool = True) -> DupontForm:
    """A compatible Dupont form built from vertex families, wedges and d.

    ``normalized`` keeps to linear barycentric weights, which are also
    compatible with the degeneracies; otherwise one factor carries ``t_i^2``.
    """
    alpha = random_space_form(X.space, rng, terms=1, max_exp=1)
    beta = random_space_form(X.space, rng, terms=1, max_exp=1)
    w1 = vertex_family(X, alpha, p_max)
    w2 = vertex_family(X, beta, p_max, weight=None if normalized else (lambda t: t * t))
    choice = rng.randrange(4)
    if choice == 0:
        return w1 + w2
    if choice == 1:
        return w1 * dupont_d(w2)
    if choice == 2:
        return dupont_d(w1) + w2 * 2
    return dupont_d(w1) * dupont_d(w2)


def degeneracy_counterexample(X: ActionSpace, p_max: int = 2):
    """A face-compatible pair on which ``pr_0 J int`` is not multiplicative.

    ``A = sum t_i^2`` is compatible with the faces but not with the
    degeneracies; with ``B = sum t_i (g_{i+1}..g_p)^* x`` the product
    ``dA ^ dB`` integrates to ``-y/3 xi`` while each factor gives 0.
    """
    A = vertex_family(X, Form.const(X.space, 1), p_max, weight=lambda t: t * t)
    B = vertex_family(X, Form.scalar(Scalar.var(X.space, X.space.variables[0])), p_max)
    return dupont_d(A), dupont_d(B)
