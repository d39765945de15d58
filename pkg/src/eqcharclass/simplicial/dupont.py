"""Dupont forms on ``Delta^p x X_p``, exact simplex integration and simplicial connections."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Sequence

from ..core import (
    ChartModel,
    Form,
    GaussQ,
    Scalar,
    Substitution,
    exterior_d,
    lift,
    product,
    pullback,
    simplex_chart,
    wedge,
)
from ..core.forms import _acc
from ..lie import AlgebraForm, InvariantPolynomial, TorusGroupModel, evaluate_power
from .derham import SimplicialForm
from .spaces import ActionSpace, NbarK, SimplicialError, SimplicialSpace


@lru_cache(maxsize=None)
def dupont_chart(X: SimplicialSpace, p: int) -> ChartModel:
    """``Delta^p x X_p`` with the barycentric coordinates t1..tp first."""
    if p == 0:
        return X.chart(0)
    return product(simplex_chart(p), X.chart(p))


@lru_cache(maxsize=None)
def compat_chart(X: SimplicialSpace, p: int) -> ChartModel:
    """``Delta^{p-1} x X_p``, where both sides of face compatibility live."""
    if p == 1:
        return X.chart(1)
    return product(simplex_chart(p - 1), X.chart(p))


def barycentric(chart: ChartModel, p: int) -> List[Scalar]:
    """``[t_0, t_1, ..., t_p]`` on a chart containing t1..tp, with ``t_0 = 1 - sum``."""
    ts = [Scalar.var(chart, f"t{i}") for i in range(1, p + 1)]
    t0 = Scalar.const(chart, 1)
    for t in ts:
        t0 = t0 - t
    return [t0] + ts


@lru_cache(maxsize=None)
def coface_substitution(X: SimplicialSpace, p: int, i: int) -> Substitution:
    """Pullback along ``d^i x id: Delta^{p-1} x X_p -> Delta^p x X_p`` (insert ``t_i = 0``)."""
    src, tgt = dupont_chart(X, p), compat_chart(X, p)
    s = barycentric(tgt, p - 1)
    images = []
    for j in range(1, p + 1):
        if j < i:
            images.append(s[j])
        elif j == i:
            images.append(Scalar.zero(tgt))
        else:
            images.append(s[j - 1])
    images += [Scalar.var(tgt, v) for v in X.chart(p).variables]
    return Substitution(src, tgt, images, validate=False)


@lru_cache(maxsize=None)
def face_substitution(X: SimplicialSpace, p: int, i: int) -> Substitution:
    """Pullback along ``id x d_i: Delta^{p-1} x X_p -> Delta^{p-1} x X_{p-1}``."""
    src, tgt = dupont_chart(X, p - 1), compat_chart(X, p)
    images = [Scalar.var(tgt, f"t{j}") for j in range(1, p)]
    images += [lift(s, tgt) for s in X.face(p, i).images]
    return Substitution(src, tgt, images, validate=False)


@lru_cache(maxsize=None)
def codegeneracy_substitution(X: SimplicialSpace, p: int, j: int) -> Substitution:
    """Pullback along ``s^j x id: Delta^{p+1} x X_p -> Delta^p x X_p`` (merge ``t_j`` and ``t_{j+1}``)."""
    src = dupont_chart(X, p)
    tgt = product(simplex_chart(p + 1), X.chart(p)) if p + 1 else X.chart(p)
    s = barycentric(tgt, p + 1)
    merged = s[: j] + [s[j] + s[j + 1]] + s[j + 2:]
    images = merged[1:] + [Scalar.var(tgt, v) for v in X.chart(p).variables]
    return Substitution(src, tgt, images, validate=False)


@lru_cache(maxsize=None)
def degeneracy_substitution(X: SimplicialSpace, p: int, j: int) -> Substitution:
    """Pullback along ``id x s_j: Delta^{p+1} x X_p -> Delta^{p+1} x X_{p+1}``."""
    src = dupont_chart(X, p + 1)
    tgt = product(simplex_chart(p + 1), X.chart(p))
    images = [Scalar.var(tgt, f"t{i}") for i in range(1, p + 2)]
    images += [lift(s, tgt) for s in X.degeneracy(p, j).images]
    return Substitution(src, tgt, images, validate=False)


class DupontForm:
    """Sequence ``omega^(0..p_max)`` of forms on ``Delta^p x X_p``."""

    __slots__ = ("space", "levels")

    def __init__(self, space: SimplicialSpace, levels: Sequence[Form]):
        for p, f in enumerate(levels):
            if f.chart != dupont_chart(space, p):
                raise SimplicialError(f"level {p} form on the wrong chart")
        self.space = space
        self.levels = tuple(levels)

    @property
    def p_max(self) -> int:
        return len(self.levels) - 1

    def __add__(self, other):
        return DupontForm(self.space, [a + b for a, b in zip(self.levels, other.levels)])

    def __sub__(self, other):
        return DupontForm(self.space, [a - b for a, b in zip(self.levels, other.levels)])

    def __neg__(self):
        return DupontForm(self.space, [-a for a in self.levels])

    def __mul__(self, c):
        if isinstance(c, DupontForm):
            return dupont_wedge(self, c)
        return DupontForm(self.space, [a * c for a in self.levels])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DupontForm) and self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def is_zero(self):
        return all(f.is_zero() for f in self.levels)

    def compatibility_defects(self) -> List[str]:
        bad = []
        for p in range(1, self.p_max + 1):
            for i in range(p + 1):
                lhs = pullback(coface_substitution(self.space, p, i), self.levels[p])
                rhs = pullback(face_substitution(self.space, p, i), self.levels[p - 1])
                if lhs != rhs:
                    bad.append(f"face {i} at level {p}")
        return bad

    def degeneracy_defects(self) -> List[str]:
        """Compatibility with the degeneracies; not part of the definition, but
        the algebra-homomorphism property of ``pr_0 J int`` needs it."""
        bad = []
        for p in range(self.p_max):
            for j in range(p + 1):
                lhs = pullback(codegeneracy_substitution(self.space, p, j), self.levels[p])
                rhs = pullback(degeneracy_substitution(self.space, p, j), self.levels[p + 1])
                if lhs != rhs:
                    bad.append(f"degeneracy {j} at level {p}")
        return bad

    def is_compatible(self) -> bool:
        return not self.compatibility_defects()

    def __repr__(self):
        return "DupontForm(" + "; ".join(f"[{p}] {f}" for p, f in enumerate(self.levels)) + ")"


def dupont_d(w: DupontForm) -> DupontForm:
    return DupontForm(w.space, [exterior_d(f) for f in w.levels])


def dupont_wedge(a: DupontForm, b: DupontForm) -> DupontForm:
    n = min(a.p_max, b.p_max)
    return DupontForm(a.space, [wedge(a.levels[p], b.levels[p]) for p in range(n + 1)])


def simplex_monomial_integral(exps: Sequence[int]) -> Fraction:
    """``int_{Delta^p} t_1^a_1 ... t_p^a_p dt_1...dt_p = prod a_i! / (sum a + p)!``."""
    num = 1
    for a in exps:
        num *= factorial(a)
    return Fraction(num, factorial(sum(exps) + len(exps)))


def orientation_sign(p: int) -> int:
    """``dt_0 ^ dt_1 ^ ... ^ dt_{p-1} = (-1)^p dt_1 ^ ... ^ dt_p`` once ``t_0 = 1 - sum t_i``."""
    return -1 if p & 1 else 1


def _integrate_level(X: SimplicialSpace, p: int, f: Form) -> Form:
    target = X.chart(p)
    if p == 0:
        return f
    simplex_gens = tuple(range(p))
    sign = orientation_sign(p)
    out: Dict = {}
    for gens, s in f.terms.items():
        if gens[:p] != simplex_gens:
            continue
        raw: Dict = {}
        for m, c in s.terms.items():
            if any(m[k] < 0 for k in range(p)):
                raise SimplicialError("negative power of a barycentric coordinate")
            key = m[p:]
            val = c * GaussQ(simplex_monomial_integral(m[:p])) * sign
            raw[key] = raw[key] + val if key in raw else val
        _acc(out, tuple(g - p for g in gens[p:]), Scalar(target, raw))
    return Form(target, out)


def simplex_integrate(w: DupontForm) -> List[SimplicialForm]:
    """Levelwise ``int_{Delta^p}``: the simplex is oriented by ``dt_0 ^ ... ^ dt_{p-1}``
    and integrated first, ``int dt_0..dt_{p-1} ^ beta = vol(Delta^p) beta``."""
    return [SimplicialForm(w.space, p, _integrate_level(w.space, p, f)) for p, f in enumerate(w.levels)]


def integrate_level(X: SimplicialSpace, p: int, f: Form) -> SimplicialForm:
    return SimplicialForm(X, p, _integrate_level(X, p, f))


def volume_form(X: SimplicialSpace, p_max: int) -> List[Form]:
    """The positively oriented volume term ``dt_0 ^ ... ^ dt_{p-1}`` at each level (not a compatible family)."""
    out = []
    for p in range(p_max + 1):
        chart = dupont_chart(X, p)
        out.append(Form(chart, {tuple(range(p)): Scalar.const(chart, orientation_sign(p))}))
    return out


# ---------------------------------------------------------------- vertex families


def vertex_substitution(X: ActionSpace, p: int, i: int) -> Substitution:
    """Pullback along ``Delta^p x G^p x M -> M``, ``(t, g, x) -> g_{i+1} ... g_p x``."""
    chart = dupont_chart(X, p)
    g = X.product_images(chart, list(range(i + 1, p + 1)))
    return X.action.act_substitution(chart, g, X.space_vars(chart))


def vertex_family(X: ActionSpace, alpha: Form, p_max: int, weight: Callable = None) -> DupontForm:
    """``sum_i f(t_i) (g_{i+1}...g_p)^* alpha``; compatible whenever ``f(0) = 0`` (default ``f(t) = t``)."""
    levels = []
    for p in range(p_max + 1):
        chart = dupont_chart(X, p)
        ts = barycentric(chart, p)
        total = Form.zero(chart)
        for i in range(p + 1):
            w = ts[i] if weight is None else weight(ts[i])
            total = total + pullback(vertex_substitution(X, p, i), alpha) * w
        levels.append(total)
    return DupontForm(X, levels)


def simplicial_connection(conn, p_max: int = 3, check: bool = True) -> List[DupontForm]:
    """``Theta^(p) = t_0 theta_0 + ... + t_p theta_p`` on ``G^. x E`` (one Dupont form per component)."""
    if check and not conn.is_G_invariant():
        raise SimplicialError("simplicial connection needs a G-invariant connection")
    X = ActionSpace(conn.bundle.G_action)
    return [vertex_family(X, f, p_max) for f in conn.components]


def dupont_curvature(theta: Sequence[DupontForm]) -> List[DupontForm]:
    """Levelwise ``d Theta`` (torus structure group)."""
    return [dupont_d(t) for t in theta]


def dupont_char_form(P: InvariantPolynomial, theta: Sequence[DupontForm]) -> DupontForm:
    """``omega_P(Theta)`` levelwise: ``P(d Theta^(p), ..., d Theta^(p))``."""
    X = theta[0].space
    curv = dupont_curvature(theta)
    levels = []
    for p in range(theta[0].p_max + 1):
        comps = AlgebraForm(P.algebra, [c.levels[p] for c in curv])
        levels.append(evaluate_power(P, comps))
    return DupontForm(X, levels)


def universal_connection(K: TorusGroupModel, p_max: int = 3, nbar: NbarK = None) -> List[DupontForm]:
    """``theta-bar = sum_i t_i pi_i^* theta_0`` on N-bar K with ``theta_0 = k^-1 dk``."""
    nbar = nbar or NbarK(K)
    comps = []
    for a, name in enumerate(K.coordinate_names()):
        levels = []
        for p in range(p_max + 1):
            chart = dupont_chart(nbar, p)
            ts = barycentric(chart, p)
            total = Form.zero(chart)
            for i in range(p + 1):
                k = nbar.copy_names(i)[a]
                total = total + Form.d_of(chart, k) * Scalar.var(chart, k, -1) * ts[i]
            levels.append(total)
        comps.append(DupontForm(nbar, levels))
    return comps
