"""Connections on equivariant principal torus bundles and their characteristic forms.

Conventions: the structure algebra is used in value coordinates, so a
connection on a U(1)-bundle is a single complex 1-form with
``i(Y#) theta = i`` for the basis element ``Y = i``.  The moment map is
``mu(X) = i(X#) theta`` and ``d_C = d + i(X#)``; with these signs
``P(Omega + mu)`` is ``d_C``-closed.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import EquivariantForm, cartan_d, frozen_pullback, is_invariant, wedge_equivariant
from .core import (
    ChartModel,
    Form,
    GaussQ,
    I,
    Scalar,
    Substitution,
    contract,
    drop_variable,
    euclidean,
    exterior_d,
    integrate_param,
    lift,
    parse_expr,
    product,
    pullback,
    sphere2,
    sphere3,
    torus_chart,
    with_interval,
)
from .lie import (
    ActionModel,
    AlgebraForm,
    InvariantPolynomial,
    LieError,
    TorusGroupModel,
    abelian_power,
    bracket_forms,
    fundamental_vf,
)


class BundleError(ValueError):
    pass


# ---------------------------------------------------------------- bundles


def extend_action(action: ActionModel, space: ChartModel, extra: Dict[str, Scalar] = None, name=None) -> ActionModel:
    """Extend an action on a factor of ``space`` (variables matched by name); ``extra`` sets more images."""
    pc = product(action.group.chart(), space)
    images = {}
    for v, img in zip(action.space.variables, action.images):
        images[v] = lift(img, pc)
    for v, img in (extra or {}).items():
        images[v] = img if isinstance(img, Scalar) else parse_expr(img, pc)
    return ActionModel.build(name or action.name, action.group, space, images)


def trivial_action(group: TorusGroupModel, space: ChartModel) -> ActionModel:
    return ActionModel.build("trivial", group, space, {})


@dataclass(frozen=True)
class PrincipalBundleModel:
    name: str
    total: ChartModel
    base: ChartModel
    structure: TorusGroupModel
    K_action: ActionModel
    projection: Substitution  # pullback along pi: functions on the base -> functions on E
    G_action: ActionModel
    G_base_action: ActionModel

    @property
    def G(self) -> TorusGroupModel:
        return self.G_action.group

    def vertical_fields(self):
        alg = self.structure.algebra
        return [fundamental_vf(self.K_action, alg.basis_element(a)) for a in range(alg.dim)]

    def invariant_defects(self) -> List[str]:
        """Failures of ``pi(g x) = g pi(x)`` and ``(g x) k = g (x k)``."""
        bad = []
        gE = self.G_action
        gM = self.G_base_action
        pc = gE.product_chart
        # pi o act_E versus act_M o (id x pi)
        lhs = [s.substitute(gE.images, pc) for s in self.projection.images]
        to_pc = [Scalar.var(pc, v) for v in gE.group.chart().variables] + [
            lift(s, pc) for s in self.projection.images
        ]
        rhs = [s.substitute(to_pc, pc) for s in gM.images]
        if lhs != rhs:
            bad.append("projection is not G-equivariant")
        # commuting actions on G x K x E
        kchart = self.K_action.group.chart()
        chart = product(gE.group.chart(), kchart, self.total)
        gvars = [Scalar.var(chart, v) for v in gE.group.chart().variables]
        kvars = [Scalar.var(chart, v) for v in kchart.variables]
        evars = [Scalar.var(chart, v) for v in self.total.variables]
        xk = self.K_action.act_images(chart, kvars, evars)
        g_xk = gE.act_images(chart, gvars, xk)
        gx = gE.act_images(chart, gvars, evars)
        gx_k = self.K_action.act_images(chart, kvars, gx)
        if g_xk != gx_k:
            bad.append("G- and K-actions do not commute")
        return bad


class Connection:
    """Structure-algebra valued 1-form on the total chart (one Form per basis element)."""

    __slots__ = ("bundle", "components", "label")

    def __init__(self, bundle: PrincipalBundleModel, components: Sequence[Form], label: str = ""):
        if len(components) != bundle.structure.rank:
            raise BundleError("one component per structure-algebra basis element")
        for f in components:
            if f.chart != bundle.total:
                raise BundleError("connection component not on the total chart")
            if f.degrees() not in ([], [1]):
                raise BundleError("connection components must be 1-forms")
        self.bundle = bundle
        self.components = tuple(components)
        self.label = label

    def algebra_form(self) -> AlgebraForm:
        return AlgebraForm(self.bundle.structure.algebra, self.components)

    def __add__(self, other):
        return Connection(self.bundle, [a + b for a, b in zip(self.components, other.components)])

    def __eq__(self, other):
        return isinstance(other, Connection) and self.bundle == other.bundle and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "; ".join(str(c) for c in self.components)

    def normalization_defects(self) -> List[Tuple[int, int]]:
        """Pairs (a, b) where ``i(Y_a#) theta_b`` is not ``i delta_ab``."""
        bad = []
        for a, v in enumerate(self.bundle.vertical_fields()):
            for b, f in enumerate(self.components):
                want = Form.const(f.chart, I if a == b else 0)
                if contract(v, f) != want:
                    bad.append((a, b))
        return bad

    def is_K_invariant(self) -> bool:
        return all(is_invariant(self.bundle.K_action, f) for f in self.components)

    def is_G_invariant(self) -> bool:
        return all(is_invariant(self.bundle.G_action, f) for f in self.components)


def curvature(conn: Connection) -> AlgebraForm:
    """``d theta + 1/2 [theta, theta]`` (the bracket term vanishes for tori)."""
    a = conn.algebra_form()
    out = a.map(exterior_d)
    br = bracket_forms(a, a)
    if not br.is_zero():
        out = out + br * GaussQ(1, 0) / 2
    return out


def moment_map(conn: Connection, x) -> AlgebraForm:
    """``mu(X) = i(X#) theta`` as structure-algebra valued function on E."""
    v = fundamental_vf(conn.bundle.G_action, x)
    return conn.algebra_form().map(lambda f: contract(v, f))


def equivariant_curvature(conn: Connection) -> List[EquivariantForm]:
    """Components (per structure basis element) of ``Omega + mu`` as equivariant forms."""
    act = conn.bundle.G_action
    galg = act.algebra
    omega = curvature(conn)
    mus = [moment_map(conn, galg.basis_element(a)) for a in range(galg.dim)]
    out = []
    for b in range(conn.bundle.structure.rank):
        comps = {(): omega.components[b]}
        for a in range(galg.dim):
            comps[(a,)] = mus[a].components[b]
        out.append(EquivariantForm(act, comps))
    return out


def evaluate_equivariant(P: InvariantPolynomial, args: Sequence[Sequence[EquivariantForm]]) -> EquivariantForm:
    """``P(A_1, ..., A_q)`` for structure-algebra valued equivariant forms of even total degree."""
    if len(args) != P.degree:
        raise LieError(f"{P.name} takes {P.degree} arguments")
    if P.tau_power:
        raise LieError("Chern-normalized polynomials need the tau chart; scale the result instead")
    act = args[0][0].action
    out = EquivariantForm(act)
    cmap = P.coeff_map
    for idx in itertools.product(range(P.algebra.dim), repeat=P.degree):
        c = cmap.get(tuple(sorted(idx)))
        if not c:
            continue
        w = args[0][idx[0]]
        for a, k in zip(args[1:], idx[1:]):
            w = wedge_equivariant(w, a[k])
            if w.is_zero():
                break
        out = out + w * c
    return out


def equivariant_char_form(P: InvariantPolynomial, conn: Connection, check=True) -> EquivariantForm:
    """``P(Omega + mu)`` on the total space (a basic Cartan cocycle)."""
    if P.algebra.dim != conn.bundle.structure.rank:
        raise LieError("polynomial not on the structure algebra")
    if check and not conn.is_G_invariant():
        raise BundleError("connection is not G-invariant")
    act = conn.bundle.G_action
    if P.degree == 0:
        return EquivariantForm.const(act, P.coeff_map.get((), 0))
    A = equivariant_curvature(conn)
    return evaluate_equivariant(P, [A] * P.degree)


def char_form(P: InvariantPolynomial, conn: Connection) -> Form:
    """The ordinary Chern-Weil form ``P(Omega)``."""
    from .lie import evaluate_power

    if P.degree == 0:
        return Form.const(conn.bundle.total, P.coeff_map.get((), 0))
    return evaluate_power(P, curvature(conn))


def basic_defects(w: EquivariantForm, bundle: PrincipalBundleModel) -> List[str]:
    bad = []
    for m, f in w.components.items():
        if not is_invariant(bundle.K_action, f):
            bad.append(f"component {m} not K-invariant")
        for a, v in enumerate(bundle.vertical_fields()):
            if not contract(v, f).is_zero():
                bad.append(f"component {m} not horizontal for Y_{a}")
    return bad


def is_basic(w: EquivariantForm, bundle: PrincipalBundleModel) -> bool:
    return not basic_defects(w, bundle)


# ---------------------------------------------------------------- transgression


def interval_bundle(bundle: PrincipalBundleModel, t="t") -> PrincipalBundleModel:
    """``[0,1] x E -> [0,1] x M`` with actions trivial on the interval."""
    E = with_interval(bundle.total, t)
    M = with_interval(bundle.base, t)
    proj = Substitution(M, E, [Scalar.var(E, t)] + [lift(s, E) for s in bundle.projection.images], validate=False)
    return PrincipalBundleModel(
        bundle.name + "[t]",
        E,
        M,
        bundle.structure,
        extend_action(bundle.K_action, E),
        proj,
        extend_action(bundle.G_action, E),
        extend_action(bundle.G_base_action, M),
    )


def path_connection(c0: Connection, c1: Connection, t="t") -> Connection:
    """``theta_t = (1 - t) theta_0 + t theta_1`` on the interval bundle."""
    if c0.bundle != c1.bundle:
        raise BundleError("connections on different bundles")
    B = interval_bundle(c0.bundle, t)
    tv = Scalar.var(B.total, t)
    comps = [lift(a, B.total) * (1 - tv) + lift(b, B.total) * tv for a, b in zip(c0.components, c1.components)]
    return Connection(B, comps)


def transgression(P: InvariantPolynomial, c0: Connection, c1: Connection) -> EquivariantForm:
    """``int_0^1 P(Omega_t + mu_t)``; satisfies ``d_C`` of it = ``P(c1) - P(c0)``."""
    if c0.bundle != c1.bundle:
        raise BundleError("connections on different bundles")
    bundle = c0.bundle
    for c in (c0, c1):
        if not c.is_G_invariant():
            raise BundleError("transgression needs G-invariant connections")
    ct = path_connection(c0, c1)
    big = equivariant_char_form(P, ct, check=False)
    comps = {}
    for m, f in big.components.items():
        g = integrate_param(f, "t")
        comps[m] = lift(g, bundle.total)
    return EquivariantForm(bundle.G_action, comps)


def triangle_transgression(P: InvariantPolynomial, c0: Connection, c1: Connection, c2: Connection) -> EquivariantForm:
    """``int_{Delta^2} P(Omega_s + mu_s)`` along ``theta_s = s_0 theta_0 + s_1 theta_1 + s_2 theta_2``.

    The triangle is oriented by ``ds_1 ^ ds_2`` and integrated first.  Its
    Cartan differential measures how far the linear-path transgressions are
    from being additive.
    """
    from math import factorial

    bundle = c0.bundle
    for c in (c1, c2):
        if c.bundle != bundle:
            raise BundleError("connections on different bundles")
    B = interval_bundle(interval_bundle(bundle, "s1"), "s2")
    E = B.total
    s1, s2 = Scalar.var(E, "s1"), Scalar.var(E, "s2")
    s0 = 1 - s1 - s2
    comps = [lift(a, E) * s0 + lift(b, E) * s1 + lift(c, E) * s2 for a, b, c in zip(c0.components, c1.components, c2.components)]
    big = equivariant_char_form(P, Connection(B, comps), check=False)
    i1, i2 = E.index("s1"), E.index("s2")
    keep = [j for j in range(E.dim) if j not in (i1, i2)]
    remap = {j: k for k, j in enumerate(keep)}
    target = bundle.total
    out = {}
    for m, f in big.components.items():
        terms = {}
        for gens, sc in f.terms.items():
            if i1 not in gens or i2 not in gens:
                continue
            rest = tuple(g for g in gens if g not in (i1, i2))
            # move ds1 ^ ds2 to the front
            sign = -1 if (gens.index(i1) + gens.index(i2) - 1) & 1 else 1
            if gens.index(i1) > gens.index(i2):
                sign = -sign
            raw = {}
            for mono, c in sc.terms.items():
                a, b = mono[i1], mono[i2]
                key = tuple(mono[j] for j in keep)
                val = c * GaussQ(Fraction(factorial(a) * factorial(b), factorial(a + b + 2))) * sign
                raw[key] = raw[key] + val if key in raw else val
            new = tuple(remap[g] for g in rest)
            sc2 = Scalar(target, raw)
            terms[new] = terms[new] + sc2 if new in terms else sc2
        out[m] = Form(target, terms)
    return EquivariantForm(bundle.G_action, out)


def transgression_defect(P: InvariantPolynomial, c0: Connection, c1: Connection, c2: Connection) -> EquivariantForm:
    """``w(2,0) - w(2,1) - w(1,0)`` with ``w(b,a) = transgression(P, a, b)``."""
    return transgression(P, c0, c2) - transgression(P, c1, c2) - transgression(P, c0, c1)


# ---------------------------------------------------------------- naturality


def pullback_bundle(bundle: PrincipalBundleModel, base: ChartModel, images: Dict[str, object], name=None):
    """Pull a trivial bundle ``M x K`` back along ``f: base -> M`` (images of the M-coordinates).

    Returns the new bundle (with trivial G-action) and the substitution ``(f-bar)*``.
    """
    K = bundle.structure
    E2 = product(base, K.chart())
    M = bundle.base
    if bundle.total != product(M, K.chart()):
        raise BundleError("naturality is implemented for trivial bundles")
    imgs = []
    for v in M.variables:
        val = images.get(v, v)
        imgs.append(parse_expr(val, E2) if isinstance(val, str) else lift(val, E2))
    imgs += [Scalar.var(E2, v) for v in K.chart().variables]
    fbar = Substitution(bundle.total, E2, imgs)
    G = bundle.G.__class__(bundle.G.rank, bundle.G.prefix, bundle.G.name)
    new = make_trivial_bundle(name or bundle.name + "*", base, K, trivial_action(G, base))
    return new, fbar


def pull_connection(conn: Connection, new_bundle: PrincipalBundleModel, fbar: Substitution) -> Connection:
    return Connection(new_bundle, [pullback(fbar, f) for f in conn.components])


# ---------------------------------------------------------------- line bundles


@dataclass(frozen=True)
class LineBundleModel:
    """Trivial line bundle ``M x C`` with ``nabla = d + A`` and G acting on the fibre with ``weight``."""

    name: str
    base: ChartModel
    A: Form
    action: ActionModel
    weight: int = 0

    def __post_init__(self):
        if self.A.degrees() not in ([], [1]):
            raise BundleError("A must be a 1-form")
        if self.A.chart != self.base or self.action.space != self.base:
            raise BundleError("A and the action must live on the base chart")

    def principal(self) -> Tuple[PrincipalBundleModel, Connection]:
        """The frame bundle ``M x U(1)`` with ``theta = k^-1 dk + A``."""
        K = TorusGroupModel(1, "k", "u1")
        B = make_trivial_bundle(self.name + "-frame", self.base, K, self.action, self.weight)
        theta = trivial_mc(B) + lift(self.A, B.total)
        return B, Connection(B, [theta])

    def section(self, B: PrincipalBundleModel) -> Substitution:
        """``s*`` for the frame ``s(m) = (m, 1)``."""
        imgs = [Scalar.var(self.base, v) if v in self.base.variables else Scalar.const(self.base, 1) for v in B.total.variables]
        return Substitution(B.total, self.base, imgs)


def covariant_derivative(L: LineBundleModel, v, phi: Scalar) -> Scalar:
    """``nabla_V phi = d phi(V) + A(V) phi``."""
    return v.apply(phi) + contract(v, L.A).terms.get((), Scalar.zero(L.base)) * phi


def fibre_lie_derivative(L: LineBundleModel, x, phi: Scalar) -> Scalar:
    """``d/dt|0 exp(tX)^* phi`` where ``(g^* phi)(m) = g . phi(g^-1 m)`` and g acts on fibres by ``u^w``."""
    act = L.action
    alg = act.algebra
    x = alg.element(x)
    pc = act.product_chart
    r = act.group.rank
    inv_group = [Scalar.var(pc, v, -1) for v in act.group.chart().variables]
    space_vars = [Scalar.var(pc, v) for v in act.space.variables]
    moved = act.act_images(pc, inv_group, space_vars)
    pulled = phi.substitute(moved, pc)
    out = Scalar.zero(L.base)
    back = [Scalar.const(L.base, 1)] * r + [Scalar.var(L.base, v) for v in L.base.variables]
    for j in range(r):
        if not x[j]:
            continue
        # only the first circle carries the fibre weight
        chi = Scalar.var(pc, act.group.chart().variables[j], L.weight if j == 0 else 0)
        deriv = (chi * pulled).euler(j).substitute(back, L.base)
        out = out + deriv * (I * x[j])
    return out


def vb_moment_map(L: LineBundleModel, x, phi: Scalar) -> Scalar:
    """``mu^nabla(X) phi = nabla_{X#} phi + L^E_X phi``."""
    v = fundamental_vf(L.action, x)
    return covariant_derivative(L, v, phi) + fibre_lie_derivative(L, x, phi)


def vb_curvature(L: LineBundleModel) -> Form:
    """``R = dA + A ^ A = dA`` for a line bundle."""
    return exterior_d(L.A)


def compare_pb_vb(conn: Connection, L: LineBundleModel, sections: Sequence[Scalar] = None) -> Dict[str, object]:
    """Compare ``s*(d theta + theta ^ theta)`` with ``R`` and ``s* mu^theta`` with ``mu^nabla``."""
    B = conn.bundle
    s = L.section(B)
    report: Dict[str, object] = {"curvature": True, "moment": True, "mismatch": []}
    lhs = pullback(s, curvature(conn).components[0])
    rhs = vb_curvature(L)
    if lhs != rhs:
        report["curvature"] = False
        report["mismatch"].append(f"curvature: {lhs} != {rhs}")
    base = L.base
    if sections is None:
        xs = [Scalar.var(base, v) for v in base.variables]
        sections = [Scalar.const(base, 1)] + xs + [a * b for a in xs for b in xs][:3]
    alg = B.G_action.algebra
    for a in range(alg.dim):
        x = alg.basis_element(a)
        mu = pullback(s, moment_map(conn, x).components[0]).terms.get((), Scalar.zero(base))
        for phi in sections:
            got = vb_moment_map(L, x, phi)
            if got != mu * phi:
                report["moment"] = False
                report["mismatch"].append(f"moment X_{a}, phi={phi}: {got} != {mu * phi}")
    report["ok"] = report["curvature"] and report["moment"]
    return report


# ---------------------------------------------------------------- registry of examples


def make_trivial_bundle(name, base: ChartModel, K: TorusGroupModel, base_action: ActionModel, weight: int = 0):
    E = product(base, K.chart())
    kvars = K.chart().variables
    pcK = product(K.chart("kk"), E)
    K_images = {v: Scalar.var(pcK, v) * Scalar.var(pcK, kk) for v, kk in zip(kvars, K.coordinate_names("kk"))}
    K_action = ActionModel.build("right", TorusGroupModel(K.rank, "kk", K.name), E, K_images)
    pcG = product(base_action.group.chart(), E)
    extra = {}
    if weight:
        u = base_action.group.chart().variables[0]
        extra[kvars[0]] = Scalar.var(pcG, u, weight) * Scalar.var(pcG, kvars[0])
    G_action = extend_action(base_action, E, extra)
    proj = Substitution(base, E, [Scalar.var(E, v) for v in base.variables])
    return PrincipalBundleModel(name, E, base, K, K_action, proj, G_action, base_action)


def trivial_mc(B: PrincipalBundleModel) -> Form:
    (k,) = B.structure.chart().variables
    return Form.d_of(B.total, k) * Scalar.var(B.total, k, -1)


def make_hopf_bundle(name: str, action: str, base_action: str):
    from .registry import load_registry

    reg = load_registry()
    E, M = sphere3(), sphere2()
    G_action = reg.action(action) if action != "trivial" else trivial_action(TorusGroupModel(1, "u", "u1"), E)
    G_base = reg.action(base_action) if base_action != "trivial" else trivial_action(TorusGroupModel(1, "u", "u1"), M)
    fiber = reg.action("hopf-fiber")
    z = {v: Scalar.var(E, v) for v in E.variables}
    proj = Substitution(M, E, [z["z1"] * z["z2b"], z["z1b"] * z["z2"], z["z1"] * z["z1b"] - z["z2"] * z["z2b"]])
    return PrincipalBundleModel(name, E, M, fiber.group, fiber, proj, G_action, G_base)


# name -> action variant -> (connection expressions)
_BUNDLES = {
    "trivial-r2": {
        "trivial": ["k**-1*dk + x*dy", "k**-1*dk", "k**-1*dk + x**2*y*dx"],
        "rotation-plane": [
            "k**-1*dk + (x*dy - y*dx)/2",
            "k**-1*dk",
            "k**-1*dk + (x**2 + y**2)*(x*dy - y*dx)",
            "k**-1*dk + (x*dy - y*dx)/2 + x*dx + y*dy",
        ],
    },
    "hopf": {
        "hopf": ["z1b*dz1 + z2b*dz2", "z1b*dz1 + z2b*dz2 + I*(z1*z1b - z2*z2b)*(z1b*dz1 + z1*dz1b - z2b*dz2 - z2*dz2b)"],
        "trivial": ["z1b*dz1 + z2b*dz2"],
    },
    "weighted-hopf": {
        "weighted-hopf": ["z1b*dz1 + z2b*dz2", "z1b*dz1 + z2b*dz2 + I*(z1*z1b - z2*z2b)*(z1b*dz1 + z1*dz1b - z2b*dz2 - z2*dz2b)"],
    },
}

_DEFAULT_ACTION = {"trivial-r2": "trivial", "hopf": "hopf", "weighted-hopf": "weighted-hopf"}

_LINE_BUNDLES = {
    "line-r2-w0": ("rotation-plane", "x*dy", 0),
    "line-r2-w1": ("rotation-plane", "(x*dy - y*dx)/2", 1),
}


def bundle_names() -> List[str]:
    return sorted(_BUNDLES)


def line_bundle_names() -> List[str]:
    return sorted(_LINE_BUNDLES)


def bundle_actions(name: str) -> List[str]:
    if name not in _BUNDLES:
        raise BundleError(f"unknown bundle {name!r}")
    return list(_BUNDLES[name])


@lru_cache(maxsize=None)
def get_bundle(name: str, action: Optional[str] = None) -> PrincipalBundleModel:
    from .registry import load_registry

    if name not in _BUNDLES:
        raise BundleError(f"unknown bundle {name!r}")
    action = action or _DEFAULT_ACTION[name]
    if action not in _BUNDLES[name]:
        raise BundleError(f"bundle {name!r} has no action {action!r}")
    if name == "trivial-r2":
        base = euclidean("x", "y")
        act = load_registry().action(action)
        return make_trivial_bundle(f"{name}/{action}", base, TorusGroupModel(1, "k", "u1"), act)
    if name == "hopf":
        return make_hopf_bundle(f"hopf/{action}", action, "hopf-base" if action == "hopf" else "trivial")
    return make_hopf_bundle(f"weighted-hopf/{action}", action, "weighted-hopf-base")


@lru_cache(maxsize=None)
def get_connection(name: str, action: Optional[str] = None, index: int = 0) -> Connection:
    B = get_bundle(name, action)
    exprs = _BUNDLES[name][action or _DEFAULT_ACTION[name]]
    if not 0 <= index < len(exprs):
        raise BundleError(f"bundle {name!r} has {len(exprs)} registered connections")
    return Connection(B, [parse_expr(exprs[index], B.total, forms=True)], label=exprs[index])


def connection_count(name: str, action: Optional[str] = None) -> int:
    return len(_BUNDLES[name][action or _DEFAULT_ACTION[name]])


@lru_cache(maxsize=None)
def get_line_bundle(name: str) -> LineBundleModel:
    from .registry import load_registry

    if name not in _LINE_BUNDLES:
        raise BundleError(f"unknown line bundle {name!r}")
    act_name, A, w = _LINE_BUNDLES[name]
    act = load_registry().action(act_name)
    return LineBundleModel(name, act.space, parse_expr(A, act.space, forms=True), act, w)


def polynomial(name: str, rank: int = 1) -> InvariantPolynomial:
    from .lie import abelian_algebra

    alg = abelian_algebra("u1" if rank == 1 else "torus%d" % rank, rank)
    if name == "id":
        return abelian_power(alg, 1)
    if name.startswith("X^"):
        return abelian_power(alg, int(name[2:]))
    if name == "X2":
        return abelian_power(alg, 2)
    if name == "1":
        return abelian_power(alg, 0, name="1")
    raise LieError(f"unknown polynomial {name!r}")
