"""Getzler's bar-type resolution of the Cartan complex and the map J.

A level-``k`` cochain is a polynomial in the dual coordinates xi with
coefficients Forms on the ``G^k x M`` chart that carry no group generators
(smooth maps ``G^k -> Omega(M)``).  Only torus groups occur, so every Ad
twist is the identity.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from ..cartan import EquivariantForm
from ..core import Form, Scalar, Substitution, VectorField, contract, drop_generators, exterior_d, lie_derivative, lift, pullback
from ..core.coeffs import I
from ..lie import fundamental_vf
from .derham import SimplicialForm
from .spaces import ActionSpace, SimplicialError

Mono = Tuple[int, ...]


def _accumulate(out: Dict[Mono, Form], m: Mono, f: Form) -> None:
    if f.is_zero():
        return
    m = tuple(sorted(m))
    out[m] = out[m] + f if m in out else f


class GetzlerCochain:
    """Element of ``C^k(G, S(g^v) (x) Omega(M))``."""

    __slots__ = ("space", "level", "components")

    def __init__(self, space: ActionSpace, level: int, components: Mapping[Mono, Form] = None):
        chart = space.chart(level)
        out: Dict[Mono, Form] = {}
        gens = set(space.group_indices(level))
        for m, f in (components or {}).items():
            if f.chart != chart:
                raise SimplicialError(f"cochain component not on level {level}")
            if any(gens.intersection(g) for g in f.terms):
                raise SimplicialError("cochains have form degree 0 along the group")
            _accumulate(out, m, f)
        self.space = space
        self.level = level
        self.components = out

    @classmethod
    def from_form(cls, space: ActionSpace, level: int, f: Form) -> "GetzlerCochain":
        return cls(space, level, {(): f})

    @classmethod
    def zero(cls, space: ActionSpace, level: int) -> "GetzlerCochain":
        return cls(space, level, {})

    @property
    def dim(self) -> int:
        return self.space.group.rank

    def _check(self, other):
        if other.space != self.space or other.level != self.level:
            raise SimplicialError("cochains at different levels")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for m, f in other.components.items():
            _accumulate(out, m, f)
        return GetzlerCochain(self.space, self.level, out)

    def __neg__(self):
        return GetzlerCochain(self.space, self.level, {m: -f for m, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return GetzlerCochain(self.space, self.level, {m: f * c for m, f in self.components.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, GetzlerCochain):
            return NotImplemented
        return self.level == other.level and self.space == other.space and self.components == other.components

    def __hash__(self):
        return hash((self.level, frozenset(self.components.items())))

    def degrees(self):
        """Set of ``(p, q, r)``: simplicial level, polynomial degree, form degree."""
        return sorted({(self.level, len(m), r) for m, f in self.components.items() for r in f.degrees()})

    def __repr__(self):
        if not self.components:
            return f"GetzlerCochain[{self.level}](0)"
        names = self.space.action.algebra.dual
        parts = []
        for m in sorted(self.components, key=lambda k: (len(k), k)):
            sym = "*".join(names[a] for a in m) or "1"
            parts.append(f"({self.components[m]})*{sym}")
        return f"GetzlerCochain[{self.level}](" + " + ".join(parts) + ")"


# a cochain sum over several levels
Chain = Dict[int, GetzlerCochain]


def add_chain(a: Chain, b: Chain) -> Chain:
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def as_chain(items) -> Chain:
    out: Chain = {}
    for c in items:
        out = add_chain(out, {c.level: c})
    return out


def _strip(X: ActionSpace, level: int, f: Form) -> Form:
    return drop_generators(f, X.group_indices(level))


def _map_components(f: GetzlerCochain, level: int, fn) -> GetzlerCochain:
    out: Dict[Mono, Form] = {}
    for m, w in f.components.items():
        _accumulate(out, m, fn(w))
    return GetzlerCochain(f.space, level, out)


def dbar(f: GetzlerCochain) -> GetzlerCochain:
    """``sum_i (-1)^i d_i^*`` restricted to the M-directions."""
    X, k = f.space, f.level + 1

    def fn(w):
        out = Form.zero(X.chart(k))
        for i in range(k + 1):
            term = _strip(X, k, pullback(X.face(k, i), w))
            out = out - term if i & 1 else out + term
        return out

    return _map_components(f, k, fn)


def group_average(f: GetzlerCochain) -> GetzlerCochain:
    """Integrate out the first group slot with the probability Haar measure.

    On Laurent coefficients this keeps the terms of exponent 0 in the first copy.
    """
    X, p = f.space, f.level
    if p < 1:
        raise SimplicialError("group_average needs level >= 1")
    first = X.group_indices(p, 1)
    chart = X.chart(p)

    def keep(s: Scalar) -> Scalar:
        return Scalar(chart, {m: c for m, c in s.terms.items() if not any(m[i] for i in first)}, reduced=True)

    sigma = X.degeneracy(p - 1, 0)
    return _map_components(f, p - 1, lambda w: pullback(sigma, w.map_coefficients(keep)))


def iota_bar(f: GetzlerCochain) -> GetzlerCochain:
    """``sum_i (-1)^i d/dt f(g_1..g_i, exp(tX), g_{i+1}..)`` at ``t = 0``."""
    X, p = f.space, f.level
    if p == 0:
        return GetzlerCochain.zero(X, 0)
    r = X.group.rank
    out: Dict[Mono, Form] = {}
    for i in range(p):
        sigma = X.degeneracy(p - 1, i)
        for m, w in f.components.items():
            for a, idx in enumerate(X.group_indices(p, i + 1)):
                dw = w.map_coefficients(lambda s, idx=idx: s.euler(idx))
                if dw.is_zero():
                    continue
                term = pullback(sigma, dw) * I
                _accumulate(out, m + (a,), -term if i & 1 else term)
    return GetzlerCochain(X, p - 1, out)


@lru_cache(maxsize=None)
def _lifted_fields(X: ActionSpace, level: int) -> Tuple[VectorField, ...]:
    chart = X.chart(level)
    act = X.action
    out = []
    for a in range(act.algebra.dim):
        v = fundamental_vf(act, act.algebra.basis_element(a))
        out.append(VectorField.from_names(chart, {act.space.variables[i]: lift(s, chart) for i, s in v.coefficients.items()}))
    return tuple(out)


def cartan_d_M(f: GetzlerCochain) -> GetzlerCochain:
    """Exterior derivative along M (pointwise in the group variables)."""
    X, p = f.space, f.level
    return _map_components(f, p, lambda w: _strip(X, p, exterior_d(w)))


def cartan_iota(f: GetzlerCochain) -> GetzlerCochain:
    """``iota(X#)``: contraction with the fundamental fields, times the dual symbol."""
    out: Dict[Mono, Form] = {}
    for a, v in enumerate(_lifted_fields(f.space, f.level)):
        for m, w in f.components.items():
            _accumulate(out, m + (a,), contract(v, w))
    return GetzlerCochain(f.space, f.level, out)


def lie_action(f: GetzlerCochain) -> GetzlerCochain:
    """``L``: the Lie derivative along the fundamental fields on the M factor."""
    out: Dict[Mono, Form] = {}
    for a, v in enumerate(_lifted_fields(f.space, f.level)):
        for m, w in f.components.items():
            _accumulate(out, m + (a,), lie_derivative(v, w))
    return GetzlerCochain(f.space, f.level, out)


def getzler_total_d(f) -> Chain:
    """``d_G = dbar + iota_bar + (-1)^p (d + iota)`` on a cochain or a chain."""
    items = f.values() if isinstance(f, dict) else [f]
    out: Chain = {}
    for c in items:
        cart = cartan_d_M(c) + cartan_iota(c)
        out = add_chain(out, as_chain([dbar(c), iota_bar(c), -cart if c.level & 1 else cart]))
    return out


def getzler_defects(f: GetzlerCochain) -> Dict[str, object]:
    """The identities of the Getzler complex on one cochain; values are the nonzero defects."""
    out = {}
    bad = dbar(dbar(f))
    if not bad.is_zero():
        out["dbar^2"] = bad
    if f.level >= 2:
        bad = iota_bar(iota_bar(f))
        if not bad.is_zero():
            out["iota_bar^2"] = bad
    lhs = dbar(iota_bar(f)) if f.level >= 1 else GetzlerCochain.zero(f.space, f.level)
    lhs = lhs + iota_bar(dbar(f))
    bad = lhs + lie_action(f)
    if not bad.is_zero():
        out["dbar iota_bar + iota_bar dbar + L"] = bad
    dd = getzler_total_d(getzler_total_d(f))
    if dd:
        out["d_G^2"] = dd
    return out


# ---------------------------------------------------------------- the map J


def _shuffle_sign(S: Sequence[int]) -> int:
    return -1 if sum(s - m for m, s in enumerate(S, start=1)) & 1 else 1


@lru_cache(maxsize=None)
def _copy_fields(X: ActionSpace, p: int, j: int) -> Tuple[VectorField, ...]:
    """Left-invariant fields ``i u d/du`` on copy ``j`` (equal to ``X_a`` at the identity)."""
    chart = X.chart(p)
    out = []
    for idx in X.group_indices(p, j):
        name = chart.variables[idx]
        out.append(VectorField.from_names(chart, {name: Scalar.var(chart, name) * I}))
    return tuple(out)


@lru_cache(maxsize=None)
def inclusion(X: ActionSpace, p: int, S: Tuple[int, ...]) -> Substitution:
    """Pullback along ``i_pi: G^k x M -> G^p x M`` putting ``g_m`` into slot ``S[m-1]``, ``e`` elsewhere."""
    k = len(S)
    src, tgt = X.chart(p), X.chart(k)
    one = [Scalar.const(tgt, 1)] * X.group.rank
    images: List[Scalar] = []
    for j in range(1, p + 1):
        images += X.copy_vars(tgt, S.index(j) + 1) if j in S else one
    images += X.space_vars(tgt)
    return Substitution(src, tgt, images, validate=False)


def contract_copies(X: ActionSpace, p: int, copies: Sequence[int], w: Form) -> Dict[Mono, Form]:
    """``iota_{c_1}(X) ... iota_{c_m}(X) w`` as a polynomial in xi (the last copy acts first)."""
    cur: Dict[Mono, Form] = {(): w}
    for j in reversed(copies):
        nxt: Dict[Mono, Form] = {}
        for m, f in cur.items():
            for a, v in enumerate(_copy_fields(X, p, j)):
                _accumulate(nxt, m + (a,), contract(v, f))
        cur = nxt
    return cur


def J_map(x: SimplicialForm) -> List[GetzlerCochain]:
    """Getzler's map on a form of ``G^p x M``; entry ``k`` is the level-``k`` cochain."""
    X, p = x.space, x.level
    if not isinstance(X, ActionSpace):
        raise SimplicialError("J is defined on G^. x M")
    out = []
    for k in range(p + 1):
        comps: Dict[Mono, Form] = {}
        for S in itertools.combinations(range(1, p + 1), k):
            C = [j for j in range(1, p + 1) if j not in S]
            sign = _shuffle_sign(S)
            sub = inclusion(X, p, S)
            for m, f in contract_copies(X, p, C, x.form).items():
                g = _strip(X, k, pullback(sub, f))
                _accumulate(comps, m, g * sign if sign < 0 else g)
        out.append(GetzlerCochain(X, k, comps))
    return out


def pr0(cochains) -> EquivariantForm:
    """Projection to simplicial level 0, as an element of the Cartan complex."""
    if isinstance(cochains, GetzlerCochain):
        cochains = [cochains]
    elif isinstance(cochains, dict):
        cochains = list(cochains.values())
    X = None
    comps: Dict[Mono, Form] = {}
    for c in cochains:
        X = c.space
        if c.level == 0:
            for m, f in c.components.items():
                _accumulate(comps, m, f)
    if X is None:
        raise SimplicialError("pr0 of an empty list")
    return EquivariantForm(X.action, comps)


def chain_map_check(x: SimplicialForm) -> Dict[str, object]:
    """The three compatibilities of J with the differentials on one element.

    With faces ending in the action ``d_p(g, x) = (g_1..g_{p-1}, g_p x)`` and
    ``X# = d/dt exp(tX).x`` the identities read
    ``J del = (dbar - (-1)^k iota) J``, ``J (-1)^p d_M = (-1)^k d J`` and
    ``J (-(-1)^p d_G) = iota_bar J``.
    """
    from .derham import simplicial_del

    X, p = x.space, x.level
    report: Dict[str, object] = {"level": p, "failures": []}
    Jx = J_map(x)

    # J del = (dbar - (-1)^k iota) J, k the level of the cochain acted on
    lhs = as_chain(J_map(simplicial_del(x)))
    rhs: Chain = {}
    for c in Jx:
        io = cartan_iota(c)
        rhs = add_chain(rhs, as_chain([dbar(c), io if c.level & 1 else -io]))
    if lhs != rhs:
        report["failures"].append(("J del", p))

    # split d = d_G + d_M on G^p x M
    gens = X.group_indices(p)
    dx = exterior_d(x.form)
    d_G = Form(dx.chart, _d_part(x.form, gens, along_group=True))
    d_M = dx - d_G
    sgn = -1 if p & 1 else 1
    lhs = as_chain(J_map(SimplicialForm(X, p, d_M * sgn)))
    rhs = as_chain([cartan_d_M(c) * (-1 if c.level & 1 else 1) for c in Jx])
    if lhs != rhs:
        report["failures"].append(("J d_M", p))
    lhs = as_chain(J_map(SimplicialForm(X, p, d_G * -sgn)))
    rhs = as_chain([iota_bar(c) for c in Jx])
    if lhs != rhs:
        report["failures"].append(("J d_G", p))
    report["ok"] = not report["failures"]
    return report


def _d_part(w: Form, group_gens, along_group: bool):
    """The part of ``dw`` obtained by differentiating only group (or only non-group) variables."""
    from ..core.forms import _acc, merge_sign

    group_gens = set(group_gens)
    chart = w.chart
    out: Dict = {}
    for gens, s in w.terms.items():
        for i in range(chart.dim):
            if (i in group_gens) != along_group or i in gens or not s.depends_on(i):
                continue
            sign = merge_sign((i,), gens)
            new = tuple(sorted((i,) + gens))
            _acc(out, new, s.diff(i) * sign)
    return Form(chart, out).terms
