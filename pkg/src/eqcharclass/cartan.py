"""The Cartan complex (S(g^v) (x) Omega(M))^G for torus actions.

An :class:`EquivariantForm` is a polynomial map ``X -> omega(X)``: a finite map
from symmetric monomials in the dual coordinates (sorted index tuples, with
repetition) to Forms on the action's space chart.
"""
from __future__ import annotations

import itertools
from typing import Dict, Mapping, Sequence, Tuple

from .core import (
    Form,
    GaussQ,
    contract,
    drop_generators,
    exterior_d,
    form_from_json,
    form_to_json,
    lie_derivative,
    lift,
    pullback,
    wedge,
)
from .lie import ActionModel, Ad, LieAlgebraModel, LieError, fundamental_vf

Mono = Tuple[int, ...]


class EquivariantForm:
    __slots__ = ("action", "components", "_hash")

    def __init__(self, action: ActionModel, components: Mapping[Mono, Form] = None):
        self.action = action
        self._hash = None
        out: Dict[Mono, Form] = {}
        for m, f in (components or {}).items():
            key = tuple(sorted(m))
            if key and key[-1] >= action.algebra.dim:
                raise LieError(f"monomial {m} outside the dual basis")
            if f.chart != action.space:
                raise LieError("component not on the action's space chart")
            out[key] = out[key] + f if key in out else f
        self.components = {k: v for k, v in out.items() if not v.is_zero()}

    @property
    def chart(self):
        return self.action.space

    @property
    def algebra(self) -> LieAlgebraModel:
        return self.action.algebra

    @classmethod
    def from_form(cls, action: ActionModel, f: Form) -> "EquivariantForm":
        return cls(action, {(): f})

    @classmethod
    def const(cls, action: ActionModel, c=1) -> "EquivariantForm":
        return cls(action, {(): Form.const(action.space, c)})

    @classmethod
    def dual_symbol(cls, action: ActionModel, a: int) -> "EquivariantForm":
        return cls(action, {(a,): Form.const(action.space, 1)})

    def _check(self, other: "EquivariantForm"):
        if other.action != self.action:
            raise LieError("equivariant forms for different actions")

    def __add__(self, other: "EquivariantForm"):
        self._check(other)
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out[k] + v if k in out else v
        return EquivariantForm(self.action, out)

    def __neg__(self):
        return EquivariantForm(self.action, {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, EquivariantForm):
            return wedge_equivariant(self, c)
        return EquivariantForm(self.action, {k: v * c for k, v in self.components.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge_equivariant(self, other)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, EquivariantForm):
            return NotImplemented
        return self.action == other.action and self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.components.items()))
        return self._hash

    def total_degrees(self):
        return sorted({2 * len(m) + d for m, f in self.components.items() for d in f.degrees()})

    def total_degree(self) -> int:
        ds = self.total_degrees()
        if len(ds) > 1:
            raise ValueError("equivariant form is not homogeneous")
        return ds[0] if ds else 0

    def evaluate(self, x) -> Form:
        """``omega(X)`` for a numeric algebra element."""
        x = self.algebra.element(x)
        out = Form.zero(self.chart)
        for m, f in self.components.items():
            c = GaussQ(1)
            for a in m:
                c = c * x[a]
            if c:
                out = out + f * c
        return out

    def monomial_name(self, m: Mono) -> str:
        names = self.algebra.dual
        return "*".join(names[a] for a in m) if m else "1"

    def to_str(self, latex=False) -> str:
        if not self.components:
            return "0"
        parts = []
        for m in sorted(self.components, key=lambda k: (len(k), k)):
            f = self.components[m].to_str(latex)
            if not m:
                parts.append(f)
                continue
            sym = " ".join(_latex_dual(self.algebra.dual[a]) for a in m) if latex else self.monomial_name(m)
            parts.append(f"({f}) {sym}" if latex else f"({f})*{sym}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    __repr__ = __str__

    def to_json(self):
        return {self.monomial_name(m): form_to_json(f) for m, f in sorted(self.components.items())}

    @classmethod
    def from_json(cls, action: ActionModel, data) -> "EquivariantForm":
        lookup = {n: i for i, n in enumerate(action.algebra.dual)}
        comps = {}
        for key, f in data.items():
            m = () if key == "1" else tuple(lookup[s] for s in key.split("*"))
            comps[m] = form_from_json(f, action.space)
        return cls(action, comps)


def _latex_dual(name: str) -> str:
    if name.startswith("xi"):
        return r"\xi" + (f"_{{{name[2:]}}}" if name[2:] else "")
    return name


def _fundamental_fields(action: ActionModel):
    alg = action.algebra
    return [fundamental_vf(action, alg.basis_element(a)) for a in range(alg.dim)]


def cartan_d(w: EquivariantForm) -> EquivariantForm:
    """``(d_C w)(X) = d(w(X)) + i(X#) w(X)``; with ``X# = sum xi_a X_a#``."""
    fields = _fundamental_fields(w.action)
    out: Dict[Mono, Form] = {}
    for m, f in w.components.items():
        df = exterior_d(f)
        if not df.is_zero():
            out[m] = out[m] + df if m in out else df
        for a, v in enumerate(fields):
            if v.is_zero():
                continue
            c = contract(v, f)
            if c.is_zero():
                continue
            key = tuple(sorted(m + (a,)))
            out[key] = out[key] + c if key in out else c
    return EquivariantForm(w.action, out)


def cartan_d_defect(w: EquivariantForm, a: int) -> Form:
    """``(d_C d_C w)(X_a)``."""
    return cartan_d(cartan_d(w)).evaluate(w.algebra.basis_element(a))


def expected_defect(w: EquivariantForm, a: int) -> Form:
    """``L(X_a#) w(X_a)``, the value the defect must take."""
    x = w.algebra.basis_element(a)
    return lie_derivative(fundamental_vf(w.action, x), w.evaluate(x))


def wedge_equivariant(w1: EquivariantForm, w2: EquivariantForm) -> EquivariantForm:
    w1._check(w2)
    out: Dict[Mono, Form] = {}
    for (m1, f1), (m2, f2) in itertools.product(w1.components.items(), w2.components.items()):
        f = wedge(f1, f2)
        if f.is_zero():
            continue
        key = tuple(sorted(m1 + m2))
        out[key] = out[key] + f if key in out else f
    return EquivariantForm(w1.action, out)


def frozen_pullback(action: ActionModel, f: Form) -> Form:
    """``g* f`` for a frozen group element ``g`` (du-terms dropped) on the chart ``G x M``."""
    r = action.group.rank
    return drop_generators(pullback(action.substitution(), f), range(r))


def is_invariant(action: ActionModel, f: Form) -> bool:
    return frozen_pullback(action, f) == lift(f, action.product_chart)


def check_equivariance(w: EquivariantForm) -> bool:
    """For tori the coadjoint action is trivial, so equivariance is invariance of the components."""
    if not w.algebra.is_abelian:
        raise LieError("equivariance check implemented for torus actions")
    return all(is_invariant(w.action, f) for f in w.components.values())


def coadjoint_monomial(alg: LieAlgebraModel, g, m: Mono) -> Dict[Mono, GaussQ]:
    """The monomial ``prod xi_a`` composed with ``Ad(g^-1)``, for numeric ``g`` on a matrix model.

    For a torus this is the monomial itself.
    """
    if alg.is_abelian:
        return {tuple(sorted(m)): GaussQ(1)}
    from .lie import mat_inv2, _mat

    ginv = mat_inv2(_mat(g))
    # xi_a(Ad(g^-1) X) = sum_b A[a][b] xi_b
    rows = [Ad(alg, ginv, alg.basis_element(b)) for b in range(alg.dim)]
    lin = [[rows[b][a] for b in range(alg.dim)] for a in range(alg.dim)]
    out: Dict[Mono, GaussQ] = {(): GaussQ(1)}
    for a in m:
        nxt: Dict[Mono, GaussQ] = {}
        for key, c in out.items():
            for b, coef in enumerate(lin[a]):
                if coef:
                    k = tuple(sorted(key + (b,)))
                    nxt[k] = nxt.get(k, GaussQ(0)) + c * coef
        out = {k: v for k, v in nxt.items() if v}
    return out


def homogeneous_part(w: EquivariantForm, n: int) -> EquivariantForm:
    return EquivariantForm(
        w.action,
        {m: f.homogeneous_part(n - 2 * len(m)) for m, f in w.components.items() if n - 2 * len(m) >= 0},
    )


def invariant_part(action: ActionModel, f: Form) -> Form:
    """Average of ``g* f`` over the torus: the terms of ``u``-degree 0 after the frozen pullback."""
    r = action.group.rank
    pulled = frozen_pullback(action, f)
    pc = action.product_chart

    def keep(s):
        from .core import Scalar

        kept = {m[r:]: c for m, c in s.terms.items() if not any(m[:r])}
        return Scalar(action.space, kept)

    out = {}
    for gens, s in pulled.terms.items():
        if any(g < r for g in gens):
            continue
        sc = keep(s)
        if sc.terms:
            out[tuple(g - r for g in gens)] = sc
    return Form(action.space, out)
