"""Lie algebras, torus groups, actions on charts and invariant polynomials.

Conventions
-----------
* The Lie algebra of U(1) is identified with iR inside C.  The basis element of
  each circle factor is ``i``; ``exp(t*i) = e^{it}`` is the unit coordinate
  ``u``.  Algebra-valued forms are stored in *value coordinates*: a
  u(1)-valued form is the complex-valued form itself.
* Elements of the complexified algebra are coordinate tuples with respect to
  the basis; ``dual`` names the coordinate functions (the symbols of
  S(g^v)).
* Actions are left actions ``G x M -> M`` stored as the pullback of the space
  coordinates to the product chart ``G x M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import (
    ChartModel,
    Form,
    GaussQ,
    I,
    ONE,
    Scalar,
    Substitution,
    VectorField,
    bracket_vf,
    euclidean,
    product,
    torus_chart,
    wedge,
)
from .core.chart import ChartError

Matrix = Tuple[Tuple[GaussQ, ...], ...]


class LieError(ValueError):
    pass


def _mat(rows) -> Matrix:
    return tuple(tuple(GaussQ.coerce(x) for x in r) for r in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), GaussQ(0)) for j in range(n)) for i in range(n)
    )


def mat_add(a: Matrix, b: Matrix, sb=1) -> Matrix:
    return tuple(tuple(x + y * sb for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_inv2(g: Matrix) -> Matrix:
    (a, b), (c, d) = g
    det = a * d - b * c
    if not det:
        raise LieError("singular matrix")
    inv = det.inverse()
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def mat_trace(a: Matrix) -> GaussQ:
    return sum((a[i][i] for i in range(len(a))), GaussQ(0))


@dataclass(frozen=True)
class LieAlgebraModel:
    name: str
    basis: Tuple[str, ...]
    dual: Tuple[str, ...]
    # ((i, j, k), c) means [e_i, e_j] has e_k-coefficient c; only i < j stored
    structure: Tuple[Tuple[Tuple[int, int, int], GaussQ], ...] = ()
    matrices: Optional[Tuple[Matrix, ...]] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_abelian(self) -> bool:
        return not self.structure

    @property
    def table(self) -> Dict[Tuple[int, int], Dict[int, GaussQ]]:
        out: Dict[Tuple[int, int], Dict[int, GaussQ]] = {}
        for (i, j, k), c in self.structure:
            out.setdefault((i, j), {})[k] = c
            out.setdefault((j, i), {})[k] = -c
        return out

    def constant(self, i: int, j: int, k: int) -> GaussQ:
        return self.table.get((i, j), {}).get(k, GaussQ(0))

    def element(self, coords) -> Tuple[GaussQ, ...]:
        coords = tuple(GaussQ.coerce(c) for c in coords)
        if len(coords) != self.dim:
            raise LieError(f"{self.name} has dimension {self.dim}")
        return coords

    def basis_element(self, i: int) -> Tuple[GaussQ, ...]:
        return tuple(ONE if j == i else GaussQ(0) for j in range(self.dim))

    def to_matrix(self, x) -> Matrix:
        if self.matrices is None:
            raise LieError(f"{self.name} has no matrix model")
        n = len(self.matrices[0])
        out = tuple(tuple(GaussQ(0) for _ in range(n)) for _ in range(n))
        for c, m in zip(x, self.matrices):
            if c:
                out = mat_add(out, tuple(tuple(v * c for v in r) for r in m))
        return out

    def from_matrix(self, m: Matrix) -> Tuple[GaussQ, ...]:
        """Coordinates of a matrix in the basis (basis matrices are elementary-like, solved by least entries)."""
        if self.matrices is None:
            raise LieError(f"{self.name} has no matrix model")
        # solve the linear system sum c_k M_k = m over Q(i) by Gaussian elimination
        n = len(m)
        rows = []
        for i in range(n):
            for j in range(n):
                rows.append([bm[i][j] for bm in self.matrices] + [m[i][j]])
        return tuple(_solve(rows, self.dim))


def _solve(rows, nvars):
    rows = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(nvars):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv_cols.append(c)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][-1]:
            raise LieError("matrix is not in the span of the basis")
    sol = [GaussQ(0)] * nvars
    for k, c in enumerate(piv_cols):
        sol[c] = rows[k][-1]
    return sol


def bracket(alg: LieAlgebraModel, x, y) -> Tuple[GaussQ, ...]:
    x, y = alg.element(x), alg.element(y)
    out = [GaussQ(0)] * alg.dim
    for (i, j), row in alg.table.items():
        if x[i] and y[j]:
            for k, c in row.items():
                out[k] = out[k] + x[i] * y[j] * c
    return tuple(out)


def jacobi_defects(alg: LieAlgebraModel):
    """Basis triples where the Jacobi identity fails (empty for a Lie algebra)."""
    bad = []
    for a, b, c in itertools.product(range(alg.dim), repeat=3):
        ea, eb, ec = (alg.basis_element(k) for k in (a, b, c))
        s = [GaussQ(0)] * alg.dim
        for x, y, z in ((ea, eb, ec), (eb, ec, ea), (ec, ea, eb)):
            t = bracket(alg, x, bracket(alg, y, z))
            s = [p + q for p, q in zip(s, t)]
        if any(s):
            bad.append((a, b, c))
    return bad


def antisymmetry_defects(alg: LieAlgebraModel):
    bad = []
    for a, b in itertools.product(range(alg.dim), repeat=2):
        ea, eb = alg.basis_element(a), alg.basis_element(b)
        if any(p + q for p, q in zip(bracket(alg, ea, eb), bracket(alg, eb, ea))):
            bad.append((a, b))
    return bad


def abelian_algebra(name: str, rank: int) -> LieAlgebraModel:
    if rank == 1:
        basis, dual = ("X",), ("xi",)
    else:
        basis = tuple(f"X{j}" for j in range(1, rank + 1))
        dual = tuple(f"xi{j}" for j in range(1, rank + 1))
    return LieAlgebraModel(name, basis, dual)


def _structure_from_rule(n, rule):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k, c in rule(i, j).items():
                if c:
                    out.append(((i, j, k), GaussQ.coerce(c)))
    return tuple(out)


def sl2_algebra() -> LieAlgebraModel:
    # [e,f] = h, [h,e] = 2e, [h,f] = -2f ; basis order e, f, h
    table = {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}
    mats = (_mat([[0, 1], [0, 0]]), _mat([[0, 0], [1, 0]]), _mat([[1, 0], [0, -1]]))
    return LieAlgebraModel(
        "sl2", ("e", "f", "h"), ("e*", "f*", "h*"), _structure_from_rule(3, lambda i, j: table.get((i, j), {})), mats
    )


def gl2_algebra() -> LieAlgebraModel:
    # E_ab with [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb ; basis E11, E12, E21, E22
    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
    pos = {ab: k for k, ab in enumerate(idx)}

    def rule(i, j):
        (a, b), (c, d) = idx[i], idx[j]
        out: Dict[int, int] = {}
        if b == c:
            out[pos[(a, d)]] = out.get(pos[(a, d)], 0) + 1
        if d == a:
            out[pos[(c, b)]] = out.get(pos[(c, b)], 0) - 1
        return out

    mats = tuple(
        _mat([[1 if (r, s) == ab else 0 for s in range(2)] for r in range(2)]) for ab in idx
    )
    return LieAlgebraModel(
        "gl2-formal", ("E11", "E12", "E21", "E22"), ("a11", "a12", "a21", "a22"), _structure_from_rule(4, rule), mats
    )


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class TorusGroupModel:
    """U(1)^k with unit coordinates; ``prefix`` names the coordinates."""

    rank: int
    prefix: str = "u"
    name: str = ""

    @property
    def algebra(self) -> LieAlgebraModel:
        return abelian_algebra(self.name or f"torus{self.rank}", self.rank)

    def coordinate_names(self, prefix: Optional[str] = None) -> Tuple[str, ...]:
        p = self.prefix if prefix is None else prefix
        if self.rank == 1:
            return (p,)
        return tuple(f"{p}_{j}" for j in range(1, self.rank + 1))

    def chart(self, prefix: Optional[str] = None) -> ChartModel:
        return torus_chart(*self.coordinate_names(prefix))

    def maurer_cartan(self, chart: ChartModel, prefix: Optional[str] = None) -> List[Form]:
        """Left-invariant forms ``u_j^-1 du_j`` (value coordinates) on ``chart``."""
        out = []
        for n in self.coordinate_names(prefix):
            out.append(Form.d_of(chart, n) * Scalar.var(chart, n, -1))
        return out


def Ad(alg: LieAlgebraModel, g, x) -> Tuple[GaussQ, ...]:
    """Adjoint action.  Tori: identity.  Matrix models: ``g X g^-1`` for a numeric matrix ``g``."""
    x = alg.element(x)
    if alg.is_abelian:
        return x
    if alg.matrices is None:
        raise LieError(f"Ad is not supported for {alg.name}")
    g = _mat(g)
    return alg.from_matrix(mat_mul(mat_mul(g, alg.to_matrix(x)), mat_inv2(g)))


# ---------------------------------------------------------------- actions


@dataclass(frozen=True)
class ActionModel:
    """Left action of a torus on a chart.

    ``images`` are the coordinates of ``g.m`` as Scalars on ``group_chart x space``.
    """

    name: str
    group: TorusGroupModel
    space: ChartModel
    images: Tuple[Scalar, ...]
    product_chart: ChartModel = field(compare=False)

    @classmethod
    def build(cls, name: str, group: TorusGroupModel, space: ChartModel, images: Mapping[str, object]):
        pc = product(group.chart(), space)
        imgs = []
        for v in space.variables:
            val = images.get(v, v)
            if isinstance(val, str):
                from .core.parse import parse_expr

                val = parse_expr(val, pc)
            imgs.append(val)
        act = cls(name, group, space, tuple(imgs), pc)
        act.substitution()  # validates relations
        return act

    @classmethod
    def trivial(cls, group: TorusGroupModel, space: ChartModel, name="trivial") -> "ActionModel":
        return cls.build(name, group, space, {})

    @property
    def algebra(self) -> LieAlgebraModel:
        return self.group.algebra

    def is_trivial(self) -> bool:
        pc = self.product_chart
        r = self.group.rank
        return all(img == Scalar.var(pc, v) for img, v in zip(self.images, self.space.variables)) and r >= 0

    def substitution(self) -> Substitution:
        """Pullback along the action map ``G x M -> M``."""
        return Substitution(self.space, self.product_chart, self.images)

    def act_images(self, target: ChartModel, group_values: Sequence[Scalar], space_values: Sequence[Scalar]):
        """Coordinates of ``g.m`` where g, m are given as Scalars on ``target``."""
        vals = list(group_values) + list(space_values)
        cache = {}
        return [img.substitute(vals, target, cache) for img in self.images]

    def act_substitution(self, target: ChartModel, group_values, space_values) -> Substitution:
        return Substitution(self.space, target, self.act_images(target, group_values, space_values), validate=False)


def fundamental_vf(action: ActionModel, x) -> VectorField:
    """``X#_m = d/dt|0 exp(tX).m`` on the space chart.

    For the basis element ``i`` of the j-th circle, ``d/dt f(e^{it}) = i u d/du f`` at u = 1.
    """
    x = action.algebra.element(x)
    space = action.space
    r = action.group.rank
    coeffs: Dict[int, Scalar] = {}
    back = [Scalar.const(space, 1)] * r + [Scalar.var(space, v) for v in space.variables]
    for vi, img in enumerate(action.images):
        total = Scalar.zero(space)
        for j in range(r):
            if not x[j]:
                continue
            deriv = img.euler(j)
            total = total + deriv.substitute(back, space) * (I * x[j])
        if total.terms:
            coeffs[vi] = total
    return VectorField(space, coeffs)


def one_parameter_images(action: ActionModel, j: int, chart: ChartModel, var: str):
    """Action by ``u_j = var`` (a unit coordinate on ``chart``), other circles at 1."""
    r = action.group.rank
    g = [Scalar.var(chart, var) if k == j else Scalar.const(chart, 1) for k in range(r)]
    m = [Scalar.var(chart, v) for v in action.space.variables]
    return action.act_images(chart, g, m)


def linear_vf(alg: LieAlgebraModel, x, chart: ChartModel, coords: Sequence[str]) -> VectorField:
    """Fundamental field of the linear action of a matrix model on ``coords``: ``v -> X v``."""
    m = alg.to_matrix(alg.element(x))
    vars_ = [Scalar.var(chart, c) for c in coords]
    coeffs = {}
    for i, c in enumerate(coords):
        s = Scalar.zero(chart)
        for k in range(len(coords)):
            if m[i][k]:
                s = s + vars_[k] * m[i][k]
        coeffs[chart.index(c)] = s
    return VectorField(chart, coeffs)


def vf_bracket_sign(alg: LieAlgebraModel) -> Optional[int]:
    """Empirical sign s with ``[X#, Y#] = s [X, Y]#`` for the linear action of a matrix model."""
    chart = euclidean("v1", "v2")
    signs = set()
    for a, b in itertools.product(range(alg.dim), repeat=2):
        ea, eb = alg.basis_element(a), alg.basis_element(b)
        lhs = bracket_vf(linear_vf(alg, ea, chart, ("v1", "v2")), linear_vf(alg, eb, chart, ("v1", "v2")))
        rhs = linear_vf(alg, bracket(alg, ea, eb), chart, ("v1", "v2"))
        if rhs.is_zero() and lhs.is_zero():
            continue
        if lhs == rhs:
            signs.add(1)
        elif lhs == -rhs:
            signs.add(-1)
        else:
            return None
    if len(signs) > 1:
        return None
    return signs.pop() if signs else 0


# ---------------------------------------------------------------- algebra-valued forms


class AlgebraForm:
    """Algebra-valued form: one Form per basis element (value coordinates)."""

    __slots__ = ("algebra", "components")

    def __init__(self, algebra: LieAlgebraModel, components: Sequence[Form]):
        if len(components) != algebra.dim:
            raise LieError("need one component per basis element")
        self.algebra = algebra
        self.components = tuple(components)

    @property
    def chart(self):
        return self.components[0].chart

    def __add__(self, other):
        return AlgebraForm(self.algebra, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return AlgebraForm(self.algebra, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return AlgebraForm(self.algebra, [-a for a in self.components])

    def __mul__(self, c):
        return AlgebraForm(self.algebra, [a * c for a in self.components])

    __rmul__ = __mul__

    def map(self, fn) -> "AlgebraForm":
        return AlgebraForm(self.algebra, [fn(a) for a in self.components])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def __eq__(self, other):
        return isinstance(other, AlgebraForm) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        if self.algebra.dim == 1:
            return str(self.components[0])
        return "; ".join(f"{b}: {c}" for b, c in zip(self.algebra.basis, self.components))


def bracket_forms(a: AlgebraForm, b: AlgebraForm) -> AlgebraForm:
    """``[a, b] = sum c^k_ij a^i ^ b^j e_k``."""
    alg = a.algebra
    chart = a.chart
    out = [Form.zero(chart) for _ in range(alg.dim)]
    for (i, j), row in alg.table.items():
        w = wedge(a.components[i], b.components[j])
        if w.is_zero():
            continue
        for k, c in row.items():
            out[k] = out[k] + w * c
    return AlgebraForm(alg, out)


# ---------------------------------------------------------------- invariant polynomials


@dataclass(frozen=True)
class InvariantPolynomial:
    """Symmetric multilinear form on an algebra.

    ``coefficients`` maps sorted index tuples to the common value of the
    symmetric tensor on all permutations of that tuple.  ``tau_power`` is the
    power of the formal constant tau (= 2 pi i) dividing the result.
    """

    name: str
    algebra: LieAlgebraModel
    degree: int
    coefficients: Tuple[Tuple[Tuple[int, ...], GaussQ], ...]
    tau_power: int = 0

    @property
    def coeff_map(self) -> Dict[Tuple[int, ...], GaussQ]:
        return dict(self.coefficients)

    def value(self, args) -> GaussQ:
        """Multilinear value on numeric algebra elements."""
        if len(args) != self.degree:
            raise LieError("arity mismatch")
        cmap = self.coeff_map
        total = GaussQ(0)
        for idx in itertools.product(range(self.algebra.dim), repeat=self.degree):
            c = cmap.get(tuple(sorted(idx)))
            if not c:
                continue
            term = c
            for a, k in zip(args, idx):
                term = term * a[k]
                if not term:
                    break
            total = total + term
        return total

    def chern_normalized(self) -> "InvariantPolynomial":
        return InvariantPolynomial(self.name + "/tau^%d" % self.degree, self.algebra, self.degree, self.coefficients, self.degree)

    def times(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        """Product in S(g^v): the symmetrisation of the tensor product."""
        if other.algebra != self.algebra:
            raise LieError("algebra mismatch")
        q, l = self.degree, other.degree
        n = q + l
        a, b = self.coeff_map, other.coeff_map
        out = {}
        for idx in itertools.combinations_with_replacement(range(self.algebra.dim), n):
            total = GaussQ(0)
            for perm in itertools.permutations(idx):
                ca = a.get(tuple(sorted(perm[:q])))
                cb = b.get(tuple(sorted(perm[q:])))
                if ca and cb:
                    total = total + ca * cb
            if total:
                out[idx] = total * GaussQ(Fraction(1, factorial(n)))
        return InvariantPolynomial(f"({self.name})({other.name})", self.algebra, n, tuple(sorted(out.items())), self.tau_power + other.tau_power)

    def scaled(self, c) -> "InvariantPolynomial":
        c = GaussQ.coerce(c)
        return InvariantPolynomial(self.name, self.algebra, self.degree, tuple((k, v * c) for k, v in self.coefficients if v * c), self.tau_power)

    def is_zero(self) -> bool:
        return not any(v for _, v in self.coefficients)


def abelian_power(alg: LieAlgebraModel, q: int, weights=None, name=None) -> InvariantPolynomial:
    """``(sum_j w_j lambda_j)^q`` in value coordinates."""
    weights = [ONE] * alg.dim if weights is None else [GaussQ.coerce(w) for w in weights]
    coeffs = {}
    for idx in itertools.combinations_with_replacement(range(alg.dim), q):
        c = ONE
        for k in idx:
            c = c * weights[k]
        if c:
            coeffs[idx] = c
    if name is None:
        name = "id" if q == 1 else f"X^{q}"
    return InvariantPolynomial(name, alg, q, tuple(sorted(coeffs.items())))


def zero_polynomial(alg: LieAlgebraModel, q: int) -> InvariantPolynomial:
    return InvariantPolynomial("0", alg, q, ())


def trace_polynomial(alg: LieAlgebraModel, q: int, name=None) -> InvariantPolynomial:
    """Polarisation of ``tr(A^q)`` for a matrix model."""
    if alg.matrices is None:
        raise LieError("trace polynomials need a matrix model")
    coeffs = {}
    for idx in itertools.combinations_with_replacement(range(alg.dim), q):
        total = GaussQ(0)
        perms = list(itertools.permutations(idx))
        for perm in perms:
            m = alg.matrices[perm[0]]
            for k in perm[1:]:
                m = mat_mul(m, alg.matrices[k])
            total = total + mat_trace(m)
        total = total * GaussQ(Fraction(1, len(perms)))
        if total:
            coeffs[idx] = total
    return InvariantPolynomial(name or f"tr^{q}", alg, q, tuple(sorted(coeffs.items())))


def invariance_defects(P: InvariantPolynomial):
    """Basis tuples (X, Y_1..Y_q) where sum_i P(Y_1,..,[X,Y_i],..,Y_q) != 0."""
    alg = P.algebra
    bad = []
    for x in range(alg.dim):
        ex = alg.basis_element(x)
        for ys in itertools.product(range(alg.dim), repeat=P.degree):
            args = [alg.basis_element(y) for y in ys]
            total = GaussQ(0)
            for i in range(P.degree):
                mod = list(args)
                mod[i] = bracket(alg, ex, args[i])
                total = total + P.value(mod)
            if total:
                bad.append((x,) + ys)
    return bad


def symmetry_defects(P: InvariantPolynomial):
    alg = P.algebra
    bad = []
    for ys in itertools.product(range(alg.dim), repeat=P.degree):
        args = [alg.basis_element(y) for y in ys]
        v = P.value(args)
        for perm in itertools.permutations(range(P.degree)):
            if P.value([args[k] for k in perm]) != v:
                bad.append(ys)
                break
    return bad


def evaluate_inv_poly(P: InvariantPolynomial, args: Sequence[AlgebraForm]) -> Form:
    """``P(A_1, ..., A_q)`` with wedge products of the components."""
    if len(args) != P.degree:
        raise LieError(f"{P.name} takes {P.degree} arguments, got {len(args)}")
    if not args:
        raise LieError("degree-0 polynomials need a chart; use evaluate_power")
    chart = args[0].chart
    for a in args:
        if a.chart != chart:
            raise ChartError("arguments on different charts")
    cmap = P.coeff_map
    out = Form.zero(chart)
    for idx in itertools.product(range(P.algebra.dim), repeat=P.degree):
        c = cmap.get(tuple(sorted(idx)))
        if not c:
            continue
        w = args[0].components[idx[0]]
        for a, k in zip(args[1:], idx[1:]):
            if w.is_zero():
                break
            w = wedge(w, a.components[k])
        if not w.is_zero():
            out = out + w * c
    if P.tau_power:
        tau = chart.index("tau")
        out = out * Scalar(chart, {tuple(-P.tau_power if j == tau else 0 for j in range(chart.dim)): ONE})
    return out


def evaluate_power(P: InvariantPolynomial, a: AlgebraForm) -> Form:
    """``P(a, ..., a)``."""
    if P.degree == 0:
        c = P.coeff_map.get((), GaussQ(0))
        return Form.const(a.chart, c)
    return evaluate_inv_poly(P, [a] * P.degree)


# ---------------------------------------------------------------- registry


@lru_cache(maxsize=None)
def get_algebra(name: str) -> LieAlgebraModel:
    from .registry import load_registry

    return load_registry().algebra(name)


@lru_cache(maxsize=None)
def get_action(name: str) -> ActionModel:
    from .registry import load_registry

    return load_registry().action(name)
