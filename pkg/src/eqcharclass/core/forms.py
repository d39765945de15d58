"""Differential forms with Scalar coefficients and the exterior calculus on charts.

Generators are the differentials ``d<var>`` of the chart variables, in chart
order.  A form is stored as ``{sorted generator-index tuple: Scalar}``.

On charts with constraints every form is kept in the normal form
``w - kappa^-1 dF ^ i(N) w`` (coefficients reduced by the rule).  Two ambient
forms restrict to the same form on the hypersurface iff their normal forms are
equal, so all equality tests below are exact equalities of restrictions.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .chart import REAL, ChartError, ChartModel, Constraint, euclidean, product, _chart
from .coeffs import GaussQ
from .scalar import Scalar, _join_terms

Gens = Tuple[int, ...]


def sort_sign(seq: Sequence[int]):
    """Sort a duplicate-free sequence; return (sorted tuple, permutation sign) or (None, 0)."""
    s = list(seq)
    if len(set(s)) != len(s):
        return None, 0
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    return tuple(s), sign


def merge_sign(a: Gens, b: Gens) -> int:
    """Sign of sorting the concatenation ``a + b`` (sets assumed disjoint)."""
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


def _acc(out: Dict[Gens, Scalar], key: Gens, value: Scalar) -> None:
    s = out.get(key)
    s = value if s is None else s + value
    if s.terms:
        out[key] = s
    else:
        out.pop(key, None)


class Form:
    """Immutable differential form on a chart."""

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: ChartModel, terms: Mapping[Gens, Scalar] = None, *, normalized=False):
        self.chart = chart
        self._hash = None
        terms = {k: v for k, v in (terms or {}).items() if v.terms}
        if not normalized and chart.constraints and terms:
            terms = _project(chart, terms)
        self.terms = terms

    # constructors
    @classmethod
    def zero(cls, chart: ChartModel) -> "Form":
        return cls(chart, {}, normalized=True)

    @classmethod
    def scalar(cls, s) -> "Form":
        return cls(s.chart, {(): s} if s.terms else {}, normalized=True)

    @classmethod
    def const(cls, chart: ChartModel, value=1) -> "Form":
        return cls.scalar(Scalar.const(chart, value))

    @classmethod
    def d_of(cls, chart: ChartModel, name: str) -> "Form":
        """The generator ``d<name>``."""
        return cls(chart, {(chart.index(name),): Scalar.const(chart, 1)})

    @classmethod
    def from_scalars(cls, chart: ChartModel, pairs: Iterable[Tuple[Sequence[str], object]]) -> "Form":
        """Build from ``[(generator names, Scalar or number), ...]`` in any generator order."""
        out: Dict[Gens, Scalar] = {}
        for names, coef in pairs:
            idx = [chart.index(n[1:] if n.startswith("d") and n[1:] in chart.variables else n) for n in names]
            gens, sign = sort_sign(idx)
            if gens is None:
                continue
            s = coef if isinstance(coef, Scalar) else Scalar.const(chart, coef)
            _acc(out, gens, s * sign)
        return cls(chart, out)

    def _check(self, other: "Form") -> None:
        if other.chart is not self.chart and other.chart != self.chart:
            raise ChartError(f"chart mismatch: {self.chart} vs {other.chart}")

    # linear structure
    def __add__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            other = Form.const(self.chart, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return Form(self.chart, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.chart, {k: -v for k, v in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Multiplication by a Scalar or a number (a 0-form)."""
        if isinstance(other, Form):
            return wedge(self, other)
        if isinstance(other, Scalar):
            if other.chart is not self.chart and other.chart != self.chart:
                raise ChartError("chart mismatch")
            return Form(self.chart, {k: v * other for k, v in self.terms.items()}, normalized=not self.chart.constraints)
        c = GaussQ.coerce(other)
        return Form(self.chart, {k: v * c for k, v in self.terms.items()}, normalized=True)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({len(k) for k in self.terms})

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds[0] if ds else 0

    def homogeneous_part(self, k: int) -> "Form":
        return Form(self.chart, {g: s for g, s in self.terms.items() if len(g) == k}, normalized=True)

    def coefficient(self, names: Sequence[str]) -> Scalar:
        gens, sign = sort_sign([self.chart.index(n) for n in names])
        return self.terms.get(gens, Scalar.zero(self.chart)) * sign

    def __eq__(self, other):
        if isinstance(other, Form):
            return (other.chart is self.chart or other.chart == self.chart) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def map_coefficients(self, fn) -> "Form":
        return Form(self.chart, {g: fn(s) for g, s in self.terms.items()})

    # output
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def to_str(self, latex=False) -> str:
        if not self.terms:
            return "0"
        wedge_sym = r" \wedge " if latex else "∧"
        parts = []
        for gens, s in self.sorted_terms():
            mono = wedge_sym.join(
                (r"d" + _latex_name(self.chart.variables[g])) if latex else "d" + self.chart.variables[g]
                for g in gens
            )
            if not gens:
                parts.append(s.to_str(latex))
                continue
            if len(s.terms) == 1:
                ((m, c),) = s.terms.items()
                mono_s = s.monomial_str(m, latex)
                if not mono_s and c == 1:
                    parts.append(mono)
                    continue
                if not mono_s and c == -1:
                    parts.append("-" + mono)
                    continue
                coef = Scalar(s.chart, {m: c}, reduced=True).to_str(latex)
                parts.append(f"{coef} {mono}" if latex else f"{coef} {mono}")
            else:
                parts.append(f"({s.to_str(latex)}) {mono}")
        return _join_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Form[{self.chart.name}]({self.to_str()})"


def _latex_name(name: str) -> str:
    from .scalar import _latex_var

    return _latex_var(name)


class VectorField:
    """``sum_i coefficients[i] * d/d(var_i)``."""

    __slots__ = ("chart", "coefficients")

    def __init__(self, chart: ChartModel, coefficients: Mapping[int, Scalar]):
        self.chart = chart
        for i, s in coefficients.items():
            if not 0 <= i < chart.dim:
                raise ChartError(f"generator index {i} not in chart {chart}")
            if s.chart is not chart and s.chart != chart:
                raise ChartError("vector field coefficient on a different chart")
        self.coefficients = {i: s for i, s in coefficients.items() if s.terms}

    @classmethod
    def from_names(cls, chart: ChartModel, coefficients: Mapping[str, object]) -> "VectorField":
        out = {}
        for name, c in coefficients.items():
            out[chart.index(name)] = c if isinstance(c, Scalar) else Scalar.const(chart, c)
        return cls(chart, out)

    def apply(self, f: Scalar) -> Scalar:
        out = Scalar.zero(self.chart)
        for i, v in self.coefficients.items():
            if f.depends_on(i):
                out = out + v * f.diff(i)
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        out = dict(self.coefficients)
        for i, v in other.coefficients.items():
            out[i] = out[i] + v if i in out else v
        return VectorField(self.chart, out)

    def __mul__(self, c) -> "VectorField":
        return VectorField(self.chart, {i: v * c for i, v in self.coefficients.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i in sorted(self.coefficients):
            parts.append(f"({self.coefficients[i]})*∂{self.chart.variables[i]}")
        return " + ".join(parts)

    __repr__ = __str__


def bracket_vf(a: VectorField, b: VectorField) -> VectorField:
    """Lie bracket ``[a, b] = a b - b a``."""
    out = {}
    for j in set(a.coefficients) | set(b.coefficients):
        bj = b.coefficients.get(j, Scalar.zero(a.chart))
        aj = a.coefficients.get(j, Scalar.zero(a.chart))
        out[j] = a.apply(bj) - b.apply(aj)
    return VectorField(a.chart, out)


# raw operations: no normal-form projection, used inside normalization itself

def _wedge_raw(t1: Mapping[Gens, Scalar], t2: Mapping[Gens, Scalar]) -> Dict[Gens, Scalar]:
    out: Dict[Gens, Scalar] = {}
    for g1, s1 in t1.items():
        set1 = set(g1)
        for g2, s2 in t2.items():
            if set1.intersection(g2):
                continue
            sign = merge_sign(g1, g2)
            prod = s1 * s2
            _acc(out, tuple(sorted(g1 + g2)), prod if sign > 0 else -prod)
    return out


def _contract_raw(v: VectorField, terms: Mapping[Gens, Scalar]) -> Dict[Gens, Scalar]:
    out: Dict[Gens, Scalar] = {}
    coeffs = v.coefficients
    for gens, s in terms.items():
        for pos, g in enumerate(gens):
            c = coeffs.get(g)
            if c is None:
                continue
            val = s * c
            _acc(out, gens[:pos] + gens[pos + 1:], -val if pos & 1 else val)
    return out


def _d_raw(chart: ChartModel, terms: Mapping[Gens, Scalar]) -> Dict[Gens, Scalar]:
    out: Dict[Gens, Scalar] = {}
    for gens, s in terms.items():
        used = set(gens)
        for i in range(chart.dim):
            if i in used or not s.depends_on(i):
                continue
            below = sum(1 for g in gens if g < i)
            ds = s.diff(i)
            _acc(out, tuple(sorted(gens + (i,))), -ds if below & 1 else ds)
    return out


@lru_cache(maxsize=None)
def _constraint_data(chart: ChartModel, k: int):
    c: Constraint = chart.constraints[k]
    n = chart.dim
    # dF from the unreduced F = lhs - rhs
    dF: Dict[Gens, Scalar] = {}
    raw = {c.lhs: GaussQ(1)}
    for e, coef in c.rhs:
        raw[e] = raw.get(e, GaussQ(0)) - coef
    for i in range(n):
        out = {}
        for m, coef in raw.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[mm] = out.get(mm, GaussQ(0)) + coef * m[i]
        s = Scalar(chart, out)
        if s.terms:
            dF[(i,)] = s
    N = VectorField(chart, {i: Scalar(chart, dict(terms)) for i, terms in c.transversal})
    return dF, N, c.kappa.inverse()


def _project(chart: ChartModel, terms: Dict[Gens, Scalar]) -> Dict[Gens, Scalar]:
    for k in range(len(chart.constraints)):
        dF, N, kinv = _constraint_data(chart, k)
        contracted = _contract_raw(N, terms)
        if not contracted:
            continue
        corr = _wedge_raw(dF, contracted)
        out = dict(terms)
        for g, s in corr.items():
            _acc(out, g, -(s * kinv))
        terms = out
    return terms


# public operations

def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    return Form(a.chart, _wedge_raw(a.terms, b.terms))


def wedge_all(forms: Sequence[Form], chart: ChartModel = None) -> Form:
    if not forms:
        return Form.const(chart, 1)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def exterior_d(a: Form) -> Form:
    return Form(a.chart, _d_raw(a.chart, a.terms))


def contract(v: VectorField, a: Form) -> Form:
    if v.chart is not a.chart and v.chart != a.chart:
        raise ChartError("chart mismatch in contraction")
    return Form(a.chart, _contract_raw(v, a.terms))


def lie_derivative(v: VectorField, a: Form) -> Form:
    """Direct formula: derivative of coefficients plus derivative of each generator."""
    if v.chart is not a.chart and v.chart != a.chart:
        raise ChartError("chart mismatch in Lie derivative")
    chart = a.chart
    out: Dict[Gens, Scalar] = {}
    dv = {i: _d_raw(chart, {(): c}) for i, c in v.coefficients.items()}
    for gens, s in a.terms.items():
        vs = v.apply(s)
        if vs.terms:
            _acc(out, gens, vs)
        for pos, g in enumerate(gens):
            if g not in dv:
                continue
            for (j,), c in dv[g].items():
                new = gens[:pos] + (j,) + gens[pos + 1:]
                srt, sign = sort_sign(new)
                if srt is None:
                    continue
                val = s * c
                _acc(out, srt, val if sign > 0 else -val)
    return Form(chart, out)


def drop_generators(a: Form, indices: Iterable[int]) -> Form:
    """Keep only terms free of the given generators (restriction to the other directions)."""
    idx = set(indices)
    return Form(a.chart, {g: s for g, s in a.terms.items() if not idx.intersection(g)}, normalized=True)


class Substitution:
    """Pullback along a map ``target -> source`` given by images of source variables.

    ``images[j]`` is a Scalar on ``target`` giving source variable ``j`` as a
    function of target coordinates.
    """

    __slots__ = ("source", "target", "images", "_dimg")

    def __init__(self, source: ChartModel, target: ChartModel, images: Sequence[Scalar], validate=True):
        if len(images) != source.dim:
            raise ChartError("substitution needs one image per source variable")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._dimg = None
        for s in self.images:
            if s.chart is not target and s.chart != target:
                raise ChartError("substitution image on wrong chart")
        if validate:
            self.validate()

    @classmethod
    def from_names(cls, source: ChartModel, target: ChartModel, images: Mapping[str, object], validate=True):
        imgs = []
        for v in source.variables:
            val = images.get(v, v) if images is not None else v
            if isinstance(val, str):
                from .parse import parse_expr

                val = Scalar.var(target, val) if val in target.variables else parse_expr(val, target)
            elif not isinstance(val, Scalar):
                val = Scalar.const(target, val)
            imgs.append(val)
        return cls(source, target, imgs, validate)

    def validate(self) -> None:
        for j, kind in enumerate(self.source.kinds):
            if kind != REAL and not self.images[j].is_unit_monomial():
                raise ChartError(
                    f"image of invertible variable {self.source.variables[j]} must be a unit monomial"
                )
        for c in self.source.constraints:
            raw = {c.lhs: GaussQ(1)}
            for e, coef in c.rhs:
                raw[e] = raw.get(e, GaussQ(0)) - coef
            F = Scalar(self.source, raw, reduced=True)
            if F.substitute(self.images, self.target).terms:
                raise ChartError(f"substitution violates relation {c.label}")

    def _d_images(self):
        if self._dimg is None:
            self._dimg = [_d_raw(self.target, {(): s}) if s.terms else {} for s in self.images]
        return self._dimg

    def scalar(self, s: Scalar) -> Scalar:
        return s.substitute(self.images, self.target)

    def then(self, other: "Substitution") -> "Substitution":
        """Compose: pull back along ``self`` first, then ``other`` (``other* o self*``)."""
        if other.source != self.target:
            raise ChartError("cannot compose substitutions: chart mismatch")
        cache = {}
        imgs = [s.substitute(other.images, other.target, cache) for s in self.images]
        return Substitution(self.source, other.target, imgs, validate=False)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __hash__(self):
        return hash(self.images)


def pullback(sub: Substitution, a: Form) -> Form:
    if a.chart is not sub.source and a.chart != sub.source:
        raise ChartError(f"pullback: form lives on {a.chart}, substitution source is {sub.source}")
    dimg = sub._d_images()
    out: Dict[Gens, Scalar] = {}
    cache = {}
    for gens, s in a.terms.items():
        coef = s.substitute(sub.images, sub.target, cache)
        if not coef.terms:
            continue
        acc = {(): coef}
        for g in gens:
            acc = _wedge_raw(acc, dimg[g])
            if not acc:
                break
        for k, v in acc.items():
            _acc(out, k, v)
    return Form(sub.target, out)


def identity_substitution(chart: ChartModel) -> Substitution:
    return Substitution(chart, chart, [Scalar.var(chart, v) for v in chart.variables], validate=False)


@lru_cache(maxsize=None)
def drop_variable(chart: ChartModel, name: str) -> ChartModel:
    i = chart.index(name)
    for c in chart.constraints:
        if c.lhs[i] or any(j == i for j, _ in c.transversal):
            raise ChartError("cannot drop a variable involved in a relation")
    keep = [j for j in range(chart.dim) if j != i]
    remap = {j: k for k, j in enumerate(keep)}
    cons = []
    for c in chart.constraints:
        cons.append(
            Constraint(
                lhs=tuple(c.lhs[j] for j in keep),
                rhs=tuple((tuple(e[j] for j in keep), v) for e, v in c.rhs),
                transversal=tuple(
                    (remap[k], tuple((tuple(e[j] for j in keep), v) for e, v in terms))
                    for k, terms in c.transversal
                ),
                kappa=c.kappa,
                label=c.label,
            )
        )
    return _chart(
        chart.name + f"/{name}",
        [chart.variables[j] for j in keep],
        [chart.kinds[j] for j in keep],
        [remap[chart.conjugation[j]] for j in keep],
        cons,
    )


def with_interval(chart: ChartModel, name: str = "t") -> ChartModel:
    """``[0,1] x chart`` with the interval coordinate first."""
    return product(euclidean(name), chart)


def lift(a, target: ChartModel):
    """Include a Scalar/Form on a chart into a product chart containing its variables."""
    src = a.chart
    sub = Substitution(src, target, [Scalar.var(target, v) for v in src.variables], validate=False)
    if isinstance(a, Scalar):
        return sub.scalar(a)
    return pullback(sub, a)


def integrate_param(a: Form, name: str = "t") -> Form:
    """Fibre integral over ``t in [0, 1]`` of the ``dt``-component, ``dt`` moved to the front."""
    chart = a.chart
    ti = chart.index(name)
    if chart.kinds[ti] != REAL:
        raise ChartError("integration variable must be a real coordinate")
    target = drop_variable(chart, name)
    keep = [j for j in range(chart.dim) if j != ti]
    remap = {j: k for k, j in enumerate(keep)}
    out: Dict[Gens, Scalar] = {}
    for gens, s in a.terms.items():
        if ti not in gens:
            continue
        pos = gens.index(ti)
        sign = -1 if pos & 1 else 1
        new_gens = tuple(remap[g] for g in gens if g != ti)
        raw = {}
        for m, c in s.terms.items():
            mm = tuple(m[j] for j in keep)
            raw[mm] = raw.get(mm, GaussQ(0)) + c * GaussQ(1) / (m[ti] + 1) * sign
        _acc(out, new_gens, Scalar(target, raw))
    return Form(target, out)
