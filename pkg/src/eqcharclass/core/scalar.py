"""Exact Laurent polynomials over Q(i) on a chart, kept in rule-normal form."""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence

from .chart import ChartError, ChartModel, Exps, REAL
from .coeffs import GaussQ, ONE, ZERO


def _add_into(out: Dict, key, value) -> None:
    s = out.get(key)
    s = value if s is None else s + value
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def reduce_terms(chart: ChartModel, raw: Mapping[Exps, GaussQ]) -> Dict[Exps, GaussQ]:
    if not chart.constraints:
        return {k: v for k, v in raw.items() if v}
    out: Dict[Exps, GaussQ] = {}
    for m, c in raw.items():
        if not c:
            continue
        for k, v in chart.reduce_monomial(m).items():
            _add_into(out, k, v * c)
    return out


class Scalar:
    """Immutable Laurent polynomial; ``terms`` maps exponent vectors to coefficients."""

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: ChartModel, terms: Mapping[Exps, GaussQ] = None, *, reduced=False):
        self.chart = chart
        terms = terms or {}
        self.terms = dict(terms) if reduced else reduce_terms(chart, terms)
        self._hash = None
        if not reduced:
            for m in self.terms:
                for i, e in enumerate(m):
                    if e < 0 and chart.kinds[i] == REAL:
                        raise ChartError(
                            f"negative power of non-unit variable {chart.variables[i]}"
                        )

    # constructors
    @classmethod
    def const(cls, chart: ChartModel, value=1) -> "Scalar":
        value = GaussQ.coerce(value)
        return cls(chart, {chart.zero_exps(): value} if value else {}, reduced=True)

    @classmethod
    def zero(cls, chart: ChartModel) -> "Scalar":
        return cls(chart, {}, reduced=True)

    @classmethod
    def var(cls, chart: ChartModel, name: str, power: int = 1) -> "Scalar":
        e = [0] * chart.dim
        e[chart.index(name)] = power
        return cls(chart, {tuple(e): ONE})

    @classmethod
    def monomial(cls, chart: ChartModel, powers: Mapping[str, int], coeff=1) -> "Scalar":
        e = [0] * chart.dim
        for name, p in powers.items():
            e[chart.index(name)] += p
        return cls(chart, {tuple(e): GaussQ.coerce(coeff)})

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.chart is not self.chart and other.chart != self.chart:
                raise ChartError(f"chart mismatch: {self.chart} vs {other.chart}")
            return other
        return Scalar.const(self.chart, other)

    # arithmetic
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return Scalar(self.chart, out, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.chart, {k: -v for k, v in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                c = GaussQ.coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Scalar.zero(self.chart)
            return Scalar(self.chart, {k: v * c for k, v in self.terms.items()}, reduced=True)
        other = self._coerce(other)
        if len(other.terms) == 1 and not self.chart.constraints:
            ((m2, c2),) = other.terms.items()
            return Scalar(
                self.chart,
                {tuple(a + b for a, b in zip(m1, m2)): c1 * c2 for m1, c1 in self.terms.items()},
                reduced=True,
            )
        raw: Dict[Exps, GaussQ] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _add_into(raw, tuple(a + b for a, b in zip(m1, m2)), c1 * c2)
        if self.chart.constraints:
            return Scalar(self.chart, raw)
        return Scalar(self.chart, raw, reduced=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.const(self.chart, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        ((m, _),) = self.terms.items()
        return all(e == 0 or self.chart.kinds[i] != REAL for i, e in enumerate(m))

    def inverse(self) -> "Scalar":
        if not self.is_unit_monomial():
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        ((m, c),) = self.terms.items()
        return Scalar(self.chart, {tuple(-e for e in m): c.inverse()}, reduced=True)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self * other.inverse()
        return self * GaussQ.coerce(other).inverse()

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.chart.zero_exps()}

    def constant_term(self) -> GaussQ:
        return self.terms.get(self.chart.zero_exps(), ZERO)

    def depends_on(self, i: int) -> bool:
        return any(m[i] for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (other.chart is self.chart or other.chart == self.chart) and self.terms == other.terms
        try:
            return self == Scalar.const(self.chart, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # calculus
    def diff(self, i: int) -> "Scalar":
        """Partial derivative in variable index ``i``."""
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                _add_into(out, mm, c * e)
        # derivative of a normal form need not be normal
        return Scalar(self.chart, out, reduced=not self.chart.constraints)

    def euler(self, i: int) -> "Scalar":
        """``u d/du`` in variable ``i`` (the generator of rotation for unit variables)."""
        out = {m: c * m[i] for m, c in self.terms.items() if m[i]}
        return Scalar(self.chart, out, reduced=not self.chart.constraints)

    def substitute(self, images: Sequence["Scalar"], target: ChartModel, _powcache=None) -> "Scalar":
        """Ring homomorphism sending variable ``j`` to ``images[j]`` (a Scalar on ``target``)."""
        cache = {} if _powcache is None else _powcache
        out = Scalar.zero(target)
        acc: Dict[Exps, GaussQ] = {}
        for m, c in self.terms.items():
            term = None
            for j, e in enumerate(m):
                if not e:
                    continue
                key = (j, e)
                p = cache.get(key)
                if p is None:
                    p = images[j] ** e
                    cache[key] = p
                term = p if term is None else term * p
            if term is None:
                _add_into(acc, target.zero_exps(), c)
            elif len(term.terms) == 1 and not target.constraints:
                ((mm, cc),) = term.terms.items()
                _add_into(acc, mm, cc * c)
            else:
                out = out + term * c
        if acc:
            out = out + Scalar(target, acc)
        return out

    def restrict(self, values: Mapping[int, int]) -> "Scalar":
        """Set unit variables (index -> value 1) to the identity; kept on the same chart."""
        out: Dict[Exps, GaussQ] = {}
        for m, c in self.terms.items():
            mm = list(m)
            for i in values:
                mm[i] = 0
            _add_into(out, tuple(mm), c)
        return Scalar(self.chart, out, reduced=not self.chart.constraints)

    def conjugate(self) -> "Scalar":
        """Complex conjugate, using the chart's conjugation pairing."""
        out: Dict[Exps, GaussQ] = {}
        conj = self.chart.conjugation
        for m, c in self.terms.items():
            mm = [0] * len(m)
            for i, e in enumerate(m):
                if not e:
                    continue
                j = conj[i]
                mm[j] += -e if self.chart.kinds[i] != REAL and j == i else e
            _add_into(out, tuple(mm), c.conjugate())
        return Scalar(self.chart, out)

    # output
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(abs(e) for e in kv[0]), tuple(-e for e in kv[0])))

    def monomial_str(self, m: Exps, latex=False) -> str:
        parts = []
        for name, e in zip(self.chart.variables, m):
            if not e:
                continue
            if latex:
                base = _latex_var(name)
                parts.append(base if e == 1 else f"{base}^{{{e}}}")
            else:
                parts.append(name if e == 1 else f"{name}^{e}")
        return (" " if latex else "*").join(parts)

    def to_str(self, latex=False) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self.monomial_str(m, latex)
            out.append(_term_str(c, mono, latex))
        return _join_terms(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Scalar({self.to_str()})"


def _latex_var(name: str) -> str:
    if name.endswith("b") and len(name) > 1 and name[0] == "z":
        return r"\bar{z}_{%s}" % name[1:-1]
    if len(name) > 1 and name[1:].isdigit():
        return f"{name[0]}_{{{name[1:]}}}"
    return name


def _term_str(c: GaussQ, mono: str, latex: bool) -> str:
    cs = str(c)
    if latex:
        cs = cs.replace("i", r"\,i")
    if not mono:
        return cs
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return cs + (" " if latex else "*") + mono


def _join_terms(parts: Iterable[str]) -> str:
    out = ""
    for p in parts:
        if not out:
            out = p
        elif p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
