"""Coordinate charts: variables, Laurent/unit variables and oriented relations.

A chart is a coordinate ring presented as polynomials in ``real`` variables and
Laurent polynomials in ``unit`` variables (torus coordinates, ``u * conj(u) = 1``
is built in as ``conj(u) = u**-1``) and ``formal`` invertible constants.  On top
of that, a chart may carry :class:`Constraint` objects: a single oriented rule
``leading monomial -> rhs`` cutting out a hypersurface ``F = lhs - rhs = 0``,
together with a transversal vector field ``N`` with ``N(F) = kappa (mod F)``.
The vector field is what makes forms on the hypersurface have unique normal
forms (see :meth:`eqcharclass.core.forms.Form.normalize`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .coeffs import GaussQ, ONE

REAL, UNIT, FORMAL = "real", "unit", "formal"

Exps = Tuple[int, ...]
RawTerms = Tuple[Tuple[Exps, GaussQ], ...]


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    """Oriented rewrite rule ``lhs -> rhs`` plus a transversal field.

    ``lhs`` is an exponent vector, ``rhs`` a tuple of (exps, coeff) pairs that
    must not contain ``lhs``.  ``transversal`` maps variable index to raw terms
    of the coefficient of ``N``; ``kappa`` is ``N(lhs - rhs)`` modulo the rule.
    """

    lhs: Exps
    rhs: RawTerms
    transversal: Tuple[Tuple[int, RawTerms], ...]
    kappa: GaussQ
    label: str = ""

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.lhs) if e)

    def shifted(self, offset: int, total: int) -> "Constraint":
        def pad(e):
            return (0,) * offset + tuple(e) + (0,) * (total - offset - len(e))

        return Constraint(
            lhs=pad(self.lhs),
            rhs=tuple((pad(e), c) for e, c in self.rhs),
            transversal=tuple(
                (i + offset, tuple((pad(e), c) for e, c in terms)) for i, terms in self.transversal
            ),
            kappa=self.kappa,
            label=self.label,
        )


@dataclass(frozen=True)
class ChartModel:
    name: str
    variables: Tuple[str, ...]
    kinds: Tuple[str, ...]
    conjugation: Tuple[int, ...]
    constraints: Tuple[Constraint, ...] = ()
    _cache: Dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ChartError(f"duplicate variable names in chart {self.name}")
        if len(self.kinds) != n or len(self.conjugation) != n:
            raise ChartError("kinds/conjugation length mismatch")
        for k in self.kinds:
            if k not in (REAL, UNIT, FORMAL):
                raise ChartError(f"unknown variable kind {k!r}")
        seen = set()
        for c in self.constraints:
            sup = {i for i, _ in c.transversal} | set(c.support)
            for e, _ in c.rhs:
                sup |= {i for i, x in enumerate(e) if x}
            if sup & seen:
                raise ChartError("constraints must act on disjoint variable sets")
            seen |= sup

    @property
    def dim(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ChartError(f"variable {name!r} not in chart {self.name}") from None

    def generator_names(self) -> Tuple[str, ...]:
        return tuple("d" + v for v in self.variables)

    def is_laurent(self, i: int) -> bool:
        return self.kinds[i] != REAL

    def unit_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k == UNIT)

    def zero_exps(self) -> Exps:
        return (0,) * self.dim

    def reduce_monomial(self, m: Exps) -> Dict[Exps, GaussQ]:
        """Normal form of a single monomial under the chart's rules (memoized)."""
        cache = self._cache
        hit = cache.get(m)
        if hit is not None:
            return hit
        for c in self.constraints:
            lhs = c.lhs
            if all(m[i] >= lhs[i] for i in c.support):
                rest = tuple(a - b for a, b in zip(m, lhs))
                out: Dict[Exps, GaussQ] = {}
                for e, coef in c.rhs:
                    mm = tuple(a + b for a, b in zip(rest, e))
                    for k, v in self.reduce_monomial(mm).items():
                        s = out.get(k)
                        s = v * coef if s is None else s + v * coef
                        if s:
                            out[k] = s
                        else:
                            out.pop(k, None)
                cache[m] = out
                return out
        out = {m: ONE}
        cache[m] = out
        return out

    def __str__(self):
        return self.name


def _chart(name, variables, kinds, conjugation=None, constraints=()):
    variables = tuple(variables)
    if conjugation is None:
        conjugation = tuple(range(len(variables)))
    return ChartModel(name, variables, tuple(kinds), tuple(conjugation), tuple(constraints))


@lru_cache(maxsize=None)
def euclidean(*names: str) -> ChartModel:
    return _chart("R^%d(%s)" % (len(names), ",".join(names)), names, [REAL] * len(names))


@lru_cache(maxsize=None)
def torus_chart(*names: str) -> ChartModel:
    return _chart("T^%d(%s)" % (len(names), ",".join(names)), names, [UNIT] * len(names))


@lru_cache(maxsize=None)
def complex_chart(*names: str) -> ChartModel:
    """C^n with coordinates z, zb per name (zb is the conjugate of z)."""
    variables, conj = [], []
    for k, n in enumerate(names):
        variables += [n, n + "b"]
        conj += [2 * k + 1, 2 * k]
    return _chart("C^%d(%s)" % (len(names), ",".join(names)), variables, [REAL] * len(variables), conj)


@lru_cache(maxsize=None)
def formal_constants(*names: str) -> ChartModel:
    return _chart("const(%s)" % ",".join(names), names, [FORMAL] * len(names))


def _euler(n: int, idx: Iterable[int]) -> Tuple[Tuple[int, RawTerms], ...]:
    out = []
    for i in idx:
        e = [0] * n
        e[i] = 1
        out.append((i, ((tuple(e), ONE),)))
    return tuple(out)


@lru_cache(maxsize=None)
def sphere3(prefix: str = "") -> ChartModel:
    """S^3 in C^2 with coordinates z1, z1b, z2, z2b and z2*z2b -> 1 - z1*z1b."""
    names = tuple(prefix + v for v in ("z1", "z1b", "z2", "z2b"))
    rule = Constraint(
        lhs=(0, 0, 1, 1),
        rhs=(((0, 0, 0, 0), ONE), ((1, 1, 0, 0), GaussQ(-1))),
        transversal=_euler(4, range(4)),
        kappa=GaussQ(2),
        label="|z1|^2+|z2|^2=1",
    )
    return _chart("S^3" + (f"[{prefix}]" if prefix else ""), names, [REAL] * 4, (1, 0, 3, 2), [rule])


@lru_cache(maxsize=None)
def sphere2(prefix: str = "") -> ChartModel:
    """S^2 as the Hopf base: w = z1*z2b, wb, h = |z1|^2 - |z2|^2 with 4*w*wb + h^2 = 1."""
    names = tuple(prefix + v for v in ("w", "wb", "h"))
    rule = Constraint(
        lhs=(1, 1, 0),
        rhs=(((0, 0, 0), GaussQ(1, 0) * GaussQ(1) / 4), ((0, 0, 2), GaussQ(-1) / 4)),
        transversal=_euler(3, range(3)),
        kappa=GaussQ(1) / 2,
        label="4|w|^2+h^2=1",
    )
    return _chart("S^2" + (f"[{prefix}]" if prefix else ""), names, [REAL] * 3, (1, 0, 2), [rule])


@lru_cache(maxsize=None)
def simplex_chart(p: int) -> ChartModel:
    """Barycentric chart of Delta^p: t1..tp, with t0 = 1 - t1 - ... - tp eliminated."""
    names = tuple(f"t{i}" for i in range(1, p + 1))
    return _chart(f"Delta^{p}", names, [REAL] * p)


@lru_cache(maxsize=None)
def product(*charts: ChartModel) -> ChartModel:
    """Cartesian product; variable names must be disjoint."""
    if len(charts) == 1:
        return charts[0]
    variables, kinds, conj, constraints = [], [], [], []
    total = sum(c.dim for c in charts)
    offset = 0
    for c in charts:
        variables.extend(c.variables)
        kinds.extend(c.kinds)
        conj.extend(j + offset for j in c.conjugation)
        constraints.extend(k.shifted(offset, total) for k in c.constraints)
        offset += c.dim
    name = " x ".join(c.name for c in charts if c.dim) or "pt"
    return _chart(name, variables, kinds, conj, constraints)


POINT = _chart("pt", (), ())
