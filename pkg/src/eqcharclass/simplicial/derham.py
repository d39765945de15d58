"""The simplicial de Rham double complex ``Omega^q(G^p x M)``."""
from __future__ import annotations

from typing import Dict, Mapping

from ..core import Form, exterior_d, pullback
from .spaces import SimplicialError, SimplicialSpace


class SimplicialForm:
    """A Form on the level-``p`` chart of a simplicial space."""

    __slots__ = ("space", "level", "form")

    def __init__(self, space: SimplicialSpace, level: int, form: Form):
        if form.chart != space.chart(level):
            raise SimplicialError(f"form does not live on level {level} of {space.name}")
        self.space = space
        self.level = level
        self.form = form

    def __add__(self, other):
        self._check(other)
        return SimplicialForm(self.space, self.level, self.form + other.form)

    def __sub__(self, other):
        self._check(other)
        return SimplicialForm(self.space, self.level, self.form - other.form)

    def __neg__(self):
        return SimplicialForm(self.space, self.level, -self.form)

    def __mul__(self, c):
        return SimplicialForm(self.space, self.level, self.form * c)

    __rmul__ = __mul__

    def _check(self, other):
        if other.space != self.space or other.level != self.level:
            raise SimplicialError("simplicial forms at different levels")

    def is_zero(self):
        return self.form.is_zero()

    def __eq__(self, other):
        return isinstance(other, SimplicialForm) and self.level == other.level and self.form == other.form

    def __hash__(self):
        return hash((self.level, self.form))

    def __repr__(self):
        return f"SimplicialForm[{self.level}]({self.form})"


def simplicial_del(x: SimplicialForm, p_max: int = None) -> SimplicialForm:
    """``sum_i (-1)^i d_i^* x`` at level ``p + 1``."""
    p = x.level + 1
    if p_max is not None and p > p_max:
        raise SimplicialError(f"level {p} exceeds p_max = {p_max}")
    out = Form.zero(x.space.chart(p))
    for i in range(p + 1):
        term = pullback(x.space.face(p, i), x.form)
        out = out - term if i & 1 else out + term
    return SimplicialForm(x.space, p, out)


def total_d(elem: Mapping[int, SimplicialForm]) -> Dict[int, SimplicialForm]:
    """``d + (-1)^q del`` on a sum of simplicial forms (keyed by level)."""
    out: Dict[int, SimplicialForm] = {}

    def add(x: SimplicialForm):
        if x.is_zero():
            return
        out[x.level] = out[x.level] + x if x.level in out else x

    for x in elem.values():
        add(SimplicialForm(x.space, x.level, exterior_d(x.form)))
        for q in x.form.degrees():
            part = SimplicialForm(x.space, x.level, x.form.homogeneous_part(q))
            dx = simplicial_del(part)
            add(-dx if q & 1 else dx)
    return {k: v for k, v in out.items() if not v.is_zero()}


def double_complex_defect(x: SimplicialForm) -> Dict[int, SimplicialForm]:
    """``(d + (-1)^q del)^2 x``; empty when the double complex identity holds."""
    return total_d(total_d({x.level: x}))
