"""Simplicial manifolds as per-level charts with face and degeneracy pullbacks.

``face(p, i)`` is the pullback ``d_i^*`` from level ``p - 1`` to level ``p``;
``degeneracy(p, i)`` is the pullback ``s_i^*`` from level ``p + 1`` to level ``p``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import List, Sequence, Tuple

from ..core import ChartModel, Scalar, Substitution, product, torus_chart
from ..core.chart import POINT
from ..lie import ActionModel, TorusGroupModel


class SimplicialError(ValueError):
    pass


def _prod(values: Sequence[Scalar], chart: ChartModel) -> Scalar:
    out = Scalar.const(chart, 1)
    for v in values:
        out = out * v
    return out


class SimplicialSpace:
    """Base class: subclasses provide ``chart``, ``face`` and ``degeneracy``."""

    name = "simplicial space"

    def chart(self, p: int) -> ChartModel:
        raise NotImplementedError

    def face(self, p: int, i: int) -> Substitution:
        raise NotImplementedError

    def degeneracy(self, p: int, i: int) -> Substitution:
        raise NotImplementedError

    def _check_face(self, p, i):
        if p < 1 or not 0 <= i <= p:
            raise SimplicialError(f"no face d_{i} at level {p}")

    def _check_degeneracy(self, p, i):
        if p < 0 or not 0 <= i <= p:
            raise SimplicialError(f"no degeneracy s_{i} at level {p}")

    def relation_defects(self, p_max: int) -> List[str]:
        """Simplicial identities that fail as substitution identities up to level ``p_max``."""
        bad = []
        for p in range(2, p_max + 1):
            for j in range(p + 1):
                for i in range(j):
                    lhs = self.face(p - 1, i).then(self.face(p, j))
                    rhs = self.face(p - 1, j - 1).then(self.face(p, i))
                    if lhs != rhs:
                        bad.append(f"d_{i} d_{j} = d_{j - 1} d_{i} at level {p}")
        for p in range(0, p_max - 1):
            for j in range(p + 1):
                for i in range(j + 1):
                    lhs = self.degeneracy(p + 1, i).then(self.degeneracy(p, j))
                    rhs = self.degeneracy(p + 1, j + 1).then(self.degeneracy(p, i))
                    if lhs != rhs:
                        bad.append(f"s_{i} s_{j} = s_{j + 1} s_{i} at level {p}")
        for p in range(0, p_max):
            for j in range(p + 1):
                for i in range(p + 2):
                    lhs = self.face(p + 1, i).then(self.degeneracy(p, j))
                    if i in (j, j + 1):
                        ok = lhs.images == tuple(Scalar.var(self.chart(p), v) for v in self.chart(p).variables)
                    elif i < j:
                        ok = lhs == self.degeneracy(p - 1, j - 1).then(self.face(p, i))
                    else:
                        ok = lhs == self.degeneracy(p - 1, j).then(self.face(p, i - 1))
                    if not ok:
                        bad.append(f"d_{i} s_{j} at level {p}")
        return bad


class ActionSpace(SimplicialSpace):
    """``G^p x M`` for a torus action; copy ``j`` of G has coordinates ``<prefix><j>``."""

    def __init__(self, action: ActionModel, prefix: str = "u"):
        self.action = action
        self.group = action.group
        self.prefix = prefix
        self.name = f"G^.x M[{action.name}]"

    def __eq__(self, other):
        return isinstance(other, ActionSpace) and self.action == other.action and self.prefix == other.prefix

    def __hash__(self):
        return hash((self.action.name, self.prefix))

    @property
    def space(self) -> ChartModel:
        return self.action.space

    def copy_names(self, j: int) -> Tuple[str, ...]:
        return self.group.coordinate_names(f"{self.prefix}{j}")

    def group_chart(self, p: int) -> ChartModel:
        names = [n for j in range(1, p + 1) for n in self.copy_names(j)]
        return torus_chart(*names)

    def chart(self, p: int) -> ChartModel:
        return _action_chart(self, p)

    def group_indices(self, p: int, j: int = None) -> Tuple[int, ...]:
        """Chart indices of the group coordinates (of copy ``j`` if given)."""
        r = self.group.rank
        if j is None:
            return tuple(range(p * r))
        return tuple(range((j - 1) * r, j * r))

    def space_indices(self, p: int) -> Tuple[int, ...]:
        r = self.group.rank
        return tuple(range(p * r, p * r + self.space.dim))

    def copy_vars(self, chart: ChartModel, j: int) -> List[Scalar]:
        return [Scalar.var(chart, n) for n in self.copy_names(j)]

    def space_vars(self, chart: ChartModel) -> List[Scalar]:
        return [Scalar.var(chart, v) for v in self.space.variables]

    def face(self, p: int, i: int) -> Substitution:
        self._check_face(p, i)
        return _action_face(self, p, i)

    def degeneracy(self, p: int, i: int) -> Substitution:
        self._check_degeneracy(p, i)
        return _action_degeneracy(self, p, i)

    def product_images(self, chart: ChartModel, copies: Sequence[int]) -> List[Scalar]:
        """Coordinates of ``g_{c_1} ... g_{c_n}`` (identity if empty)."""
        r = self.group.rank
        out = []
        for a in range(r):
            out.append(_prod([self.copy_vars(chart, j)[a] for j in copies], chart))
        return out


@lru_cache(maxsize=None)
def _action_chart(X: ActionSpace, p: int) -> ChartModel:
    if p == 0:
        return X.space
    return product(X.group_chart(p), X.space)


@lru_cache(maxsize=None)
def _action_face(X: ActionSpace, p: int, i: int) -> Substitution:
    src, tgt = X.chart(p - 1), X.chart(p)
    images: List[Scalar] = []
    for j in range(1, p):
        if j < i:
            images += X.copy_vars(tgt, j)
        elif j == i:
            images += X.product_images(tgt, [i, i + 1])
        else:
            images += X.copy_vars(tgt, j + 1)
    if i == p:
        images += X.action.act_images(tgt, X.copy_vars(tgt, p), X.space_vars(tgt))
    else:
        images += X.space_vars(tgt)
    return Substitution(src, tgt, images, validate=False)


@lru_cache(maxsize=None)
def _action_degeneracy(X: ActionSpace, p: int, i: int) -> Substitution:
    src, tgt = X.chart(p + 1), X.chart(p)
    one = [Scalar.const(tgt, 1)] * X.group.rank
    images: List[Scalar] = []
    for j in range(1, p + 2):
        if j <= i:
            images += X.copy_vars(tgt, j)
        elif j == i + 1:
            images += one
        else:
            images += X.copy_vars(tgt, j - 1)
    images += X.space_vars(tgt)
    return Substitution(src, tgt, images, validate=False)


class NbarK(SimplicialSpace):
    """``K^{p+1}`` with faces deleting a coordinate and degeneracies repeating one."""

    def __init__(self, K: TorusGroupModel, prefix: str = "k"):
        self.K = K
        self.prefix = prefix
        self.name = "NbarK"

    def __eq__(self, other):
        return isinstance(other, NbarK) and self.K == other.K and self.prefix == other.prefix

    def __hash__(self):
        return hash(("NbarK", self.K, self.prefix))

    def copy_names(self, j):
        return self.K.coordinate_names(f"{self.prefix}{j}")

    def chart(self, p):
        return torus_chart(*[n for j in range(p + 1) for n in self.copy_names(j)])

    def copy_vars(self, chart, j):
        return [Scalar.var(chart, n) for n in self.copy_names(j)]

    def face(self, p, i):
        self._check_face(p, i)
        tgt = self.chart(p)
        images = []
        for j in range(p):
            images += self.copy_vars(tgt, j if j < i else j + 1)
        return Substitution(self.chart(p - 1), tgt, images, validate=False)

    def degeneracy(self, p, i):
        self._check_degeneracy(p, i)
        tgt = self.chart(p)
        images = []
        for j in range(p + 2):
            images += self.copy_vars(tgt, j if j <= i else j - 1)
        return Substitution(self.chart(p + 1), tgt, images, validate=False)

    def projection(self, p: int, i: int) -> Substitution:
        """Pullback along ``pi_i: (k_0, ..., k_p) -> k_i`` from the chart of K."""
        tgt = self.chart(p)
        return Substitution(self.K.chart(), tgt, self.copy_vars(tgt, i), validate=False)

    def diagonal_action(self, p: int) -> ActionModel:
        """Right action of K on ``K^{p+1}``: ``k_j -> k_j h``."""
        chart = self.chart(p)
        h = TorusGroupModel(self.K.rank, "h", self.K.name)
        pc = product(h.chart(), chart)
        images = {}
        for j in range(p + 1):
            for n, hn in zip(self.copy_names(j), h.coordinate_names()):
                images[n] = Scalar.var(pc, n) * Scalar.var(pc, hn)
        return ActionModel.build("diagonal", h, chart, images)


class NK(SimplicialSpace):
    """``K^p`` with the bar-construction faces (``M = pt`` in ``K^. x M``)."""

    def __init__(self, K: TorusGroupModel, prefix: str = "h"):
        self.K = K
        self.prefix = prefix
        self.name = "NK"

    def __eq__(self, other):
        return isinstance(other, NK) and self.K == other.K and self.prefix == other.prefix

    def __hash__(self):
        return hash(("NK", self.K, self.prefix))

    def copy_names(self, j):
        return self.K.coordinate_names(f"{self.prefix}{j}")

    def chart(self, p):
        if p == 0:
            return POINT
        return torus_chart(*[n for j in range(1, p + 1) for n in self.copy_names(j)])

    def copy_vars(self, chart, j):
        return [Scalar.var(chart, n) for n in self.copy_names(j)]

    def face(self, p, i):
        self._check_face(p, i)
        tgt = self.chart(p)
        images = []
        for j in range(1, p):
            if i == 0:
                images += self.copy_vars(tgt, j + 1)
            elif j < i or (i == p and j <= p - 1):
                images += self.copy_vars(tgt, j)
            elif j == i:
                images += [a * b for a, b in zip(self.copy_vars(tgt, i), self.copy_vars(tgt, i + 1))]
            else:
                images += self.copy_vars(tgt, j + 1)
        return Substitution(self.chart(p - 1), tgt, images, validate=False)

    def degeneracy(self, p, i):
        self._check_degeneracy(p, i)
        tgt = self.chart(p)
        images = []
        for j in range(1, p + 2):
            if j <= i:
                images += self.copy_vars(tgt, j)
            elif j == i + 1:
                images += [Scalar.const(tgt, 1)] * self.K.rank
            else:
                images += self.copy_vars(tgt, j - 1)
        return Substitution(self.chart(p + 1), tgt, images, validate=False)


def gamma(nbar: NbarK, nk: NK, p: int) -> Substitution:
    """Pullback along ``gamma: (k_0, ..., k_p) -> (k_0 k_1^-1, ..., k_{p-1} k_p^-1)``."""
    tgt = nbar.chart(p)
    images = []
    for j in range(1, p + 1):
        a = nbar.copy_vars(tgt, j - 1)
        b = nbar.copy_vars(tgt, j)
        images += [x * y.inverse() for x, y in zip(a, b)]
    return Substitution(nk.chart(p), tgt, images, validate=False)


def gamma_defects(nbar: NbarK, nk: NK, p_max: int) -> List[str]:
    """``gamma`` commutes with faces and degeneracies."""
    bad = []
    for p in range(1, p_max + 1):
        for i in range(p + 1):
            if nk.face(p, i).then(gamma(nbar, nk, p)) != gamma(nbar, nk, p - 1).then(nbar.face(p, i)):
                bad.append(f"gamma d_{i} at level {p}")
    for p in range(0, p_max):
        for i in range(p + 1):
            if gamma(nbar, nk, p + 1).then(nbar.degeneracy(p, i)) != nk.degeneracy(p, i).then(gamma(nbar, nk, p)):
                bad.append(f"gamma s_{i} at level {p}")
    return bad


def nbar_identification(nbar: NbarK, X: ActionSpace, p: int) -> Substitution:
    """Pullback along ``G^p x K -> K^{p+1}``, ``(g, e) -> (g_1...g_p e, ..., g_p e, e)``.

    ``X`` must be the left translation action of K on itself.
    """
    tgt = X.chart(p)
    e = X.space_vars(tgt)
    images = []
    for i in range(p + 1):
        g = X.product_images(tgt, list(range(i + 1, p + 1)))
        images += [a * b for a, b in zip(g, e)]
    return Substitution(nbar.chart(p), tgt, images, validate=False)
