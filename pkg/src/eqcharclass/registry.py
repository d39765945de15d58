"""Loader for the plain-text registry of algebras and actions (``data/registry.cfg``)."""
from __future__ import annotations

import configparser
import re
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional

from .core import complex_chart, euclidean, sphere2, sphere3
from .core.chart import ChartModel
from .lie import (
    ActionModel,
    LieAlgebraModel,
    TorusGroupModel,
    abelian_algebra,
    gl2_algebra,
    sl2_algebra,
)


class RegistryError(ValueError):
    pass


_SPACE_RE = re.compile(r"^\s*(euclidean|complex)\s*\(([^)]*)\)\s*$")


def parse_space(text: str) -> ChartModel:
    text = text.strip()
    if text == "sphere3":
        return sphere3()
    if text == "sphere2":
        return sphere2()
    m = _SPACE_RE.match(text)
    if not m:
        raise RegistryError(f"unknown space {text!r}")
    names = tuple(n.strip() for n in m.group(2).split(",") if n.strip())
    if not names:
        raise RegistryError(f"space {text!r} has no coordinates")
    return euclidean(*names) if m.group(1) == "euclidean" else complex_chart(*names)


class Registry:
    def __init__(self, parser: configparser.ConfigParser):
        self.parser = parser
        self._algebras: Dict[str, LieAlgebraModel] = {}
        self._actions: Dict[str, ActionModel] = {}

    def _sections(self, kind: str) -> List[str]:
        out = []
        for s in self.parser.sections():
            parts = s.split(None, 1)
            if len(parts) == 2 and parts[0] == kind:
                out.append(parts[1].strip())
        return out

    def algebra_names(self) -> List[str]:
        return self._sections("algebra")

    def action_names(self) -> List[str]:
        return self._sections("action")

    def algebra(self, name: str) -> LieAlgebraModel:
        if name in self._algebras:
            return self._algebras[name]
        key = f"algebra {name}"
        if not self.parser.has_section(key):
            raise RegistryError(f"unknown algebra {name!r}")
        sec = self.parser[key]
        kind = sec.get("kind", "").strip()
        if kind == "abelian":
            alg = abelian_algebra(name, sec.getint("rank"))
        elif kind == "sl2":
            alg = sl2_algebra()
        elif kind == "gl2":
            alg = gl2_algebra()
        else:
            raise RegistryError(f"algebra {name!r}: unknown kind {kind!r}")
        self._algebras[name] = alg
        return alg

    def group(self, name: str, prefix: str = "u") -> TorusGroupModel:
        alg = self.algebra(name)
        if not alg.is_abelian:
            raise RegistryError(f"{name!r} is not a torus")
        return TorusGroupModel(alg.dim, prefix, name)

    def action(self, name: str) -> ActionModel:
        if name in self._actions:
            return self._actions[name]
        key = f"action {name}"
        if not self.parser.has_section(key):
            raise RegistryError(f"unknown action {name!r}")
        sec = self.parser[key]
        group = self.group(sec.get("group", "u1").strip(), sec.get("prefix", "u").strip())
        space = parse_space(sec.get("space", ""))
        images = {}
        for k, v in sec.items():
            if k.startswith("image."):
                var = k[len("image."):]
                if var not in space.variables:
                    raise RegistryError(f"action {name!r}: {var!r} is not a coordinate of {space}")
                images[var] = v
        act = ActionModel.build(name, group, space, images)
        self._actions[name] = act
        return act


def _make_parser() -> configparser.ConfigParser:
    # keep key case (variables like z1b) and allow dotted keys
    p = configparser.ConfigParser(interpolation=None)
    p.optionxform = str
    return p


def load_registry(path: Optional[str] = None) -> Registry:
    if path is None:
        return _default_registry()
    parser = _make_parser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise RegistryError(f"cannot read registry {path}: {exc}") from None
    return Registry(parser)


@lru_cache(maxsize=None)
def _default_registry() -> Registry:
    parser = _make_parser()
    text = resources.files("eqcharclass").joinpath("data/registry.cfg").read_text(encoding="utf-8")
    parser.read_string(text)
    return Registry(parser)
