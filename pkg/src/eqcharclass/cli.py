"""Command-line entry point: ``verify``, ``compute``, ``export`` and ``list``.

Exit status: 0 on success, 1 when an identity fails, 2 on a configuration error.
"""
from __future__ import annotations

import argparse
import configparser
import contextlib
import sys
from typing import List, Optional

from . import chern_weil as cw
from .cartan import EquivariantForm
from .core import Form, dumps, form_to_json
from .suites import SUITES, Result, SuiteConfig, resolve_suites, run_suites

FORMATS = ("plain", "json", "latex")
WHAT = ("curvature", "moment-map", "char-form", "transgression")


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- configuration


def read_config_file(path: str) -> dict:
    """``key = value`` lines (``#`` comments); section headers are optional."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string("[verify]\n" + text if not text.lstrip().startswith("[") else text)
    except configparser.Error as exc:
        raise ConfigError(f"bad config {path}: {exc}") from None
    out = {}
    for section in parser.sections():
        out.update({k.replace("-", "_"): v for k, v in parser[section].items()})
    return out


def _as_int(key, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def build_config(args) -> SuiteConfig:
    """File values first, then flags on top."""
    values = read_config_file(args.config) if args.config else {}
    known = {"suite", "suites", "seed", "samples", "p_max", "format", "example"}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    suites = values.get("suite") or values.get("suites")
    suites = [s.strip() for s in suites.split(",") if s.strip()] if suites else ["all"]
    if args.suite:
        suites = [s for item in args.suite for s in item.split(",") if s]
    cfg = SuiteConfig(suites=suites)
    cfg.seed = _as_int("seed", args.seed if args.seed is not None else values.get("seed", 0))
    samples = args.samples if args.samples is not None else values.get("samples")
    cfg.samples = None if samples is None else _as_int("samples", samples)
    cfg.p_max = _as_int("p_max", args.p_max if args.p_max is not None else values.get("p_max", 3))
    cfg.fmt = args.format or values.get("format", "plain")
    cfg.example = args.example or values.get("example")
    try:
        resolve_suites(cfg.suites)
    except KeyError as exc:
        raise ConfigError(f"unknown suite {exc.args[0]!r}; choose from all, {', '.join(sorted(SUITES))}") from None
    if cfg.fmt not in FORMATS:
        raise ConfigError(f"unknown format {cfg.fmt!r}")
    if cfg.samples is not None and cfg.samples < 1:
        raise ConfigError("samples must be positive")
    if not 1 <= cfg.p_max <= 5:
        raise ConfigError("p_max must lie in 1..5")
    if cfg.example is not None and cfg.example not in cw.bundle_names():
        raise ConfigError(f"unknown example {cfg.example!r}")
    return cfg


# ---------------------------------------------------------------- reports


def _latex_escape(s: str) -> str:
    for a, b in (("\\", r"\textbackslash{}"), ("_", r"\_"), ("^", r"\^{}"), ("#", r"\#"), ("&", r"\&"), ("%", r"\%")):
        s = s.replace(a, b)
    return s


def format_report(results: List[Result], fmt: str) -> str:
    results = sorted(results, key=lambda r: (r.suite, r.identity))
    failed = sum(not r.ok for r in results)
    if fmt == "json":
        return dumps({"results": [r.to_json() for r in results], "passed": len(results) - failed, "failed": failed}) + "\n"
    if fmt == "latex":
        rows = [r"\begin{tabular}{lll}", r"suite & identity & status \\ \hline"]
        for r in results:
            rows.append(f"{_latex_escape(r.suite)} & {_latex_escape(r.identity)} & {'pass' if r.ok else 'FAIL'} \\\\")
        rows.append(r"\end{tabular}")
        return "\n".join(rows) + "\n"
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.suite}: {r.identity} ({r.detail})" for r in results]
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"


@contextlib.contextmanager
def corrupted_orientation():
    """Test hook: flip the simplex orientation so the integration identities break."""
    from .simplicial import dupont

    original = dupont.orientation_sign
    dupont.orientation_sign = lambda p: -original(p)
    try:
        yield
    finally:
        dupont.orientation_sign = original


def run_verify(cfg: SuiteConfig, corrupt_sign: bool = False):
    ctx = corrupted_orientation() if corrupt_sign else contextlib.nullcontext()
    with ctx:
        results = run_suites(cfg)
    status = 0 if all(r.ok for r in results) else 1
    return status, format_report(results, cfg.fmt)


# ---------------------------------------------------------------- compute / export


def compute(example: str, what: str, polynomial: str = "id", action: Optional[str] = None, connection: int = 0, to: Optional[int] = None):
    """The requested Form or EquivariantForm for a registered bundle."""
    if example not in cw.bundle_names():
        raise ConfigError(f"unknown example {example!r}")
    actions = cw.bundle_actions(example)
    if action is not None and action not in actions:
        raise ConfigError(f"example {example!r} has actions {', '.join(actions)}")
    action = action or actions[0]
    n = cw.connection_count(example, action)
    for idx in (connection, to):
        if idx is not None and not 0 <= idx < n:
            raise ConfigError(f"connection index {idx} outside 0..{n - 1}")
    conn = cw.get_connection(example, action, connection)
    if what == "curvature":
        return cw.curvature(conn).components[0]
    alg = conn.bundle.G_action.algebra
    if what == "moment-map":
        out = EquivariantForm(conn.bundle.G_action, {})
        for a in range(alg.dim):
            mu = cw.moment_map(conn, alg.basis_element(a)).components[0]
            out = out + EquivariantForm(conn.bundle.G_action, {(a,): mu})
        return out
    try:
        P = cw.polynomial(polynomial)
    except Exception as exc:
        raise ConfigError(str(exc)) from None
    if what == "char-form":
        return cw.equivariant_char_form(P, conn)
    if what == "transgression":
        other = cw.get_connection(example, action, (connection + 1) % n if to is None else to)
        return cw.transgression(P, conn, other)
    raise ConfigError(f"unknown quantity {what!r}")


def export(result, fmt: str) -> bytes:
    """Byte-stable rendering of a Form or EquivariantForm."""
    if fmt == "json":
        data = form_to_json(result) if isinstance(result, Form) else result.to_json()
        return (dumps(data) + "\n").encode("utf-8")
    if fmt == "latex":
        return (result.to_str(latex=True) + "\n").encode("utf-8")
    return (str(result) + "\n").encode("utf-8")


# ---------------------------------------------------------------- argument parsing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqcharclass", description="Exact checks of equivariant characteristic classes.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", action="append", help="suite name, repeatable or comma separated; 'all' for every suite")
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int, help="random samples per identity")
    v.add_argument("--p-max", type=int, dest="p_max")
    v.add_argument("--format", choices=FORMATS)
    v.add_argument("--example", help="restrict bundle-based suites to one registered example")
    v.add_argument("--config", help="key = value file; flags override it")
    v.add_argument("--corrupt-sign", action="store_true", help=argparse.SUPPRESS)

    for name, helptext in (("compute", "print a form for a registered example"), ("export", "write a form as bytes")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--example", required=True)
        c.add_argument("--what", choices=WHAT, default="char-form")
        c.add_argument("--polynomial", default="id")
        c.add_argument("--action")
        c.add_argument("--connection", type=int, default=0)
        c.add_argument("--to", type=int, help="second connection for transgressions")
        c.add_argument("--format", choices=FORMATS, default="plain" if name == "compute" else "json")
        if name == "export":
            c.add_argument("-o", "--output", help="file to write (default stdout)")

    sub.add_parser("list", help="registered examples, actions and suites")
    return p


def _list_text() -> str:
    lines = ["suites: " + ", ".join(sorted(SUITES)), "examples:"]
    for b in cw.bundle_names():
        for a in cw.bundle_actions(b):
            lines.append(f"  {b} (action {a}): {cw.connection_count(b, a)} connections")
    lines.append("line bundles: " + ", ".join(cw.line_bundle_names()))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = sys.stdout
    try:
        if args.command == "verify":
            status, text = run_verify(build_config(args), args.corrupt_sign)
            out.write(text)
            return status
        if args.command == "list":
            out.write(_list_text())
            return 0
        result = compute(args.example, args.what, args.polynomial, args.action, args.connection, args.to)
        data = export(result, args.format)
        if args.command == "export" and args.output:
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            out.write(data.decode("utf-8"))
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
