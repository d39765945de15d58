"""Parse arithmetic expressions (``x*(u + u**-1)/2 + I*y``) into Scalars or Forms."""
from __future__ import annotations

import ast
from fractions import Fraction

from .chart import ChartModel
from .coeffs import GaussQ
from .forms import Form
from .scalar import Scalar


class ParseError(ValueError):
    pass


def parse_expr(text: str, chart: ChartModel, forms: bool = False):
    """Evaluate ``text`` on ``chart``.

    Names are chart variables, ``I`` is the imaginary unit.  With ``forms=True``
    names ``d<var>`` denote generators and ``^`` (or ``∧``) is the wedge
    product, binding as tightly as ``*``.
    """
    text = text.strip()
    if forms:
        # wedge binds like multiplication, not like Python's low-precedence xor
        text = text.replace("∧", "@").replace("^", "@")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from None
    value = _eval(tree.body, chart, forms)
    if forms and isinstance(value, Scalar):
        return Form.scalar(value)
    if forms and not isinstance(value, Form):
        return Form.const(chart, value)
    if not forms and not isinstance(value, Scalar):
        return Scalar.const(chart, value)
    return value


def _eval(node, chart, forms):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ParseError(f"unsupported constant {node.value!r}")
        if isinstance(node.value, float):
            return GaussQ(Fraction(str(node.value)))
        return GaussQ(node.value)
    if isinstance(node, ast.Name):
        name = node.id
        if name == "I":
            return GaussQ(0, 1)
        if name in chart.variables:
            return Scalar.var(chart, name)
        if forms and name.startswith("d") and name[1:] in chart.variables:
            return Form.d_of(chart, name[1:])
        raise ParseError(f"unknown name {name!r} on chart {chart.name}")
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, chart, forms)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        a = _eval(node.left, chart, forms)
        b = _eval(node.right, chart, forms)
        op = node.op
        if isinstance(op, ast.Add):
            return _lift(a, chart, b) + _lift(b, chart, a)
        if isinstance(op, ast.Sub):
            return _lift(a, chart, b) - _lift(b, chart, a)
        if isinstance(op, ast.Mult):
            if isinstance(a, GaussQ) and isinstance(b, GaussQ):
                return a * b
            if isinstance(a, Form) or isinstance(b, Form):
                return _as_form(a, chart) ^ _as_form(b, chart)
            return a * b if not isinstance(a, GaussQ) else b * a
        if isinstance(op, ast.MatMult) and forms:
            return _as_form(a, chart) ^ _as_form(b, chart)
        if isinstance(op, ast.Div):
            if not isinstance(b, (GaussQ, Scalar)):
                raise ParseError("can only divide by numbers or unit monomials")
            if isinstance(a, Form):
                return a * (b.inverse() if isinstance(b, Scalar) else b.inverse())
            return a / b
        if isinstance(op, ast.Pow):
            if not isinstance(b, GaussQ) or b.im or b.re.denominator != 1:
                raise ParseError("exponent must be an integer")
            return a ** int(b.re)
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def _as_form(v, chart):
    if isinstance(v, Form):
        return v
    if isinstance(v, Scalar):
        return Form.scalar(v)
    return Form.const(chart, v)


def _lift(v, chart, other):
    if isinstance(other, Form):
        return _as_form(v, chart)
    if isinstance(v, GaussQ) and isinstance(other, Scalar):
        return Scalar.const(chart, v)
    return v
