"""Radical expression trees over Q.

Closed forms are kept as trees so they can be evaluated at whatever precision
a certificate needs. Trees are built from a small infix syntax::

    ((sqrt(5) + 1)/2)**(3/2) * ((sqrt(13) + 3)/2)**(1/2)

and serialize to nested JSON objects ``{"op": ..., "args": [...]}``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from mpmath import mp, mpf

from .precision import DomainError

OPS = ("int", "add", "sub", "mul", "div", "neg", "pow", "sqrt")


@dataclass(frozen=True)
class Expr:
    op: str
    args: tuple["Expr", ...] = ()
    value: int = 0
    exponent: Fraction = field(default=Fraction(1))

    def __post_init__(self) -> None:
        if self.op not in OPS:
            raise ValueError(f"unknown radical op {self.op!r}")

    def evaluate(self) -> mpf:
        """Numeric value at the current mpmath precision, principal real branches only."""
        op = self.op
        if op == "int":
            return mpf(self.value)
        vals = [a.evaluate() for a in self.args]
        if op == "add":
            return mp.fsum(vals)
        if op == "sub":
            return vals[0] - vals[1]
        if op == "mul":
            return mp.fprod(vals)
        if op == "div":
            return vals[0] / vals[1]
        if op == "neg":
            return -vals[0]
        if op == "sqrt":
            if vals[0] < 0:
                raise DomainError("square root of a negative quantity")
            return mp.sqrt(vals[0])
        # pow
        base, e = vals[0], self.exponent
        if e.denominator == 1:
            return base ** e.numerator
        if base <= 0:
            raise DomainError("fractional power of a non-positive quantity")
        return mp.root(base, e.denominator) ** e.numerator

    def to_json(self) -> dict[str, Any]:
        if self.op == "int":
            return {"op": "int", "value": self.value}
        out: dict[str, Any] = {"op": self.op, "args": [a.to_json() for a in self.args]}
        if self.op == "pow":
            out["exp"] = [self.exponent.numerator, self.exponent.denominator]
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Expr":
        op = data["op"]
        if op == "int":
            return cls("int", value=int(data["value"]))
        args = tuple(cls.from_json(a) for a in data["args"])
        if op == "pow":
            p, q = data["exp"]
            return cls("pow", args, exponent=Fraction(p, q))
        return cls(op, args)

    def __str__(self) -> str:
        op = self.op
        if op == "int":
            return str(self.value)
        a = [str(x) for x in self.args]
        if op == "add":
            return "(" + " + ".join(a) + ")"
        if op == "sub":
            return f"({a[0]} - {a[1]})"
        if op == "sqrt":
            return f"sqrt({a[0]})"
        # products, quotients and powers parenthesize anything that is not atomic
        w = [x if arg._atomic() else f"({x})" for x, arg in zip(a, self.args)]
        if op == "mul":
            return "*".join(w)
        if op == "div":
            return f"{w[0]}/{w[1]}"
        if op == "neg":
            return f"-{w[0]}"
        e = self.exponent
        return f"{w[0]}**({e})" if e.denominator != 1 else f"{w[0]}**{e}"

    def _atomic(self) -> bool:
        return (self.op == "int" and self.value >= 0) or self.op in ("sqrt", "add", "sub")


def _rational_exponent(node: ast.AST) -> Fraction:
    """Exponents must be literal rationals such as 3, (1/8) or -1/8."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_rational_exponent(node.operand)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        return _rational_exponent(node.left) / _rational_exponent(node.right)
    raise ValueError(f"exponent must be a rational literal: {ast.dump(node)}")


def _convert(node: ast.AST) -> Expr:
    if isinstance(node, ast.Expression):
        return _convert(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Expr("int", value=node.value)
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return Expr("neg", (_convert(node.operand),))
        if isinstance(node.op, ast.UAdd):
            return _convert(node.operand)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return Expr("pow", (_convert(node.left),), exponent=_rational_exponent(node.right))
        ops = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}
        op = ops.get(type(node.op))
        if op is not None:
            return Expr(op, (_convert(node.left), _convert(node.right)))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        if name == "sqrt" and len(node.args) == 1:
            return Expr("sqrt", (_convert(node.args[0]),))
        if name == "root" and len(node.args) == 2:
            k = _rational_exponent(node.args[1])
            return Expr("pow", (_convert(node.args[0]),), exponent=1 / k)
    raise ValueError(f"unsupported syntax in radical expression: {ast.dump(node)}")


def parse(text: str) -> Expr:
    """Parse an infix radical expression (``+ - * / **``, ``sqrt``, ``root(x, n)``)."""
    return _convert(ast.parse(text.replace("^", "**"), mode="eval"))


def evaluate(expr: Expr | str, digits: int) -> mpf:
    """Evaluate at ``digits`` decimal digits."""
    if isinstance(expr, str):
        expr = parse(expr)
    with mp.workdps(digits):
        return expr.evaluate()
