"""Closed forms and minimal polynomials used by the theorem pipelines.

Closed forms are radical trees, evaluated on demand at the caller's precision.
Polynomials store integer coefficients in ascending order (index i holds the
coefficient of x^i).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from mpmath import mp, mpf

from .precision import PrecisionCtx, Real, SurdArg
from .radicals import Expr, parse

CATALOG_VERSION = 1

# kind -> what the expression is compared against
KINDS = ("G", "g", "R", "R5", "yi_s")


@dataclass(frozen=True)
class ClosedFormEntry:
    name: str
    kind: str
    arg: SurdArg
    expression: Expr
    citation: str
    status: str = "proved"
    printed_expression: Optional[str] = None

    def evaluate(self, ctx: PrecisionCtx) -> Real:
        with ctx.working():
            return Real(self.expression.evaluate(), ctx.digits)

    def reference_value(self, ctx: PrecisionCtx) -> Real:
        """The value of the named quantity from its defining product or series."""
        from . import invariants, qseries
        from .recognition.yi import yi_s

        if self.kind == "G":
            return invariants.ramanujan_G(self.arg, ctx)
        if self.kind == "g":
            return invariants.ramanujan_g(self.arg, ctx)
        if self.kind == "R":
            return qseries.eval_R_product(self.arg, ctx)
        if self.kind == "R5":
            with ctx.working():
                return Real(qseries.eval_R_product(self.arg, ctx).value ** 5, ctx.digits)
        if self.kind == "yi_s":
            return yi_s(self.arg, ctx)
        raise ValueError(f"unknown closed-form kind {self.kind!r}")

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind,
            "n": [self.arg.num, self.arg.den],
            "expression": self.expression.to_json(),
            "citation": self.citation,
            "status": self.status,
        }
        if self.printed_expression is not None:
            out["printed_expression"] = self.printed_expression
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ClosedFormEntry":
        return cls(
            name=data["name"],
            kind=data["kind"],
            arg=SurdArg(*data["n"]),
            expression=Expr.from_json(data["expression"]),
            citation=data["citation"],
            status=data.get("status", "proved"),
            printed_expression=data.get("printed_expression"),
        )


@dataclass(frozen=True)
class KnownPolynomial:
    name: str
    coeffs: tuple[int, ...]
    cas_index: int  # 1-based, real roots ascending (the ordering the source uses)
    citation: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: mpf) -> mpf:
        return mp.polyval(list(reversed(self.coeffs)), x)


# a-values for R^5 = sqrt(a^2 + 1) - a
A_VALUES = {
    "thm2_26_5": "208818 - 93240*sqrt(5) - 57825*sqrt(13) + 25900*sqrt(65)",
    "thm3_38_5": "4165218 + 2945250*sqrt(2) - 1862095*sqrt(5) - 1316700*sqrt(10)",
    "thm4_48_5": "2118 + 1885*sqrt(5)/2 + 4875*sqrt(3)/4 + 2175*sqrt(15)/4",
    "conj_16_15": "(8472 + 4875*sqrt(3) - 3770*sqrt(5) - 2175*sqrt(15))/4",
}

_A_8PI = "(1 + sqrt(5)*(3 + sqrt(2) + sqrt(2)*root(5, 4) - sqrt(5))/(3 + sqrt(2) - sqrt(2)*root(5, 4) - sqrt(5)))/2"

_G130 = (
    "((161 + 72*sqrt(5))*(119 + 33*sqrt(13)) + 6*sqrt(40779771 + 18236316*sqrt(5)"
    " + 11309683*sqrt(13) + 5058108*sqrt(65)))**(1/8)/2**(1/4)"
)
_A190 = "(((1 + sqrt(5))**12*(3 + sqrt(10))**4)/4096)"
_G190 = f"(2/({_A190} + sqrt(1/{_A190} + ({_A190})**2)))**(-1/8)"


def _yi_form(a: str) -> str:
    return f"sqrt(({a})**2 + 1) - ({a})"


def _entries() -> list[ClosedFormEntry]:
    E = ClosedFormEntry
    return [
        E("g_130", "g", SurdArg(130), parse("((sqrt(5) + 1)/2)**(3/2)*((sqrt(13) + 3)/2)**(1/2)"),
          "Berndt, Ramanujan's Notebooks Part V, p. 203"),
        E("G_130", "G", SurdArg(130), parse(_G130), "G_n from g_n applied to g_130"),
        E("g_190", "g", SurdArg(190), parse("((1 + sqrt(5))/2)**(3/2)*(3 + sqrt(10))**(1/2)"),
          "Berndt, Ramanujan's Notebooks Part V, p. 203"),
        E("G_190", "G", SurdArg(190), parse(_G190), "G_n from g_n applied to g_190"),
        E("G_15", "G", SurdArg(15), parse("2**(1/4)*((1 + sqrt(5))/2)**(1/3)"),
          "Berndt, Ramanujan's Notebooks Part V, p. 190",
          printed_expression="2**(1/4)*((1 + sqrt(5))/2)**(1/5)"),
        E("R_exp_-2pi", "R", SurdArg(4), parse("sqrt((5 + sqrt(5))/2) - (sqrt(5) + 1)/2"),
          "Ramanujan's first letter to Hardy"),
        E("R_exp_-2pi_sqrt5", "R", SurdArg(20),
          parse("sqrt(5)/(1 + (5**(3/4)*((sqrt(5) - 1)/2)**(5/2) - 1)**(1/5)) - (sqrt(5) + 1)/2"),
          "Ramanujan's second letter to Hardy"),
        E("R_exp_-8pi", "R", SurdArg(64), parse(_yi_form(_A_8PI)), "Berndt and Chan (1995)"),
        E("R5_26_5", "R5", SurdArg(26, 5), parse(_yi_form(A_VALUES["thm2_26_5"])), "new evaluation, r = 26/5"),
        E("R5_38_5", "R5", SurdArg(38, 5), parse(_yi_form(A_VALUES["thm3_38_5"])), "new evaluation, r = 38/5"),
        E("R5_48_5", "R5", SurdArg(48, 5), parse(_yi_form(A_VALUES["thm4_48_5"])), "new evaluation, r = 48/5"),
        E("R5_16_15", "R5", SurdArg(16, 15), parse(_yi_form(A_VALUES["conj_16_15"])),
          "conjectured evaluation, r = 16/15", status="conjectural"),
        E("s_13_2", "yi_s", SurdArg(13, 2),
          parse("-37296 + 16705*sqrt(5) + 2*sqrt(65*(10716449 - 4792536*sqrt(5)))"),
          "Yi's s_n at n = 13/2, recognized experimentally"),
    ]


CATALOG: dict[str, ClosedFormEntry] = {e.name: e for e in _entries()}


POLYNOMIALS: dict[str, KnownPolynomial] = {
    p.name: p
    for p in [
        KnownPolynomial(
            "lambda_star_26_5",
            (1, -14999688, 140280340, -14999688, -280560666, 14999688, 140280340, 14999688, 1),
            6, "minimal polynomial of lambda*(26/5)",
        ),
        KnownPolynomial(
            "lambda_star_38_5",
            (1, -632783448, 12127295380, -632783448, -24254590746, 632783448, 12127295380, 632783448, 1),
            6, "minimal polynomial of lambda*(38/5)",
        ),
        KnownPolynomial(
            "lambda_star_48_5",
            (1, -9254518800, 7997750214776, -238623871222320, -395374840051940, 722354076987120,
             1549442293997384, -413352207084720, -2183392919932346, -413352207084720,
             1549442293997384, 722354076987120, -395374840051940, -238623871222320,
             7997750214776, -9254518800, 1),
            3, "minimal polynomial of lambda*(48/5)",
        ),
        KnownPolynomial(
            "alpha_240",
            (1, -85646102224053010448, 59547310292447325609394296, -63252200262236651831473406512,
             525839570761535689444949755676, -1979219931663657931544660611344,
             4551988046736278352673918558024, -7226577193130665396845546777776,
             8382324320686645930076221747782, -7226577193130665396845546777776,
             4551988046736278352673918558024, -1979219931663657931544660611344,
             525839570761535689444949755676, -63252200262236651831473406512,
             59547310292447325609394296, -85646102224053010448, 1),
            1, "minimal polynomial of alpha = lambda*(240)^2 built from the G_15 -> G_240 chain",
        ),
    ]
}


def catalog_json(entries: Optional[list[ClosedFormEntry]] = None) -> dict[str, Any]:
    entries = list(CATALOG.values()) if entries is None else entries
    return {"version": CATALOG_VERSION, "entries": [e.to_json() for e in entries]}


def dump_catalog(path: Path | str) -> None:
    Path(path).write_text(json.dumps(catalog_json(), indent=2) + "\n", encoding="utf-8")


def load_catalog(path: Path | str) -> dict[str, ClosedFormEntry]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("version") != CATALOG_VERSION:
        raise ValueError(f"unsupported catalog version {data.get('version')!r}")
    return {e["name"]: ClosedFormEntry.from_json(e) for e in data["entries"]}
