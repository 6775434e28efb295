"""Minimal-polynomial recognition from a high-precision real."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Optional, Sequence

import flint
from mpmath import mp, mpf

from ..precision import MismatchError, PrecisionCtx, PreconditionError, Real, Source, can_escalate, resolve
from .lattice import integer_relations
from .roots import select_root

PROVISIONAL = "provisional"
ESCALATION_STABLE = "escalation-stable"


@dataclass(frozen=True)
class AlgebraicCandidate:
    """Content-free integer polynomial (ascending coefficients) plus the real root it describes."""

    coeffs: tuple[int, ...]
    root_index: int
    witness: Real
    confidence: str = PROVISIONAL

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coeffs)

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs))

    def to_json(self) -> dict[str, Any]:
        return {
            "coeffs": list(self.coeffs),
            "root_index": self.root_index,
            "witness": self.witness.nstr(min(self.witness.digits, 60)),
            "witness_digits": self.witness.digits,
            "confidence": self.confidence,
        }

    def __str__(self) -> str:
        return poly_str(self.coeffs)


def poly_str(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        body = var if i == 1 else f"{var}^{i}" if i > 1 else ""
        text = body if mag == 1 and body else f"{mag}{'*' if body else ''}{body}"
        terms.append(("-" if c < 0 else "+", text))
    if not terms:
        return "0"
    sign, text = terms[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in terms[1:]:
        out += f" {sign} {text}"
    return out


def normalize(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Strip trailing zeros, remove the content, make the leading coefficient positive."""
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    g = 0
    for v in c:
        g = gcd(g, v)
    if g > 1:
        c = [v // g for v in c]
    if c[-1] < 0:
        c = [-v for v in c]
    return tuple(c)


def is_irreducible(coeffs: Sequence[int]) -> bool:
    """Irreducibility over Q of a content-free integer polynomial (FLINT factorization)."""
    if len(coeffs) <= 2:
        return len(coeffs) == 2
    _, factors = flint.fmpz_poly(list(coeffs)).factor()
    return len(factors) == 1 and factors[0][1] == 1


def residual_bound(coeffs: Sequence[int], ctx: PrecisionCtx) -> mpf:
    """Acceptance threshold 10^-(digits - 2 guard) * max|c| * degree."""
    d = max(len(coeffs) - 1, 1)
    return mpf(10) ** (-(ctx.digits - 2 * ctx.guard)) * max(abs(c) for c in coeffs) * d


def poly_residual(coeffs: Sequence[int], x: mpf) -> mpf:
    return abs(mp.polyval(list(reversed(coeffs)), x))


def default_height_digits(ctx: PrecisionCtx, degree_max: int) -> int:
    return (ctx.digits - 4 * ctx.guard) // (degree_max + 1)


def _precision_of(source: Source, ctx: PrecisionCtx) -> None:
    if isinstance(source, Real) and source.digits < ctx.digits:
        raise PreconditionError(f"value carries {source.digits} digits, recognition asked for {ctx.digits}")


def recognize_minpoly(
    x: Source,
    degree_max: int,
    ctx: PrecisionCtx,
    height_digits: Optional[int] = None,
) -> Optional[AlgebraicCandidate]:
    """Lowest-degree irreducible integer polynomial vanishing at ``x``, or None.

    ``x`` is either a fixed value or a callable ``ctx -> value``; only a callable
    can be re-evaluated at doubled precision, which is what upgrades a result
    to ``escalation-stable``.
    """
    if height_digits is None:
        height_digits = default_height_digits(ctx, degree_max)
    if height_digits < 1 or ctx.digits < degree_max * height_digits + 4 * ctx.guard:
        raise PreconditionError(
            f"{ctx.digits} digits cannot support degree {degree_max} with {height_digits}-digit coefficients"
        )
    _precision_of(x, ctx)
    xv = resolve(x, ctx)
    cap = 10**height_digits
    for d in range(1, degree_max + 1):
        with ctx.working():
            powers = [xv**i for i in range(d + 1)]
            relations = integer_relations(powers, ctx.digits - ctx.guard)
            for rel in relations:
                coeffs = normalize(rel)
                if len(coeffs) - 1 != d or max(abs(c) for c in coeffs) > cap:
                    continue
                if poly_residual(coeffs, xv) >= residual_bound(coeffs, ctx):
                    continue
                if not is_irreducible(coeffs):
                    continue
                cand = _finish(coeffs, x, xv, ctx)
                if cand is not None:
                    return cand
    return None


def _finish(coeffs: tuple[int, ...], source: Source, xv: mpf, ctx: PrecisionCtx) -> Optional[AlgebraicCandidate]:
    try:
        index, root = select_root(coeffs, xv, ctx)
    except MismatchError:
        return None
    with ctx.working():
        if abs(root.value - xv) > mpf(10) ** (-(ctx.digits // 2)) * max(mpf(1), abs(xv)):
            return None
    confidence = PROVISIONAL
    if can_escalate(source):
        hi = ctx.doubled()
        with hi.working():
            x2 = resolve(source, hi)
            if poly_residual(coeffs, x2) >= residual_bound(coeffs, hi):
                return None
        confidence = ESCALATION_STABLE
    return AlgebraicCandidate(coeffs, index, Real(xv, ctx.digits), confidence)
