"""Recognition of reals as rational combinations of square roots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Any, Iterable, Optional, Sequence

from mpmath import mp, mpf
from sympy import factorint

from ..precision import DomainError, PrecisionCtx, PreconditionError, Real, Source, can_escalate, resolve
from ..radicals import Expr, parse
from .lattice import integer_relations


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorint(n).values())


def squarefree_decompose(n: int) -> tuple[int, int]:
    """n = k^2 * s with s squarefree; returns (k, s)."""
    k, s = 1, 1
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    return k, s


def basis_from_primes(primes: Iterable[int]) -> tuple[int, ...]:
    """All squarefree products of ``primes`` (including 1), ascending."""
    ps = sorted(set(primes))
    return tuple(sorted(prod(c) for k in range(len(ps) + 1) for c in combinations(ps, k)))


@dataclass(frozen=True)
class FieldElement:
    """sum_i coeffs[i] * sqrt(basis[i]) with rational coefficients."""

    basis: tuple[int, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.basis) != len(self.coeffs):
            raise ValueError("basis and coeffs differ in length")
        if len(set(self.basis)) != len(self.basis) or not all(is_squarefree(b) for b in self.basis):
            raise DomainError(f"basis must be distinct squarefree positive integers: {self.basis}")

    @classmethod
    def from_mapping(cls, terms: dict[int, Fraction | int]) -> "FieldElement":
        basis = tuple(sorted(terms))
        return cls(basis, tuple(Fraction(terms[b]) for b in basis))

    def as_mapping(self) -> dict[int, Fraction]:
        return {b: c for b, c in zip(self.basis, self.coeffs) if c != 0}

    def trimmed(self) -> "FieldElement":
        return FieldElement.from_mapping(self.as_mapping())

    def evaluate(self, ctx: PrecisionCtx) -> Real:
        with ctx.working():
            v = mp.fsum(mpf(c.numerator) / c.denominator * mp.sqrt(b) for b, c in zip(self.basis, self.coeffs))
            return Real(v, ctx.digits)

    def to_expr(self) -> Expr:
        return parse(str(self) if self.as_mapping() else "0")

    def to_json(self) -> dict[str, Any]:
        return {"basis": list(self.basis), "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FieldElement":
        return cls(tuple(data["basis"]), tuple(Fraction(p, q) for p, q in data["coeffs"]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.as_mapping() == other.as_mapping()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.as_mapping().items())))

    def __str__(self) -> str:
        parts = []
        for b, c in sorted(self.as_mapping().items()):
            mag = abs(c)
            num = str(mag) if b == 1 else ("" if mag == 1 else f"{mag}*") + f"sqrt({b})"
            parts.append(("-" if c < 0 else "+", num))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def recognize_in_field(
    x: Source,
    basis: Sequence[int],
    ctx: PrecisionCtx,
    denom_cap: Optional[int] = None,
) -> Optional[FieldElement]:
    """Find rationals c_i with x = sum c_i sqrt(basis_i), or None.

    The relation m*x + sum n_i sqrt(b_i) = 0 is searched by lattice reduction;
    a hit is re-checked at doubled precision when ``x`` is a callable source.
    """
    basis = tuple(basis)
    if len(set(basis)) != len(basis) or not all(is_squarefree(b) for b in basis):
        raise DomainError(f"basis must be distinct squarefree positive integers: {basis}")
    k = len(basis)
    height_digits = (ctx.digits - 4 * ctx.guard) // (k + 2)
    if height_digits < 1:
        raise PreconditionError(f"{ctx.digits} digits too few for a {k}-element basis")
    cap = 10**height_digits
    denom_cap = cap if denom_cap is None else denom_cap
    if isinstance(x, Real) and x.digits < ctx.digits:
        raise PreconditionError(f"value carries {x.digits} digits, recognition asked for {ctx.digits}")
    xv = resolve(x, ctx)
    with ctx.working():
        roots = [mp.sqrt(b) for b in basis]
        for rel in integer_relations([xv] + roots, ctx.digits - ctx.guard):
            m, ns = rel[0], rel[1:]
            if m == 0 or abs(m) > denom_cap or max(abs(v) for v in rel) > cap:
                continue
            if not _holds(rel, xv, basis, ctx):
                continue
            if can_escalate(x):
                hi = ctx.doubled()
                with hi.working():
                    if not _holds(rel, resolve(x, hi), basis, hi):
                        continue
            return FieldElement(basis, tuple(Fraction(-n, m) for n in ns))
    return None


def _holds(rel: Sequence[int], xv: mpf, basis: Sequence[int], ctx: PrecisionCtx) -> bool:
    total = rel[0] * xv + mp.fsum(n * mp.sqrt(b) for n, b in zip(rel[1:], basis))
    bound = mpf(10) ** (-(ctx.digits - 2 * ctx.guard)) * max(abs(v) for v in rel) * len(rel)
    return abs(total) < bound * max(mpf(1), abs(xv))
