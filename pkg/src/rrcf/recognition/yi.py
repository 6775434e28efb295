"""Discovery pipeline built on Yi's formula for R^5.

With q = exp(-2 pi sqrt(n/5)) and s_n = f(-q)^6 / (5 sqrt(5) q f(-q^5)^6),
R^5(q) = sqrt(a^2 + 1) - a where 2a = 5 sqrt(5) s_n + 11. Recognizing s_n (or a)
as an algebraic number therefore yields a closed form for R(q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Optional, Sequence

from mpmath import mp
from sympy import primefactors

from ..precision import PrecisionCtx, Real, SurdArg
from ..qseries import eval_f_neg_q
from .field import FieldElement, basis_from_primes, recognize_in_field, squarefree_decompose
from .minpoly import AlgebraicCandidate, recognize_minpoly


def yi_nome_arg(n: SurdArg) -> SurdArg:
    """exp(-2 pi sqrt(n/5)) = exp(-pi sqrt(4n/5))."""
    return n.scaled(Fraction(4, 5))


def yi_n_for(r: SurdArg) -> SurdArg:
    """Yi's n for the point q = exp(-pi sqrt(r))."""
    return r.scaled(Fraction(5, 4))


def yi_s(n: SurdArg, ctx: PrecisionCtx) -> Real:
    """s_n = f(-q)^6 / (5 sqrt(5) q f(-q^5)^6) at q = exp(-2 pi sqrt(n/5))."""
    with ctx.working():
        q = yi_nome_arg(n).nome(ctx)
        f1 = eval_f_neg_q(q, ctx).value
        f5 = eval_f_neg_q(q**5, ctx).value
        return Real(f1**6 / (5 * mp.sqrt(5) * q * f5**6), ctx.digits)


def yi_a(n: SurdArg, ctx: PrecisionCtx) -> Real:
    """a = (5 sqrt(5) s_n + 11) / 2."""
    with ctx.working():
        return Real((5 * mp.sqrt(5) * yi_s(n, ctx).value + 11) / 2, ctx.digits)


@dataclass(frozen=True)
class NestedSurd:
    """A + B sqrt(5) + k sqrt(sf * (E + F sqrt(5))), the shape Yi's s-values take."""

    A: Fraction
    B: Fraction
    k: Fraction
    sf: int
    E: int
    F: int

    def __str__(self) -> str:
        head = FieldElement.from_mapping({1: self.A, 5: self.B})
        inner = str(FieldElement.from_mapping({1: self.E, 5: self.F}))
        rad = f"sqrt({self.sf}*({inner}))" if self.sf != 1 else f"sqrt({inner})"
        mag = abs(self.k)
        coef = "" if mag == 1 else f"{mag}*"
        sign = "-" if self.k < 0 else "+"
        return f"{head} {sign} {coef}{rad}"

    def to_json(self) -> dict[str, Any]:
        return {"text": str(self), "A": str(self.A), "B": str(self.B), "k": str(self.k),
                "sf": self.sf, "E": self.E, "F": self.F}


def nested_form(s: FieldElement, ctx: PrecisionCtx) -> Optional[NestedSurd]:
    """Rewrite s in Q(sqrt5, sqrt t) as A + B sqrt5 + k sqrt(sf (E + F sqrt5)).

    Returns None when s does not live in a field of that shape.
    """
    terms = s.as_mapping()
    rest = {b: c for b, c in terms.items() if b not in (1, 5)}
    if not rest:
        return None
    ts = {b // 5 if b % 5 == 0 else b for b in rest}
    if len(ts) != 1:
        return None
    t = ts.pop()
    u = rest.get(t, Fraction(0))
    v = rest.get(5 * t, Fraction(0))
    # (u sqrt t + v sqrt(5t))^2 = t (u^2 + 5 v^2 + 2 u v sqrt5)
    e0, f0 = u * u + 5 * v * v, 2 * u * v
    m = lcm(e0.denominator, f0.denominator)
    e1, f1 = int(e0 * m), int(f0 * m)
    g = gcd(e1, f1)
    e1, f1 = e1 // g, f1 // g
    # tail^2 = t g (e1 + f1 sqrt5) / m = t g m (e1 + f1 sqrt5) / m^2
    k, sf = squarefree_decompose(t * g * m)
    with ctx.working():
        tail = FieldElement.from_mapping(rest).evaluate(ctx).value
    sign = 1 if tail > 0 else -1
    return NestedSurd(terms.get(1, Fraction(0)), terms.get(5, Fraction(0)), Fraction(sign * k, m), sf, e1, f1)


def default_basis(n: SurdArg) -> tuple[int, ...]:
    """Square-root basis generated by 5 and the primes of the point r = 4n/5."""
    r = yi_nome_arg(n)
    return basis_from_primes(set(primefactors(r.num * r.den)) | {5})


@dataclass
class YiRecognition:
    n: SurdArg
    digits: int
    s: Real
    a: Real
    s_minpoly: Optional[AlgebraicCandidate] = None
    s_field: Optional[FieldElement] = None
    a_field: Optional[FieldElement] = None
    s_nested: Optional[NestedSurd] = None
    basis: tuple[int, ...] = field(default=())

    @property
    def recognized(self) -> bool:
        return self.a_field is not None or self.s_minpoly is not None

    @property
    def r(self) -> SurdArg:
        return yi_nome_arg(self.n)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": str(self.n),
            "r": str(self.r),
            "digits": self.digits,
            "recognized": self.recognized,
            "s": self.s.nstr(40),
            "a": self.a.nstr(40),
            "s_minpoly": self.s_minpoly.to_json() if self.s_minpoly else None,
            "s_field": str(self.s_field) if self.s_field else None,
            "a_field": str(self.a_field) if self.a_field else None,
            "s_nested": str(self.s_nested) if self.s_nested else None,
            "basis": list(self.basis),
        }


def yi_recognize(
    n: SurdArg,
    ctx: PrecisionCtx,
    basis: Optional[Sequence[int]] = None,
    degree_max: int = 8,
) -> YiRecognition:
    """Compute s_n and try to recognize s_n and a as algebraic numbers.

    An unrecognized value is a normal outcome, reported through ``recognized``.
    """
    basis = tuple(basis) if basis is not None else default_basis(n)
    s = yi_s(n, ctx)
    a = yi_a(n, ctx)
    out = YiRecognition(n=n, digits=ctx.digits, s=s, a=a, basis=basis)
    out.s_minpoly = recognize_minpoly(lambda c: yi_s(n, c), degree_max, ctx)
    sf = recognize_in_field(lambda c: yi_s(n, c), basis, ctx)
    af = recognize_in_field(lambda c: yi_a(n, c), basis, ctx)
    out.s_field = sf.trimmed() if sf is not None else None
    out.a_field = af.trimmed() if af is not None else None
    if out.s_field is not None:
        out.s_nested = nested_form(out.s_field, ctx)
    return out
