"""Real root isolation (Sturm sequences over Q) and high-precision refinement.

Roots are numbered 1, 2, ... in ascending order. For a polynomial whose
relevant roots are real this agrees with the common CAS convention of listing
real roots first, in increasing order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from mpmath import mp, mpf

from ..precision import MismatchError, PrecisionCtx, Real

Poly = tuple[Fraction, ...]  # ascending coefficients


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _trim(a) if a else [Fraction(0)]


def _derivative(p: Sequence[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while any(b):
        a, b = b, _rem(a, b)
    return a


def _div(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = list(a)
    db = len(b) - 1
    out = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and any(a):
        f = a[-1] / b[-1]
        shift = len(a) - 1 - db
        out[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return out


def squarefree_part(coeffs: Sequence[int]) -> Poly:
    p = _trim([Fraction(c) for c in coeffs])
    g = _gcd(p, _derivative(p))
    if len(g) > 1:
        p = _div(p, g)
    return tuple(p)


@lru_cache(maxsize=256)
def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    seq = [list(p), _derivative(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _rem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return tuple(tuple(s) for s in seq)


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_changes(seq: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _root_bound(p: Poly) -> Fraction:
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p[:-1]) / lead if len(p) > 1 else Fraction(1)


@lru_cache(maxsize=256)
def isolate_real_roots(p: Poly) -> tuple[tuple[Fraction, Fraction], ...]:
    """Disjoint intervals (lo, hi], each holding exactly one real root, ascending.

    ``p`` must be squarefree; use :func:`squarefree_part` first.
    """
    if len(p) <= 1:
        return ()
    seq = sturm_sequence(p)
    bound = _root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _sign_changes(seq, -bound), _sign_changes(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _eval(p, mid) == 0:
            # nudge off an exact rational root so it stays interior to one half
            mid = lo + (hi - lo) * Fraction(1021, 2048)
        vmid = _sign_changes(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    out.sort()
    return tuple(out)


def _shrink(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect (lo, hi] on the sign of p until the width is small relative to the root."""
    if _eval(p, hi) == 0:
        return hi, hi
    s_hi = _eval(p, hi) > 0
    for _ in range(4000):
        mid = (lo + hi) / 2
        scale = max(abs(lo), abs(hi))
        if hi - lo <= scale * Fraction(1, 2**64) or hi - lo == 0:
            break
        v = _eval(p, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def refine_root(p: Poly, interval: tuple[Fraction, Fraction], ctx: PrecisionCtx) -> Real:
    """Safeguarded Newton iteration inside an isolating interval, to working precision."""
    lo_q, hi_q = _shrink(p, *interval)
    with ctx.working():
        if lo_q == hi_q:
            return Real(mpf(lo_q.numerator) / lo_q.denominator, ctx.digits)
        desc = [mpf(c.numerator) / c.denominator for c in reversed(p)]
        lo = mpf(lo_q.numerator) / lo_q.denominator
        hi = mpf(hi_q.numerator) / hi_q.denominator
        f_lo = mp.polyval(desc, lo)
        x = (lo + hi) / 2
        tol = mpf(10) ** (-ctx.working_digits)
        for _ in range(20 * ctx.working_digits):
            fx, dfx = mp.polyval(desc, x, derivative=True)
            if fx == 0:
                break
            if (fx > 0) == (f_lo > 0):
                lo, f_lo = x, fx
            else:
                hi = x
            step = fx / dfx if dfx != 0 else mpf(0)
            nxt = x - step
            if dfx == 0 or not lo < nxt < hi:
                nxt = (lo + hi) / 2
            done = abs(nxt - x) <= tol * abs(nxt)
            x = nxt
            if done:
                break
        return Real(x, ctx.digits)


def real_roots(coeffs: Sequence[int], ctx: PrecisionCtx) -> list[Real]:
    """All real roots of an integer polynomial (ascending coefficients), ascending, refined."""
    p = squarefree_part(coeffs)
    return [refine_root(p, iv, ctx) for iv in isolate_real_roots(p)]


def designated_root(coeffs: Sequence[int], index: int, ctx: PrecisionCtx) -> Real:
    """The ``index``-th real root (1-based, ascending)."""
    p = squarefree_part(coeffs)
    ivs = isolate_real_roots(p)
    if not 1 <= index <= len(ivs):
        raise MismatchError(f"polynomial has {len(ivs)} real roots, no root number {index}")
    return refine_root(p, ivs[index - 1], ctx)


def select_root(
    poly: Union[Sequence[int], "object"], target: Union[Real, mpf], ctx: PrecisionCtx
) -> tuple[int, Real]:
    """Ascending index (1-based) of the real root nearest ``target``, and that root refined.

    ``poly`` is an integer coefficient sequence (ascending) or anything with a
    ``coeffs`` attribute. Raises :class:`MismatchError` if the nearest real root is
    farther than 10^-guard (relative to max(1, |target|)).
    """
    coeffs = getattr(poly, "coeffs", poly)
    p = squarefree_part(coeffs)
    ivs = isolate_real_roots(p)
    with ctx.working():
        t = target.value if isinstance(target, Real) else mpf(target)
        if not ivs:
            raise MismatchError("polynomial has no real roots")
        # Coarse pass: interval midpoints (after a cheap shrink) locate the nearest root.
        coarse = []
        for lo, hi in ivs:
            a, b = _shrink(p, lo, hi)
            m = (a + b) / 2
            coarse.append(abs(mpf(m.numerator) / m.denominator - t))
        idx = min(range(len(ivs)), key=coarse.__getitem__)
        root = refine_root(p, ivs[idx], ctx)
        if abs(root.value - t) > mpf(10) ** (-ctx.guard) * max(mpf(1), abs(t)):
            raise MismatchError(f"no real root within 1e-{ctx.guard} of target")
        return idx + 1, root
