"""Arbitrary-precision q-series primitives.

Every routine takes its truncation point from an explicit tail inequality,
so the omitted part of the series or product is below 10^-(digits+guard).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

from .precision import TERM_CAP, ConvergenceError, DomainError, PrecisionCtx, Real, SurdArg

NomeLike = Union[SurdArg, Real, mpf, Fraction, int, float, str]


def as_nome(x: NomeLike, ctx: PrecisionCtx) -> mpf:
    """Resolve ``x`` to a nome q in (0, 1) at the working precision of ``ctx``.

    A :class:`SurdArg` r maps to exp(-pi*sqrt(r)); anything else is taken as q itself.
    """
    with ctx.working():
        if isinstance(x, SurdArg):
            q = x.nome(ctx)
        elif isinstance(x, Real):
            q = +x.value
        elif isinstance(x, Fraction):
            q = mpf(x.numerator) / x.denominator
        else:
            q = mpf(x)
        if not 0 < q < 1:
            raise DomainError(f"nome must lie in (0, 1), got {mp.nstr(q, 10)}")
        return q


def _log_threshold(q: mpf, ctx: PrecisionCtx, factor: mpf) -> mpf:
    """Smallest exponent e such that factor * q^e < 10^-(digits+guard), as a real."""
    return (mp.log(ctx.eps) - mp.log(factor)) / mp.log(q)


def _check_cap(n: int, what: str) -> None:
    if n > TERM_CAP:
        raise ConvergenceError(f"{what}: {n} terms needed, cap is {TERM_CAP}")


def pentagonal_cutoff(q: mpf, ctx: PrecisionCtx) -> int:
    """Smallest N with 2 q^(N(3N-1)/2) / (1-q) < 10^-(digits+guard).

    The bound covers both omitted tails n >= N and n <= -N.
    """
    with ctx.working():
        target = _log_threshold(q, ctx, 2 / (1 - q))
        # N(3N-1)/2 >= target
        n = int(mp.ceil((1 + mp.sqrt(1 + 24 * max(target, 0))) / 6))
        _check_cap(n, "pentagonal series")
        while n > 1 and (n - 1) * (3 * (n - 1) - 1) / 2 >= target:
            n -= 1
        while n * (3 * n - 1) / 2 < target:
            n += 1
        return max(n, 1)


def eval_f_neg_q(x: NomeLike, ctx: PrecisionCtx) -> Real:
    """Euler's function f(-q) = (q; q)_inf via the pentagonal number theorem."""
    with ctx.working():
        q = as_nome(x, ctx)
        n_max = pentagonal_cutoff(q, ctx)
        total = mpf(1)
        # a = q^(n(3n-1)/2), b = q^(n(3n+1)/2) = a * q^n
        a = mpf(1)
        qn = mpf(1)
        q3 = q**3
        step = q  # q^(3n-2) for n = 1
        sign = -1
        for _ in range(1, n_max):
            a *= step
            qn *= q
            total += sign * (a + a * qn)
            step *= q3
            sign = -sign
        return Real(total, ctx.digits)


def _gaussian_cutoff(q: mpf, ctx: PrecisionCtx, shift: int) -> int:
    """Smallest N with 2 q^(N(N+shift)) / (1-q) < 10^-(digits+guard)."""
    with ctx.working():
        target = _log_threshold(q, ctx, 2 / (1 - q))
        n = max(int(mp.ceil(mp.sqrt(max(target, 0)))) - 1, 0)
        _check_cap(n, "theta series")
        while n * (n + shift) < target:
            n += 1
        return n


def eval_theta2(x: NomeLike, ctx: PrecisionCtx) -> Real:
    """theta_2(0, q) = 2 q^(1/4) sum_{n>=0} q^(n(n+1))."""
    with ctx.working():
        q = as_nome(x, ctx)
        n_max = _gaussian_cutoff(q, ctx, 1)
        total = mpf(0)
        term = mpf(1)  # q^(n(n+1))
        ratio = q**2  # q^(2(n+1)) for n = 0
        q2 = ratio
        for _ in range(n_max):
            total += term
            term *= ratio
            ratio *= q2
        return Real(2 * mp.root(q, 4) * total, ctx.digits)


def eval_theta3(x: NomeLike, ctx: PrecisionCtx) -> Real:
    """theta_3(0, q) = 1 + 2 sum_{n>=1} q^(n^2)."""
    with ctx.working():
        q = as_nome(x, ctx)
        n_max = _gaussian_cutoff(q, ctx, 0)
        total = mpf(0)
        term = q  # q^(n^2)
        ratio = q**3  # q^(2n+1)
        q2 = q**2
        for _ in range(1, n_max):
            total += term
            term *= ratio
            ratio *= q2
        return Real(1 + 2 * total, ctx.digits)


def rogers_product_cutoff(q: mpf, ctx: PrecisionCtx) -> int:
    """Number of factor groups N so the omitted tail of the Rogers product is negligible.

    For exponents k >= K the tail satisfies |log prod (1 - q^k)^(+-1)| <= q^K / (1-q)^2,
    with K = 5N + 1 the first omitted exponent. We require 4 q^K / (1-q)^2 < eps.
    """
    with ctx.working():
        target = _log_threshold(q, ctx, 4 / (1 - q) ** 2)
        n = max(int(mp.ceil((target - 1) / 5)), 1)
        _check_cap(n, "Rogers product")
        return n


def eval_R_product(x: NomeLike, ctx: PrecisionCtx) -> Real:
    """R(q) = q^(1/5) prod_{n>=1} (1-q^(5n-1))(1-q^(5n-4)) / ((1-q^(5n-2))(1-q^(5n-3)))."""
    with ctx.working():
        q = as_nome(x, ctx)
        n_max = rogers_product_cutoff(q, ctx)
        q5 = q**5
        p1 = q  # q^(5n-4)
        num = mpf(1)
        den = mpf(1)
        for _ in range(n_max):
            p2 = p1 * q
            p3 = p2 * q
            p4 = p3 * q
            num *= (1 - p1) * (1 - p4)
            den *= (1 - p2) * (1 - p3)
            p1 *= q5
        return Real(mp.root(q, 5) * num / den, ctx.digits)


def _cf_tail(q: mpf, depth: int) -> mpf:
    """1 + q/(1 + q^2/(1 + ... + q^depth/1)) by backward recurrence from a unit tail."""
    powers = [mpf(1)] * (depth + 1)
    for k in range(1, depth + 1):
        powers[k] = powers[k - 1] * q
    t = mpf(1)
    for k in range(depth, 0, -1):
        t = 1 + powers[k] / t
    return t


def eval_R_cf(x: NomeLike, ctx: PrecisionCtx) -> Real:
    """R(q) from the continued fraction, doubling depth until two depths agree."""
    with ctx.working():
        q = as_nome(x, ctx)
        tol = mpf(10) ** (-(ctx.digits + ctx.guard // 2))
        depth = 16
        prev = _cf_tail(q, depth)
        while True:
            depth *= 2
            if depth > TERM_CAP:
                raise ConvergenceError(f"continued fraction: depth {depth} exceeds cap {TERM_CAP}")
            cur = _cf_tail(q, depth)
            if abs(cur - prev) < tol * abs(cur):
                break
            prev = cur
        return Real(mp.root(q, 5) / cur, ctx.digits)


def q_power(x: NomeLike, exponent: Union[Fraction, int], ctx: PrecisionCtx) -> Real:
    """q^exponent for a nome-like ``x``; used for q^5, q^(1/5) and friends."""
    with ctx.working():
        q = as_nome(x, ctx)
        e = Fraction(exponent)
        if e.denominator == 1:
            v = q ** e.numerator
        else:
            v = mp.root(q, e.denominator) ** e.numerator
        return Real(v, ctx.digits)
