"""Singular values of modular functions: lambda*, lambda, Klein's J, and Ramanujan's G_n, g_n.

All quantities handled here are positive reals on principal branches; composite
formulas assert positivity after each step.
"""

from __future__ import annotations

from typing import Optional, Union

from mpmath import mp, mpf

from .precision import TERM_CAP, ConvergenceError, DomainError, PrecisionCtx, Real, SingularityError, SurdArg
from .qseries import eval_theta2, eval_theta3

Value = Union[Real, mpf, int]


def _ctx_for(x: Value, ctx: Optional[PrecisionCtx]) -> PrecisionCtx:
    if ctx is not None:
        return ctx
    if isinstance(x, Real):
        return PrecisionCtx(digits=max(x.digits, 50))
    return PrecisionCtx(digits=max(mp.dps, 50))


def _val(x: Value) -> mpf:
    return +x.value if isinstance(x, Real) else mpf(x)


def _at_least_one(G: mpf, ctx: PrecisionCtx, what: str) -> mpf:
    """G_n >= 1 for n >= 1; rounding may put G_1 = 1 a few ulps below."""
    if G < 1 - mpf(10) ** (-ctx.digits):
        raise DomainError(f"{what} needs G_n >= 1")
    return max(G, mpf(1))


def _positive(v: mpf, what: str) -> mpf:
    if not v > 0:
        raise DomainError(f"{what} must be a positive real, got {mp.nstr(v, 10)}")
    return v


def lambda_star(r: SurdArg, ctx: PrecisionCtx) -> Real:
    """Elliptic singular value theta_2^2 / theta_3^2 at q = exp(-pi*sqrt(r))."""
    with ctx.working():
        t2 = eval_theta2(r, ctx).value
        t3 = eval_theta3(r, ctx).value
        v = (t2 / t3) ** 2
        if not 0 < v < 1:
            raise DomainError(f"lambda*({r}) left (0, 1)")
        return Real(v, ctx.digits)


def lambda_of_tau(r: SurdArg, ctx: PrecisionCtx) -> Real:
    """Modular lambda at tau = i*sqrt(r): theta_2^4 / theta_3^4 at nome exp(-pi*sqrt(r))."""
    with ctx.working():
        t2 = eval_theta2(r, ctx).value
        t3 = eval_theta3(r, ctx).value
        return Real((t2 / t3) ** 4, ctx.digits)


def klein_J_from_lambda(lam: mpf) -> mpf:
    """J = (4/27) (1 - lam + lam^2)^3 / (lam^2 (1 - lam)^2)."""
    if lam == 0 or lam == 1:
        raise SingularityError("Klein's J is singular at lambda in {0, 1}")
    return mpf(4) / 27 * (1 - lam + lam**2) ** 3 / (lam**2 * (1 - lam) ** 2)


def klein_J(r: SurdArg, ctx: PrecisionCtx) -> Real:
    with ctx.working():
        lam = lambda_of_tau(r, ctx).value
        assert 0 < lam < 1
        return Real(klein_J_from_lambda(lam), ctx.digits)


def icosahedral_J1728(rval: mpf) -> mpf:
    """Right side of the icosahedral equation: 1728 J expressed through r = R(q)."""
    r5 = rval**5
    num = (r5**4 - 228 * r5**3 + 494 * r5**2 + 228 * r5 + 1) ** 3
    den = r5 * (r5**2 + 11 * r5 - 1) ** 5
    if den == 0:
        raise SingularityError("icosahedral form has a pole at this r")
    return -num / den


def _class_product(n: SurdArg, ctx: PrecisionCtx, sign: int) -> Real:
    with ctx.working():
        q = n.nome(ctx)
        # |log of omitted tail| <= 2 q^K / (1-q)^2, K the first omitted odd exponent
        target = (mp.log(ctx.eps) - mp.log(2 / (1 - q) ** 2)) / mp.log(q)
        count = max(int(mp.ceil((target - 1) / 2)), 1)
        if count > TERM_CAP:
            raise ConvergenceError(f"class invariant product at n={n}: {count} factors needed")
        prod = mpf(1)
        t = q
        q2 = q * q
        for _ in range(count):
            prod *= 1 + sign * t
            t *= q2
        pref = mp.exp(mp.pi * mp.sqrt(mpf(n.num) / n.den) / 24) / mp.root(2, 4)
        return Real(_positive(pref * prod, "class invariant"), ctx.digits)


def ramanujan_G(n: SurdArg, ctx: PrecisionCtx) -> Real:
    """G_n = 2^(-1/4) e^(pi sqrt(n)/24) prod_{j>=0} (1 + e^(-(2j+1) pi sqrt(n)))."""
    return _class_product(n, ctx, +1)


def ramanujan_g(n: SurdArg, ctx: PrecisionCtx) -> Real:
    """g_n = 2^(-1/4) e^(pi sqrt(n)/24) prod_{j>=0} (1 - e^(-(2j+1) pi sqrt(n)))."""
    return _class_product(n, ctx, -1)


def lambda_star_from_G(Gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    ctx = _ctx_for(Gn, ctx)
    with ctx.working():
        G = _at_least_one(_val(Gn), ctx, "lambda* from G_n")
        u = G ** -12
        return Real(_positive((mp.sqrt(1 + u) - mp.sqrt(1 - u)) / 2, "lambda*"), ctx.digits)


def lambda_star_from_g(gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    ctx = _ctx_for(gn, ctx)
    with ctx.working():
        g = _positive(_val(gn), "g_n")
        g6 = g**6
        # g^6 (sqrt(g^12 + g^-12) - g^6), rewritten without cancellation
        v = 1 / (g6 * (mp.sqrt(g6**2 + g6**-2) + g6))
        return Real(_positive(v, "lambda*"), ctx.digits)


def G_from_g(gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """G_n = ((g^8 + sqrt(g^8 (1 + g^24)) / g^8) / 2)^(1/8)."""
    ctx = _ctx_for(gn, ctx)
    with ctx.working():
        g = _positive(_val(gn), "g_n")
        g8 = g**8
        inner = (g8 + mp.sqrt(g8 * (1 + g**24)) / g8) / 2
        return Real(_positive(mp.root(inner, 8), "G_n"), ctx.digits)


def g_of_4n(gn: Value, Gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """g_{4n} = 2^(1/4) g_n G_n."""
    ctx = _ctx_for(gn, ctx)
    with ctx.working():
        v = mp.root(2, 4) * _positive(_val(gn), "g_n") * _positive(_val(Gn), "G_n")
        return Real(v, ctx.digits)


def chain_constant(Gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """C_n = 4 G^8 (G^8 + sqrt(G^16 - G^-8)), the auxiliary quantity of the G_n -> G_4n step."""
    ctx = _ctx_for(Gn, ctx)
    with ctx.working():
        G8 = _at_least_one(_val(Gn), ctx, "chain constant") ** 8
        disc = G8**2 - 1 / G8
        return Real(_positive(4 * G8 * (G8 + mp.sqrt(disc)), "C_n"), ctx.digits)


def G_4n_from_G(Gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """G_{4n} = (C + sqrt(C^3 + 8) / sqrt(C))^(1/8) / 2^(1/4) with C = chain_constant(G_n)."""
    ctx = _ctx_for(Gn, ctx)
    with ctx.working():
        C = chain_constant(Gn, ctx).value
        inner = C + mp.sqrt(C**3 + 8) / mp.sqrt(C)
        return Real(_positive(mp.root(inner, 8) / mp.root(2, 4), "G_4n"), ctx.digits)


def G_from_lambda_star(L: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """G_n = 2^(-1/12) (L^2 - L^4)^(-1/24) for L = lambda*(n)."""
    ctx = _ctx_for(L, ctx)
    with ctx.working():
        x = _val(L)
        if not 0 < x < 1:
            raise DomainError("lambda* must lie in (0, 1)")
        return Real(mp.root(2, 12) ** -1 * mp.root(x**2 - x**4, 24) ** -1, ctx.digits)


def alpha_from_G(Gn: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """(1 - sqrt(G^24 - 1) / G^12) / 2, the branch in (0, 1/2).

    Evaluated as G^-24 / (2 (1 + sqrt(1 - G^-24))) to avoid cancellation when G is large.
    """
    ctx = _ctx_for(Gn, ctx)
    with ctx.working():
        G = _at_least_one(_val(Gn), ctx, "alpha from G_n")
        u = G**-24
        v = u / (2 * (1 + mp.sqrt(1 - u)))
        return Real(_positive(v, "alpha"), ctx.digits)


def lambda_star_quarter(L: Value, ctx: Optional[PrecisionCtx] = None) -> Real:
    """lambda*(n/4) from lambda*(n), via g_n = 2^(1/4) g_{n/4} G_{n/4}.

    With C = (1/L - L)^2 / 16 the result is sqrt((sqrt(4C + 1) - 1) / (2C)).
    """
    ctx = _ctx_for(L, ctx)
    with ctx.working():
        x = _val(L)
        if not 0 < x < 1:
            raise DomainError("lambda* must lie in (0, 1)")
        C = (1 / x - x) ** 2 / 16
        lam = 2 / (mp.sqrt(4 * C + 1) + 1)  # (sqrt(4C+1) - 1) / (2C), stable
        return Real(_positive(mp.sqrt(lam), "lambda*"), ctx.digits)
