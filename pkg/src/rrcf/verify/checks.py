"""Numeric checks of the identities R satisfies, each returning a certificate."""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf

from ..invariants import klein_J_from_lambda
from ..precision import DomainError, PrecisionCtx, Real, SingularityError, Source, resolve
from ..qseries import NomeLike, as_nome, eval_f_neg_q, eval_R_product
from .certificate import Certificate, certify, combine, relative_gap


def _R(q: mpf, ctx: PrecisionCtx) -> mpf:
    return eval_R_product(q, ctx).value


def _f(q: mpf, ctx: PrecisionCtx) -> mpf:
    return eval_f_neg_q(q, ctx).value


def companion_residuals(q: NomeLike, ctx: PrecisionCtx) -> tuple[mpf, mpf]:
    """Relative residuals of 1/R - 1 - R = f(-q^(1/5)) / (q^(1/5) f(-q^5)) and the R^5 analogue."""
    with ctx.working():
        qv = as_nome(q, ctx)
        R = _R(qv, ctx)
        q15 = mp.root(qv, 5)
        f1, f5 = _f(qv, ctx), _f(qv**5, ctx)
        first = relative_gap(1 / R - 1 - R, _f(q15, ctx) / (q15 * f5))
        R5 = R**5
        second = relative_gap(1 / R5 - 11 - R5, f1**6 / (qv * f5**6))
        return first, second


def recursion_residuals(q: NomeLike, ctx: PrecisionCtx) -> tuple[mpf, mpf, mpf]:
    """Relative residuals of the q -> q^2, q -> q^3 and q -> q^5 modular relations for R."""
    with ctx.working():
        qv = as_nome(q, ctx)
        R = _R(qv, ctx)
        R2, R3, R5 = _R(qv**2, ctx), _R(qv**3, ctx), _R(qv**5, ctx)
        two = relative_gap((R2 - R**2) * (1 + R * R2**2), 2 * R * R2**3)
        three = relative_gap((R3 - R**3) * (1 + R * R3**3), 3 * R**2 * R3**2)
        num = 1 - 2 * R5 + 4 * R5**2 - 3 * R5**3 + R5**4
        den = 1 + 3 * R5 + 4 * R5**2 + 2 * R5**3 + R5**4
        five = relative_gap(R**5, R5 * num / den)
        return two, three, five


def _q_label(q: NomeLike) -> str:
    if isinstance(q, Real):
        return mp.nstr(q.value, 15)
    if isinstance(q, (Fraction, int, str)):
        return str(q)
    if isinstance(q, mpf):
        return mp.nstr(q, 15)
    return f"exp(-pi*sqrt({q}))"


def check_companion(q: NomeLike, ctx: PrecisionCtx) -> Certificate:
    as_nome(q, ctx)
    label = _q_label(q)
    parts = [
        certify("companion_R", lambda c: companion_residuals(q, c)[0], ctx),
        certify("companion_R5", lambda c: companion_residuals(q, c)[1], ctx),
    ]
    cert = combine(f"companion[q={label}]", parts)
    cert.artifacts.insert(0, {"q": label})
    return cert


def check_recursions(q: NomeLike, ctx: PrecisionCtx) -> Certificate:
    as_nome(q, ctx)
    label = _q_label(q)
    parts = [
        certify(f"recursion_q{k}", lambda c, i=i: recursion_residuals(q, c)[i], ctx)
        for i, k in enumerate((2, 3, 5))
    ]
    cert = combine(f"recursions[q={label}]", parts)
    cert.artifacts.insert(0, {"q": label})
    return cert


def order25_residual(alpha: mpf, beta: mpf) -> mpf:
    """|Q + 1/Q + 2 (P - 1/P)| relative to the size of Q + 1/Q."""
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not 0 < v < 1:
            raise DomainError(f"{name} must lie in (0, 1), i.e. {name}(1 - {name}) > 0")
    P = mp.root(16 * alpha * beta * (1 - alpha) * (1 - beta), 12)
    Q = mp.root(beta * (1 - beta) / (alpha * (1 - alpha)), 8)
    lhs = Q + 1 / Q
    return relative_gap(lhs, -2 * (P - 1 / P))


def check_order25(alpha: Source, beta: Source, ctx: PrecisionCtx, claim_id: str = "order25") -> Certificate:
    """Certify the order-25 relation Q + 1/Q = -2 (P - 1/P) for the given alpha, beta."""
    with ctx.working():
        a0, b0 = resolve(alpha, ctx), resolve(beta, ctx)
        order25_residual(a0, b0)  # domain check up front
        if not (a0 < mpf(1) / 2 and b0 < mpf(1) / 2):
            raise DomainError("alpha and beta are taken on the branch in (0, 1/2)")
    def residual(c: PrecisionCtx) -> mpf:
        with c.working():
            return order25_residual(resolve(alpha, c), resolve(beta, c))

    return certify(claim_id, residual, ctx)


def icosahedral_sides(rval: mpf, lam: mpf) -> tuple[mpf, mpf]:
    """Both sides of the icosahedral equation with denominators cleared, lam = lambda(tau).

    (r^20 - 228 r^15 + 494 r^10 + 228 r^5 + 1)^3 lam^2 (1 - lam)^2
        = 256 r^5 (r^10 + 11 r^5 - 1)^5 (lam - lam^2 - 1)^3
    """
    if not 0 < rval < 1:
        raise DomainError("r must lie in (0, 1)")
    if not 0 < lam < 1:
        raise SingularityError("lambda must lie strictly between 0 and 1")
    r5 = rval**5
    lhs = (r5**4 - 228 * r5**3 + 494 * r5**2 + 228 * r5 + 1) ** 3 * lam**2 * (1 - lam) ** 2
    rhs = 256 * r5 * (r5**2 + 11 * r5 - 1) ** 5 * (lam - lam**2 - 1) ** 3
    return lhs, rhs


def check_icosahedral(rval: Source, lam: Source, ctx: PrecisionCtx, claim_id: str = "icosahedral") -> Certificate:
    """Certify that r and lambda(tau) satisfy the icosahedral equation."""
    with ctx.working():
        lhs, rhs = icosahedral_sides(resolve(rval, ctx), resolve(lam, ctx))
        J = klein_J_from_lambda(resolve(lam, ctx))
        sizes = {"lhs": mp.nstr(lhs, 12), "rhs": mp.nstr(rhs, 12), "1728J": mp.nstr(1728 * J, 12)}

    def residual(c: PrecisionCtx) -> mpf:
        with c.working():
            return relative_gap(*icosahedral_sides(resolve(rval, c), resolve(lam, c)))

    return certify(claim_id, residual, ctx, artifacts=[sizes])


def yi_map(s: Source, ctx: PrecisionCtx | None = None) -> Real:
    """R^5 = sqrt(a^2 + 1) - a with 2a = 5 sqrt(5) s + 11."""
    if ctx is None:
        ctx = PrecisionCtx(digits=max(s.digits, 50)) if isinstance(s, Real) else PrecisionCtx()
    with ctx.working():
        a = (5 * mp.sqrt(5) * resolve(s, ctx) + 11) / 2
        return Real(r5_from_a(a), ctx.digits)


def r5_from_a(a: mpf) -> mpf:
    """sqrt(a^2 + 1) - a, without cancellation for large positive a."""
    if a > 0:
        return 1 / (mp.sqrt(a * a + 1) + a)
    return mp.sqrt(a * a + 1) - a
