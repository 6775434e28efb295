"""Two-level numeric certificates.

A claim is a residual function ``ctx -> residual`` that should vanish. It is
evaluated at ``digits`` and at ``2 * digits``; the verdict depends on both
magnitudes and on how fast the residual shrinks between them.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, TextIO, Union

from mpmath import mp, mpf

from ..precision import PrecisionCtx, RRCFError

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
SUPPORTED = "numerically-supported"

VERDICTS = (CERTIFIED, SUPPORTED, REFUTED, INCONCLUSIVE)

ResidualFn = Callable[[PrecisionCtx], mpf]


def _fmt(x: mpf) -> str:
    with mp.workdps(20):
        return mp.nstr(x, 6) if x != 0 else "0"


@dataclass
class Certificate:
    claim_id: str
    digits_lo: int
    digits_hi: int
    residual_lo: mpf
    residual_hi: mpf
    verdict: str
    guard: int = 50
    artifacts: list[Any] = field(default_factory=list)
    wall_time_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict in (CERTIFIED, SUPPORTED)

    def to_json(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "digits_lo": self.digits_lo,
            "digits_hi": self.digits_hi,
            "residual_lo": _fmt(self.residual_lo),
            "residual_hi": _fmt(self.residual_hi),
            "verdict": self.verdict,
            "artifacts": self.artifacts,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Certificate":
        return cls(
            claim_id=data["claim_id"],
            digits_lo=data["digits_lo"],
            digits_hi=data["digits_hi"],
            residual_lo=mpf(data["residual_lo"]),
            residual_hi=mpf(data["residual_hi"]),
            verdict=data["verdict"],
            artifacts=list(data.get("artifacts", [])),
            wall_time_ms=data.get("wall_time_ms", 0),
        )

    def line(self) -> str:
        return (
            f"{self.claim_id:<38} {self.verdict:<22} "
            f"res@{self.digits_lo}={_fmt(self.residual_lo):<12} res@{self.digits_hi}={_fmt(self.residual_hi)}"
        )


def classify(r_lo: mpf, r_hi: mpf, d_lo: int, d_hi: int, guard: int) -> str:
    """Verdict from residuals at two precisions.

    certified: both residuals under 10^-(d - 2 guard) and the residual shrinks by at
    least 10^(d_hi - d_lo - guard); residuals are floored at 10^-(d + guard), the
    noise level of a d-digit evaluation. refuted: both residuals above 10^-guard.
    """
    with mp.workdps(30):
        lo = max(mpf(r_lo), mpf(10) ** (-(d_lo + guard)))
        hi = max(mpf(r_hi), mpf(10) ** (-(d_hi + guard)))
        small_lo = lo < mpf(10) ** (-(d_lo - 2 * guard))
        small_hi = hi < mpf(10) ** (-(d_hi - 2 * guard))
        shrinks = hi <= lo * mpf(10) ** (-(d_hi - d_lo - guard))
        if small_lo and small_hi and shrinks:
            return CERTIFIED
        if lo > mpf(10) ** (-guard) and hi > mpf(10) ** (-guard):
            return REFUTED
        return INCONCLUSIVE


def certify(
    claim_id: str,
    residual: ResidualFn,
    ctx: PrecisionCtx,
    artifacts: Iterable[Any] = (),
    cap: Optional[str] = None,
    retry: bool = True,
) -> Certificate:
    """Evaluate ``residual`` at ctx.digits and 2*ctx.digits and classify.

    An inconclusive first pass is retried once with both precisions doubled.
    ``cap=SUPPORTED`` downgrades a certified verdict to numerically-supported.
    """
    start = time.perf_counter()
    artifacts = list(artifacts)
    lo_ctx, hi_ctx = ctx, ctx.doubled()
    try:
        r_lo = _abs(residual(lo_ctx), lo_ctx)
        r_hi = _abs(residual(hi_ctx), hi_ctx)
        verdict = classify(r_lo, r_hi, lo_ctx.digits, hi_ctx.digits, ctx.guard)
        if verdict == INCONCLUSIVE and retry:
            lo_ctx, hi_ctx = hi_ctx, hi_ctx.doubled()
            r_lo = r_hi
            r_hi = _abs(residual(hi_ctx), hi_ctx)
            verdict = classify(r_lo, r_hi, lo_ctx.digits, hi_ctx.digits, ctx.guard)
    except (RRCFError, ZeroDivisionError, ValueError) as exc:
        r_lo = r_hi = mpf("inf")
        verdict = INCONCLUSIVE
        artifacts.append({"error": f"{type(exc).__name__}: {exc}"})
    if cap == SUPPORTED and verdict == CERTIFIED:
        verdict = SUPPORTED
    return Certificate(
        claim_id=claim_id,
        digits_lo=lo_ctx.digits,
        digits_hi=hi_ctx.digits,
        residual_lo=r_lo,
        residual_hi=r_hi,
        verdict=verdict,
        guard=ctx.guard,
        artifacts=artifacts,
        wall_time_ms=int((time.perf_counter() - start) * 1000),
    )


def _abs(v: mpf, ctx: PrecisionCtx) -> mpf:
    with ctx.working():
        return abs(mpf(v))


def relative_gap(lhs: mpf, rhs: mpf) -> mpf:
    """|lhs - rhs| / max(1, |lhs|, |rhs|)."""
    return abs(lhs - rhs) / max(mpf(1), abs(lhs), abs(rhs))


def combine(claim_id: str, certs: list[Certificate], cap: Optional[str] = None) -> Certificate:
    """Fold several certificates into one whose verdict is the weakest of them."""
    order = {CERTIFIED: 0, SUPPORTED: 1, INCONCLUSIVE: 2, REFUTED: 3}
    worst = max(certs, key=lambda c: (order[c.verdict], c.residual_hi))
    verdict = worst.verdict
    if any(c.verdict == REFUTED for c in certs):
        verdict = REFUTED
    elif any(c.verdict == INCONCLUSIVE for c in certs):
        verdict = INCONCLUSIVE
    if cap == SUPPORTED and verdict == CERTIFIED:
        verdict = SUPPORTED
    return replace(
        worst,
        claim_id=claim_id,
        verdict=verdict,
        residual_lo=max(c.residual_lo for c in certs),
        residual_hi=max(c.residual_hi for c in certs),
        artifacts=[{"part": c.claim_id, "verdict": c.verdict, "residual_hi": _fmt(c.residual_hi)} for c in certs]
        + [a for c in certs for a in c.artifacts],
        wall_time_ms=sum(c.wall_time_ms for c in certs),
    )


class CertificateWriter:
    """Single-writer JSON Lines sink; safe to share between threads."""

    def __init__(self, target: Union[str, Path, TextIO]):
        self._lock = threading.Lock()
        if isinstance(target, (str, Path)):
            self._fh: TextIO = open(target, "a", encoding="utf-8")
            self._owned = True
        else:
            self._fh = target
            self._owned = False

    def write(self, cert: Certificate) -> None:
        with self._lock:
            self._fh.write(cert.to_jsonl() + "\n")
            self._fh.flush()

    def close(self) -> None:
        if self._owned:
            self._fh.close()

    def __enter__(self) -> "CertificateWriter":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


def read_certificates(path: Union[str, Path]) -> list[Certificate]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [Certificate.from_json(json.loads(line)) for line in lines if line.strip()]
