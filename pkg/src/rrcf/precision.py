"""Precision context, exact surd arguments and precision-tagged reals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Union

from mpmath import mp, mpf


class RRCFError(Exception):
    """Base class for library errors."""


class DomainError(RRCFError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(RRCFError, ArithmeticError):
    """A series, product or continued fraction did not converge within the term cap."""


class PreconditionError(RRCFError, ValueError):
    """Inputs do not carry enough precision for the requested operation."""


class MismatchError(RRCFError, ValueError):
    """No root of a polynomial lies close to the requested target."""


class SingularityError(RRCFError, ZeroDivisionError):
    """A formula was evaluated at one of its poles."""


# Hard cap on series terms / product factors / continued-fraction depth.
TERM_CAP = 10**7


@dataclass(frozen=True)
class PrecisionCtx:
    """Working precision: results are reported at ``digits``, computed at ``digits + guard``."""

    digits: int = 300
    guard: int = 50

    def __post_init__(self) -> None:
        if self.digits < 50:
            raise DomainError(f"digits must be >= 50, got {self.digits}")
        if self.guard < 20:
            raise DomainError(f"guard must be >= 20, got {self.guard}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def eps(self) -> mpf:
        """Truncation threshold 10^-(digits+guard)."""
        with self.working():
            return mpf(10) ** (-self.working_digits)

    def working(self):
        """Context manager setting mpmath to the working precision.

        mpmath keeps its precision in process-global state, so concurrent
        evaluation must use processes, not threads.
        """
        return mp.workdps(self.working_digits)

    def with_digits(self, digits: int) -> "PrecisionCtx":
        return PrecisionCtx(digits=digits, guard=self.guard)

    def doubled(self) -> "PrecisionCtx":
        return self.with_digits(2 * self.digits)


@dataclass(frozen=True, order=True)
class SurdArg:
    """Positive rational r designating the nome q = exp(-pi*sqrt(r)), i.e. tau = i*sqrt(r)."""

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0 or self.num <= 0 or self.den < 0:
            raise DomainError(f"SurdArg needs positive num/den, got {self.num}/{self.den}")
        g = gcd(self.num, self.den)
        if g != 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def parse(cls, text: str) -> "SurdArg":
        """Parse ``"num/den"`` (``den`` optional, default 1)."""
        text = text.strip()
        try:
            if "/" in text:
                n, d = text.split("/", 1)
                return cls(int(n), int(d))
            return cls(int(text))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"cannot parse rational argument {text!r}") from exc

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> "SurdArg":
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def scaled(self, factor: Union[Fraction, int]) -> "SurdArg":
        return SurdArg.from_fraction(self.fraction * Fraction(factor))

    def nome(self, ctx: PrecisionCtx) -> mpf:
        """q = exp(-pi*sqrt(num/den)) at the working precision of ``ctx``."""
        with ctx.working():
            return mp.exp(-mp.pi * mp.sqrt(mpf(self.num) / self.den))

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class Real:
    """An mpmath real together with the precision (in digits) it was computed at."""

    value: mpf
    digits: int

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.nstr()

    def __repr__(self) -> str:
        return f"Real({mp.nstr(self.value, 20)}, digits={self.digits})"

    def nstr(self, digits: int | None = None) -> str:
        with mp.workdps(self.digits + 10):
            return mp.nstr(self.value, digits or self.digits, strip_zeros=False)

    def agrees_with(self, other: "Real", guard: int) -> bool:
        """Compare at the smaller of the two precisions minus ``guard``."""
        d = min(self.digits, other.digits) - guard
        with mp.workdps(d + guard):
            scale = max(mpf(1), abs(self.value), abs(other.value))
            return abs(self.value - other.value) <= scale * mpf(10) ** (-d)


# A quantity that can be recomputed at any precision, or a fixed value.
Source = Union[Callable[["PrecisionCtx"], Union["Real", mpf]], "Real", mpf, int, Fraction]


def can_escalate(source: Source) -> bool:
    # mpmath constants such as mp.pi are callable but are plain values here
    return callable(source) and not hasattr(source, "_mpf_")


def resolve(source: Source, ctx: PrecisionCtx) -> mpf:
    """Value of ``source`` at the working precision of ``ctx``."""
    with ctx.working():
        v = source(ctx) if can_escalate(source) else source
        if isinstance(v, Real):
            return +v.value
        if isinstance(v, Fraction):
            return mpf(v.numerator) / v.denominator
        return +mpf(v)
