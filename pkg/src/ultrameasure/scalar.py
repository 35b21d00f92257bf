"""Exact scalars: rationals carrying a q-adic absolute value.

Every numeric value in the package is a ``fractions.Fraction`` (kept in
lowest terms with positive denominator by the stdlib).  Norm values are
never floats: an :class:`UltraNorm` is either zero or an exact symbolic
power ``q**e`` with a rational exponent ``e``, so all norm comparisons
reduce to exact comparisons of exponents.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import ClassVar

from .errors import ValidationError

Rational = Fraction


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for the desk-scale primes used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(q: int) -> None:
    if not isinstance(q, int) or not is_prime(q):
        raise ValidationError(f"base must be a prime integer, got {q!r}")


def valuation(x: Rational | int, q: int) -> int | float:
    """q-adic valuation of a rational: the exponent v with x = q**v * (u/w), q dividing neither u nor w.

    Returns ``math.inf`` for x = 0.
    """
    _require_prime(q)
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    n = x.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = x.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


def abs_q(x: Rational | int, q: int) -> "UltraNorm":
    """q-adic absolute value |x| = q**(-valuation(x)); zero maps to the zero norm."""
    v = valuation(x, q)
    if v is math.inf:
        return UltraNorm.ZERO
    return UltraNorm(Fraction(-v))


_NORM_RE = re.compile(r"^q\^\{(-?\d+(?:/\d+)?)\}$")


@total_ordering
@dataclass(frozen=True)
class UltraNorm:
    """Zero, or the exact value q**exponent for the context prime q.

    ``exponent is None`` encodes the zero norm, which absorbs under
    products and is smaller than every power of q.  Multiplication adds
    exponents and :meth:`sqrt` halves them, both exactly.
    """

    exponent: Fraction | None

    ZERO: ClassVar["UltraNorm"]
    ONE: ClassVar["UltraNorm"]

    def __post_init__(self) -> None:
        if self.exponent is not None and not isinstance(self.exponent, Fraction):
            object.__setattr__(self, "exponent", Fraction(self.exponent))

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __bool__(self) -> bool:
        return self.exponent is not None

    def __lt__(self, other: "UltraNorm") -> bool:
        if not isinstance(other, UltraNorm):
            return NotImplemented
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent < other.exponent

    def __mul__(self, other: "UltraNorm") -> "UltraNorm":
        if not isinstance(other, UltraNorm):
            return NotImplemented
        if self.exponent is None or other.exponent is None:
            return UltraNorm.ZERO
        return UltraNorm(self.exponent + other.exponent)

    def __pow__(self, k: int) -> "UltraNorm":
        if self.exponent is None:
            if k <= 0:
                raise ValidationError("zero norm has no inverse or zeroth power")
            return UltraNorm.ZERO
        return UltraNorm(self.exponent * k)

    def sqrt(self) -> "UltraNorm":
        """Exact square root: q**e maps to q**(e/2), zero stays zero."""
        if self.exponent is None:
            return UltraNorm.ZERO
        return UltraNorm(self.exponent / 2)

    def to_string(self) -> str:
        if self.exponent is None:
            return "0"
        return f"q^{{{format_rational(self.exponent)}}}"

    @classmethod
    def from_string(cls, text: str) -> "UltraNorm":
        if text == "0":
            return cls.ZERO
        m = _NORM_RE.match(text)
        if m is None:
            raise ValidationError(f"not an ultrametric norm literal: {text!r}")
        return cls(Fraction(m.group(1)))

    def __repr__(self) -> str:
        return f"UltraNorm({self.to_string()})"


UltraNorm.ZERO = UltraNorm(None)
UltraNorm.ONE = UltraNorm(Fraction(0))


def norm_sqrt(n: UltraNorm) -> UltraNorm:
    """Free-function form of :meth:`UltraNorm.sqrt`."""
    return n.sqrt()


def format_rational(x: Rational | int) -> str:
    """Canonical wire form ``num/den`` in lowest terms, e.g. ``-1/12`` or ``0/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Rational:
    """Parse ``num/den`` (or a bare integer); rejects anything the canonical form can't express."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational literal: {text!r}") from exc
    return value
