"""Exact matrix operators on the function space of a finite group level.

The weighted translation operator multiplies the translated function by
the translation density, which makes it an exact isometry for the weighted
sup norm.  Averaging such operators against a function and a measure gives
the operator family whose intertwining identity the verification suite
checks as exact matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, Sequence

from .convolve import weighted_sup_norm
from .errors import ValidationError
from .measures import Measure, ScalarFunction
from .scalar import Rational, format_rational, parse_rational
from .groups import Subgroup

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Operator:
    """A square matrix of rationals acting on functions over a fixed domain."""

    domain: Subgroup
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.domain)
        rows = tuple(
            tuple(v if type(v) is Fraction else Fraction(v) for v in row) for row in self.rows
        )
        object.__setattr__(self, "rows", rows)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValidationError(f"operator matrix must be {n}x{n} for this domain")

    @classmethod
    def identity(cls, domain: Subgroup) -> "Operator":
        n = len(domain)
        return cls(domain, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, domain: Subgroup) -> "Operator":
        n = len(domain)
        return cls(domain, ((_ZERO,) * n,) * n)

    def apply(self, f: ScalarFunction) -> ScalarFunction:
        if f.domain != self.domain:
            raise ValidationError("operator and function live on different domains")
        return ScalarFunction(
            self.domain,
            tuple(sum((a * v for a, v in zip(row, f.values) if a != 0), _ZERO) for row in self.rows),
        )

    def compose(self, other: "Operator") -> "Operator":
        """Matrix product self @ other (apply other first); skips zero entries,
        which makes composing the sparse translation operators cheap."""
        if self.domain != other.domain:
            raise ValidationError("operators live on different domains")
        n = len(self.domain)
        out = [[_ZERO] * n for _ in range(n)]
        for i, row in enumerate(self.rows):
            acc = out[i]
            for k, a in enumerate(row):
                if a == 0:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b != 0:
                        acc[j] += a * b
        return Operator(self.domain, tuple(tuple(r) for r in out))

    def scale(self, c: Rational) -> "Operator":
        c = Fraction(c)
        return Operator(self.domain, tuple(tuple(c * v if v else _ZERO for v in row) for row in self.rows))

    def __add__(self, other: "Operator") -> "Operator":
        if self.domain != other.domain:
            raise ValidationError("operators live on different domains")
        return Operator(
            self.domain,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
        )

    def to_json(self) -> dict:
        return {
            "dim": len(self.domain),
            "rows": [[format_rational(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, payload: dict, domain: Subgroup) -> "Operator":
        if int(payload.get("dim", -1)) != len(domain):
            raise ValidationError("operator dimension does not match the domain")
        return cls(domain, tuple(tuple(parse_rational(v) for v in row) for row in payload["rows"]))


def weighted_regular_rep(mu: Measure, h: int) -> Operator:
    """The density-weighted translation: (T_h f)(g) = rho(h, g) * f(h^-1 g).

    Requires a quasi-invariant measure; preserves the weighted sup norm
    exactly for every h because the density trades the norm weight at g for
    the weight at h^-1 g.
    """
    rho = mu.radon_nikodym(h)  # raises on zero atoms
    dom = mu.domain
    n = len(dom)
    hinv = dom.inv(h)
    rows = []
    for g in dom.members:
        row = [_ZERO] * n
        row[dom.position[dom.mul(hinv, g)]] = rho(g)
        rows.append(tuple(row))
    return Operator(dom, tuple(rows))


def averaged_operator(
    a: ScalarFunction,
    mu: Measure,
    h: int,
    lam: Rational = _ZERO,
    family: Callable[[int], Operator] | None = None,
) -> Operator:
    """lam * I plus the sum over g of a(h^-1 g) * rho(h, g) * T_g * mu(g).

    The operator family defaults to the weighted translations of mu, for
    which conjugating the argument by h equals composing with T_h on the
    left (checked exactly by the verification suite).
    """
    dom = mu.domain
    if a.domain != dom:
        raise ValidationError("averaging function and measure live on different domains")
    if family is None:
        family = lambda g: weighted_regular_rep(mu, g)
    rho = mu.radon_nikodym(h)
    hinv = dom.inv(h)
    n = len(dom)
    lam = Fraction(lam)
    acc = [[_ZERO] * n for _ in range(n)]
    if lam != 0:
        for i in range(n):
            acc[i][i] = lam
    for g, weight in zip(dom.members, mu.atoms):
        coeff = a(dom.mul(hinv, g)) * rho(g) * weight
        if coeff == 0:
            continue
        for i, row in enumerate(family(g).rows):
            acc_row = acc[i]
            for j, v in enumerate(row):
                if v != 0:
                    acc_row[j] += coeff * v
    return Operator(dom, tuple(tuple(row) for row in acc))


def isometry_check(
    T: Operator,
    mu: Measure,
    rng: Random | None = None,
    samples: int = 8,
) -> tuple[bool, ScalarFunction | None]:
    """Check that T preserves the weighted sup norm on every indicator and a seeded sample.

    Returns (True, None) on success, else (False, first failing function).
    """
    from .measures import random_function  # local import to avoid a cycle at module load

    candidates = [
        ScalarFunction.indicator(mu.domain, (g,)) for g in mu.domain.members
    ]
    if rng is not None:
        candidates.extend(
            random_function(mu.domain, mu.q, rng, zero_weight=1) for _ in range(samples)
        )
    for f in candidates:
        if weighted_sup_norm(T.apply(f), mu) != weighted_sup_norm(f, mu):
            return False, f
    return True, None
