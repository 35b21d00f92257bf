"""Atomic rational-valued measures and functions on a finite group level.

A measure is a total atom map on its domain together with the prime q of
the ambient valued field, so norm-type quantities (set norms, pointwise
norms, probability constraints) are computable without threading q through
every call.  Functions are plain total maps used as integrands,
convolution factors and operator arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from random import Random
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, ValidationError
from .groups import FiniteGroup, Subgroup, group_from_descriptor
from .scalar import Rational, UltraNorm, abs_q, format_rational, is_prime, parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_domain(domain: FiniteGroup | Subgroup) -> Subgroup:
    if isinstance(domain, FiniteGroup):
        return domain.full
    return domain


@dataclass(frozen=True)
class ScalarFunction:
    """A total rational-valued map on a subgroup view; values align with domain.members."""

    domain: Subgroup
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", _as_domain(self.domain))
        values = tuple(v if type(v) is Fraction else Fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.domain):
            raise ValidationError(
                f"function has {len(values)} values for a domain of size {len(self.domain)}"
            )

    @classmethod
    def from_map(
        cls,
        domain: FiniteGroup | Subgroup,
        mapping: Mapping[int, Rational],
        default: Rational = _ZERO,
    ) -> "ScalarFunction":
        dom = _as_domain(domain)
        for key in mapping:
            if key not in dom:
                raise ValidationError(f"value given at {key}, which is outside the domain")
        default = Fraction(default)
        return cls(dom, tuple(Fraction(mapping.get(g, default)) for g in dom.members))

    @classmethod
    def constant(cls, domain: FiniteGroup | Subgroup, value: Rational) -> "ScalarFunction":
        dom = _as_domain(domain)
        return cls(dom, (Fraction(value),) * len(dom))

    @classmethod
    def indicator(cls, domain: FiniteGroup | Subgroup, subset: Iterable[int]) -> "ScalarFunction":
        dom = _as_domain(domain)
        inside = set(subset)
        for g in inside:
            if g not in dom:
                raise ValidationError(f"indicator support contains {g}, outside the domain")
        return cls(dom, tuple(_ONE if g in inside else _ZERO for g in dom.members))

    def __call__(self, g: int) -> Fraction:
        pos = self.domain.position.get(g)
        if pos is None:
            raise ValidationError(f"element {g} is outside the function's domain")
        return self.values[pos]

    def translate(self, h: int) -> "ScalarFunction":
        """Left translate: g maps to f(h^-1 g).  Requires h in the domain."""
        dom = self.domain
        if h not in dom:
            raise ValidationError(f"translation element {h} is outside the domain")
        hinv = dom.inv(h)
        return ScalarFunction(dom, tuple(self(dom.mul(hinv, g)) for g in dom.members))

    def involute(self) -> "ScalarFunction":
        """Precompose with inversion: g maps to f(g^-1)."""
        dom = self.domain
        return ScalarFunction(dom, tuple(self(dom.inv(g)) for g in dom.members))

    def square(self) -> "ScalarFunction":
        return ScalarFunction(self.domain, tuple(v * v for v in self.values))

    def scale(self, c: Rational) -> "ScalarFunction":
        c = Fraction(c)
        return ScalarFunction(self.domain, tuple(c * v for v in self.values))

    def __add__(self, other: "ScalarFunction") -> "ScalarFunction":
        self._require_same_domain(other)
        return ScalarFunction(self.domain, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ScalarFunction") -> "ScalarFunction":
        self._require_same_domain(other)
        return ScalarFunction(self.domain, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "ScalarFunction":
        return ScalarFunction(self.domain, tuple(-v for v in self.values))

    def _require_same_domain(self, other: "ScalarFunction") -> None:
        if self.domain != other.domain:
            raise ValidationError("functions live on different domains")

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def support(self) -> tuple[int, ...]:
        return tuple(g for g, v in zip(self.domain.members, self.values) if v != 0)

    def restrict(self, subdomain: Subgroup) -> "ScalarFunction":
        if not subdomain.is_subset_of(self.domain):
            raise ValidationError("restriction target is not contained in the domain")
        return ScalarFunction(subdomain, tuple(self(g) for g in subdomain.members))

    def to_json(self) -> dict:
        return {
            "domain": self.domain.group.descriptor,
            "values": {str(g): format_rational(v) for g, v in zip(self.domain.members, self.values) if v != 0},
        }

    @classmethod
    def from_json(cls, payload: dict, domain: Subgroup | None = None) -> "ScalarFunction":
        if domain is None:
            domain = group_from_descriptor(payload["domain"]).full
        raw = payload.get("values", {})
        mapping = {int(k): parse_rational(v) for k, v in raw.items()}
        return cls.from_map(domain, mapping)


@dataclass(frozen=True)
class Measure:
    """An atomic measure: a total atom map plus the prime q of the valued field."""

    domain: Subgroup
    atoms: tuple[Fraction, ...]
    q: int
    probability: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", _as_domain(self.domain))
        atoms = tuple(a if type(a) is Fraction else Fraction(a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(atoms) != len(self.domain):
            raise ValidationError(f"measure has {len(atoms)} atoms for a domain of size {len(self.domain)}")
        if not is_prime(self.q):
            raise ValidationError(f"q must be prime, got {self.q!r}")
        if self.probability:
            total = sum(atoms, _ZERO)
            if total != 1:
                raise ValidationError(f"probability measure must have total mass 1, got {total}")
            for g, a in zip(self.domain.members, atoms):
                if abs_q(a, self.q) > UltraNorm.ONE:
                    raise ValidationError(
                        f"probability measure needs |atom| <= 1 everywhere; atom at {g} is {a}"
                    )

    @classmethod
    def from_map(
        cls,
        domain: FiniteGroup | Subgroup,
        mapping: Mapping[int, Rational],
        q: int,
        probability: bool = False,
    ) -> "Measure":
        dom = _as_domain(domain)
        for key in mapping:
            if key not in dom:
                raise ValidationError(f"atom given at {key}, which is outside the domain")
        return cls(dom, tuple(Fraction(mapping.get(g, _ZERO)) for g in dom.members), q, probability)

    def atom(self, g: int) -> Fraction:
        pos = self.domain.position.get(g)
        if pos is None:
            raise ValidationError(f"element {g} is outside the measure's domain")
        return self.atoms[pos]

    def mass(self, subset: Iterable[int]) -> Fraction:
        total = _ZERO
        for g in subset:
            total += self.atom(g)
        return total

    def total_mass(self) -> Fraction:
        return sum(self.atoms, _ZERO)

    @cached_property
    def _atom_norms(self) -> tuple[UltraNorm, ...]:
        return tuple(abs_q(a, self.q) for a in self.atoms)

    def pointwise_norm(self, g: int) -> UltraNorm:
        """N(g): the norm of the atom at g (the singleton is the smallest clopen set)."""
        pos = self.domain.position.get(g)
        if pos is None:
            raise ValidationError(f"element {g} is outside the measure's domain")
        return self._atom_norms[pos]

    def set_norm(self, subset: Iterable[int]) -> UltraNorm:
        """Sup over subsets B of |measure(B)|; by ultrametricity the max atom norm."""
        best = UltraNorm.ZERO
        for g in subset:
            n = self.pointwise_norm(g)
            if n > best:
                best = n
        return best

    def whole_norm(self) -> UltraNorm:
        return max(self._atom_norms, default=UltraNorm.ZERO)

    def is_quasi_invariant(self) -> bool:
        return all(a != 0 for a in self.atoms)

    def translate(self, phi: int, side: str = "left") -> "Measure":
        """Left: atoms'[g] = atoms[phi^-1 g]; right: atoms'[g] = atoms[g phi^-1]."""
        dom = self.domain
        if phi not in dom:
            raise ValidationError(f"translation element {phi} is outside the domain")
        phinv = dom.inv(phi)
        if side == "left":
            moved = tuple(self.atom(dom.mul(phinv, g)) for g in dom.members)
        elif side == "right":
            moved = tuple(self.atom(dom.mul(g, phinv)) for g in dom.members)
        else:
            raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
        return Measure(dom, moved, self.q, self.probability)

    def scale(self, c: Rational) -> "Measure":
        c = Fraction(c)
        return Measure(self.domain, tuple(c * a for a in self.atoms), self.q)

    def __add__(self, other: "Measure") -> "Measure":
        if self.domain != other.domain or self.q != other.q:
            raise ValidationError("measures live on different domains or use different primes")
        return Measure(self.domain, tuple(a + b for a, b in zip(self.atoms, other.atoms)), self.q)

    def radon_nikodym(self, phi: int) -> ScalarFunction:
        """The translation density g -> atoms[phi^-1 g] / atoms[g]; needs no zero atoms."""
        dom = self.domain
        if phi not in dom:
            raise ValidationError(f"translation element {phi} is outside the domain")
        for g, a in zip(dom.members, self.atoms):
            if a == 0:
                raise PreconditionError(f"measure is not quasi-invariant: atom at {g} is zero")
        phinv = dom.inv(phi)
        return ScalarFunction(dom, tuple(self.atom(dom.mul(phinv, g)) / self.atom(g) for g in dom.members))

    def to_json(self) -> dict:
        payload: dict = {
            "group": self.domain.group.descriptor,
            "q": self.q,
            "atoms": {str(g): format_rational(a) for g, a in zip(self.domain.members, self.atoms) if a != 0},
        }
        if self.probability:
            payload["probability"] = True
        return payload

    @classmethod
    def from_json(cls, payload: dict, domain: Subgroup | None = None, q: int | None = None) -> "Measure":
        if domain is None:
            domain = group_from_descriptor(payload["group"]).full
        if q is None:
            if "q" not in payload:
                raise ValidationError("measure payload carries no prime q and none was supplied")
            q = int(payload["q"])
        mapping = {int(k): parse_rational(v) for k, v in payload.get("atoms", {}).items()}
        return cls.from_map(domain, mapping, q, bool(payload.get("probability", False)))


def integrate(f: ScalarFunction, mu: Measure) -> Fraction:
    """The exact finite sum of f against the atoms of mu."""
    if f.domain != mu.domain:
        raise ValidationError("function and measure live on different domains")
    total = _ZERO
    for v, a in zip(f.values, mu.atoms):
        total += v * a
    return total


def haar(domain: FiniteGroup | Subgroup, q: int) -> Measure:
    """The uniform probability measure; needs q coprime to the domain size."""
    dom = _as_domain(domain)
    atom = Fraction(1, len(dom))
    return Measure(dom, (atom,) * len(dom), q, probability=True)


def dirac(domain: FiniteGroup | Subgroup, at: int, q: int) -> Measure:
    dom = _as_domain(domain)
    if at not in dom:
        raise ValidationError(f"point {at} is outside the domain")
    return Measure(dom, tuple(_ONE if g == at else _ZERO for g in dom.members), q, probability=True)


def _random_unit(rng: Random, q: int) -> int:
    """A nonzero integer in [-(q-1), q-1] coprime to q."""
    u = rng.randrange(1, q)
    return u if rng.randrange(2) == 0 else -u


def _random_denominator(rng: Random, q: int) -> int:
    return rng.choice([d for d in (1, 2, 3, 4) if d % q != 0])


def random_probability_measure(
    domain: FiniteGroup | Subgroup,
    q: int,
    rng: Random,
    max_exponent: int = 2,
) -> Measure:
    """A seeded quasi-invariant probability measure with atoms u*q**k / D.

    Every atom is nonzero with |atom| <= 1 (k in 0..max_exponent), and the
    atoms sum to exactly 1: raw atoms are drawn until their sum is a q-adic
    unit, then normalized.  Uniform measures would leave all pointwise norms
    at 1, so exponents are mixed to exercise the norm weighting.
    """
    dom = _as_domain(domain)
    while True:
        raw = [Fraction(_random_unit(rng, q)) * q ** rng.randrange(0, max_exponent + 1) for _ in dom.members]
        total = sum(raw, _ZERO)
        if total != 0 and total.numerator % q != 0 and total.denominator % q != 0:
            return Measure(dom, tuple(a / total for a in raw), q, probability=True)


def random_measure(
    domain: FiniteGroup | Subgroup,
    q: int,
    rng: Random,
    min_exponent: int = -2,
    max_exponent: int = 2,
    zero_weight: int = 0,
) -> Measure:
    """A seeded measure with unconstrained atom sizes; zero_weight in 0..5 mixes in zero atoms."""
    dom = _as_domain(domain)
    atoms = []
    for _ in dom.members:
        if zero_weight and rng.randrange(6) < zero_weight:
            atoms.append(_ZERO)
        else:
            atoms.append(
                Fraction(_random_unit(rng, q), _random_denominator(rng, q))
                * Fraction(q) ** rng.randrange(min_exponent, max_exponent + 1)
            )
    return Measure(dom, tuple(atoms), q)


def random_symmetric_probability_measure(domain: FiniteGroup | Subgroup, q: int, rng: Random) -> Measure:
    """A quasi-invariant probability measure invariant under inversion (q must be odd)."""
    dom = _as_domain(domain)
    if q == 2:
        raise ValidationError("symmetrization averages pairs and needs q odd")
    while True:
        base = random_probability_measure(dom, q, rng)
        atoms = tuple(
            (base.atom(g) + base.atom(dom.inv(g))) / 2 for g in dom.members
        )
        if all(a != 0 for a in atoms):
            return Measure(dom, atoms, q, probability=True)


def random_function(
    domain: FiniteGroup | Subgroup,
    q: int,
    rng: Random,
    min_exponent: int = -2,
    max_exponent: int = 2,
    zero_weight: int = 1,
) -> ScalarFunction:
    """A seeded function with values u*q**k / D; zero_weight in 0..5 mixes in zeros."""
    dom = _as_domain(domain)
    values = []
    for _ in dom.members:
        if zero_weight and rng.randrange(6) < zero_weight:
            values.append(_ZERO)
        else:
            values.append(
                Fraction(_random_unit(rng, q), _random_denominator(rng, q))
                * Fraction(q) ** rng.randrange(min_exponent, max_exponent + 1)
            )
    return ScalarFunction(dom, tuple(values))
