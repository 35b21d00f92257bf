"""Convolutions of measures and functions, and the weighted function-space norms.

Three products live here: measure * measure over a subgroup, the smoothing
product (q *~ f)(g) = sum_h f(h g) q(h) nu(h), and the level convolution
integrating a subgroup-level function against the translate of a
parent-level function.  All of them satisfy exact ultrametric norm bounds
that the verification suite replays on random instances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import PreconditionError, ValidationError
from .groups import Subgroup, SubgroupChain
from .measures import Measure, ScalarFunction, integrate
from .scalar import UltraNorm, abs_q

_ZERO = Fraction(0)


def _require_subgroup_of(small: Subgroup, big: Subgroup, what: str) -> None:
    if not small.is_subset_of(big):
        raise ValidationError(f"{what}: {small!r} is not a subgroup of {big!r}")


def convolve_measures(nu: Measure, mu: Measure) -> Measure:
    """(nu * mu)(x) = sum over h in nu's domain of nu(h) * mu(h^-1 x).

    nu lives on a subgroup of mu's domain (or on the same domain); the
    result lives where mu does.  The whole-space norm obeys
    |nu * mu| <= |nu| * |mu| exactly.
    """
    if nu.q != mu.q:
        raise ValidationError(f"measures use different primes {nu.q} and {mu.q}")
    _require_subgroup_of(nu.domain, mu.domain, "measure convolution")
    dom = mu.domain
    out = [_ZERO] * len(dom)
    for h, weight in zip(nu.domain.members, nu.atoms):
        if weight == 0:
            continue
        hinv = dom.inv(h)
        for pos, x in enumerate(dom.members):
            out[pos] += weight * mu.atom(dom.mul(hinv, x))
    probability = nu.probability and mu.probability
    return Measure(dom, tuple(out), mu.q, probability)


def convolve_functions(q_fn: ScalarFunction, f: ScalarFunction, nu: Measure) -> ScalarFunction:
    """(q *~ f)(g) = sum over h of f(h g) q(h) nu(h), h running over nu's domain."""
    if q_fn.domain != nu.domain:
        raise ValidationError("left factor and weighting measure live on different domains")
    _require_subgroup_of(nu.domain, f.domain, "function convolution")
    dom = f.domain
    out = [_ZERO] * len(dom)
    for h, qv, w in zip(nu.domain.members, q_fn.values, nu.atoms):
        c = qv * w
        if c == 0:
            continue
        for pos, g in enumerate(dom.members):
            out[pos] += f(dom.mul(h, g)) * c
    return ScalarFunction(dom, tuple(out))


def level_convolve(f_next: ScalarFunction, f: ScalarFunction, mu_next: Measure) -> ScalarFunction:
    """Integrate f_next on the subgroup level against the translated parent-level f.

    result(x) = sum over y in the subgroup of f_next(y) * f(y^-1 x) * mu_next(y).
    mu_next must be a probability measure on f_next's domain.
    """
    if f_next.domain != mu_next.domain:
        raise ValidationError("subgroup-level function and measure live on different domains")
    if not mu_next.probability:
        raise ValidationError("level convolution requires a probability measure on the subgroup level")
    _require_subgroup_of(f_next.domain, f.domain, "level convolution")
    dom = f.domain
    out = [_ZERO] * len(dom)
    for y, fv, w in zip(mu_next.domain.members, f_next.values, mu_next.atoms):
        c = fv * w
        if c == 0:
            continue
        yinv = dom.inv(y)
        for pos, x in enumerate(dom.members):
            out[pos] += f(dom.mul(yinv, x)) * c
    return ScalarFunction(dom, tuple(out))


def weighted_sup_norm(f: ScalarFunction, mu: Measure) -> UltraNorm:
    """max over g of |f(g)| * N(g), the norm of the weighted function space."""
    if f.domain != mu.domain:
        raise ValidationError("function and measure live on different domains")
    best = UltraNorm.ZERO
    for v, n in zip(f.values, mu._atom_norms):
        if v == 0:
            continue
        candidate = abs_q(v, mu.q) * n
        if candidate > best:
            best = candidate
    return best


def translated_sup_norm(f: ScalarFunction, mu: Measure, subgroup: Subgroup) -> UltraNorm:
    """sup over h in the subgroup of the weighted sup norm of the h-translate of f."""
    _require_subgroup_of(subgroup, f.domain, "translated norm")
    best = UltraNorm.ZERO
    for h in subgroup.members:
        candidate = weighted_sup_norm(f.translate(h), mu)
        if candidate > best:
            best = candidate
    return best


def level_norm(
    f: ScalarFunction,
    mu: Measure,
    mu_next: Measure | None,
) -> tuple[UltraNorm, UltraNorm, UltraNorm]:
    """The level-norm triple (square part, shift part, their max).

    square part: sqrt of max |f(x)|^2 N(x).
    shift part:  sqrt of sup over x in the level, y in the next level of
                 |f(y^-1 x)|^2 N(x) max(1, N_next(y)).
    For the last level of a chain (mu_next None) the next level degenerates
    to the identity alone and the shift part equals the square part.
    """
    square_part = weighted_sup_norm(f.square(), mu).sqrt()
    if mu_next is None:
        return square_part, square_part, square_part
    _require_subgroup_of(mu_next.domain, f.domain, "level norm")
    if mu.domain != f.domain:
        raise ValidationError("function and level measure live on different domains")
    one = UltraNorm.ONE
    best = UltraNorm.ZERO
    dom = f.domain
    for y in mu_next.domain.members:
        n_y = mu_next.pointwise_norm(y)
        weight = n_y if n_y > one else one
        yinv = dom.inv(y)
        for x, n_x in zip(dom.members, mu._atom_norms):
            v = f(dom.mul(yinv, x))
            if v == 0:
                continue
            candidate = abs_q(v, mu.q) ** 2 * n_x * weight
            if candidate > best:
                best = candidate
    shift_part = best.sqrt()
    return square_part, shift_part, max(square_part, shift_part)


def approximate_unit(chain: SubgroupChain, nu: Measure, i: int) -> ScalarFunction:
    """The normalized indicator of chain level i: unit integral, shrinking support."""
    if nu.domain != chain[0]:
        raise ValidationError("the weighting measure must live on the top chain level")
    if not (0 <= i < len(chain)):
        raise ValidationError(f"chain has {len(chain)} levels, no level {i}")
    level = chain[i]
    mass = nu.mass(level.members)
    if mass == 0:
        raise PreconditionError(f"chain level {i} has measure zero; the unit would be degenerate")
    return ScalarFunction.indicator(nu.domain, level.members).scale(Fraction(1) / mass)


def overlap_function(mu: Measure, a_set: Iterable[int], b_set: Iterable[int]) -> ScalarFunction:
    """x maps to mu(A intersect x.B), computed on all of mu's domain.

    Wherever the result has positive set norm at x with B replaced by its
    inverse, x factors as an element of A.B; that inclusion is checked by
    the verification suite.
    """
    dom = mu.domain
    a_members = set(a_set)
    b_members = list(b_set)
    for g in a_members | set(b_members):
        if g not in dom:
            raise ValidationError(f"subset element {g} is outside the measure's domain")
    values = []
    for x in dom.members:
        xb = {dom.mul(x, b) for b in b_members}
        values.append(mu.mass(a_members & xb))
    return ScalarFunction(dom, tuple(values))


def is_coset_constant(f: ScalarFunction, level: Subgroup) -> bool:
    """True when f is constant on every coset {h*g : h in level}."""
    _require_subgroup_of(level, f.domain, "coset constancy")
    dom = f.domain
    for g in dom.members:
        base = f(dom.mul(level.members[0], g))
        for h in level.members[1:]:
            if f(dom.mul(h, g)) != base:
                return False
    return True


__all__ = [
    "convolve_measures",
    "convolve_functions",
    "level_convolve",
    "weighted_sup_norm",
    "translated_sup_norm",
    "level_norm",
    "approximate_unit",
    "overlap_function",
    "is_coset_constant",
    "integrate",
]
