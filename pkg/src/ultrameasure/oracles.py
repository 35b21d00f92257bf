"""Independently coded brute-force reference computations.

These deliberately re-derive each product from its defining double (or
triple) summation with a different loop structure than the production
code, so agreement between the two is meaningful.  They are slow and only
intended for desk-scale domains.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import ValidationError
from .measures import Measure, ScalarFunction
from .scalar import UltraNorm, abs_q
from .tower import TowerElement

_ZERO = Fraction(0)


def convolve_measures_bruteforce(nu: Measure, mu: Measure) -> Measure:
    """Accumulate nu(h) * mu(y) into the atom at h*y over all pairs."""
    dom = mu.domain
    acc = {x: _ZERO for x in dom.members}
    for h in nu.domain.members:
        for y in dom.members:
            acc[dom.mul(h, y)] += nu.atom(h) * mu.atom(y)
    return Measure(dom, tuple(acc[x] for x in dom.members), mu.q, nu.probability and mu.probability)


def convolve_functions_bruteforce(q_fn: ScalarFunction, f: ScalarFunction, nu: Measure) -> ScalarFunction:
    """Evaluate sum_h f(h g) q(h) nu(h) pointwise, one g at a time."""
    dom = f.domain
    values = []
    for g in dom.members:
        s = _ZERO
        for h in nu.domain.members:
            s += f(dom.mul(h, g)) * q_fn(h) * nu.atom(h)
        values.append(s)
    return ScalarFunction(dom, tuple(values))


def level_convolve_bruteforce(f_next: ScalarFunction, f: ScalarFunction, mu_next: Measure) -> ScalarFunction:
    """Evaluate sum_y f_next(y) f(y^-1 x) mu_next(y) pointwise."""
    dom = f.domain
    values = []
    for x in dom.members:
        s = _ZERO
        for y in mu_next.domain.members:
            s += f_next(y) * f(dom.mul(dom.inv(y), x)) * mu_next.atom(y)
        values.append(s)
    return ScalarFunction(dom, tuple(values))


def star_bruteforce(f: TowerElement, g: TowerElement) -> TowerElement:
    from .tower import TowerElement as TE

    tower = f.tower
    out = tuple(
        level_convolve_bruteforce(f.components[i + 1], g.components[i], tower.measures[i + 1])
        for i in range(len(tower) - 1)
    )
    return TE(tower.truncated(), out)


def set_norm_bruteforce(mu: Measure, subset: tuple[int, ...]) -> UltraNorm:
    """The literal sup over all sub-subsets B of |mu(B)|; exponential, keep |subset| small."""
    subset = tuple(subset)
    if len(subset) > 20:
        raise ValidationError("brute-force subset enumeration capped at 20 elements")
    best = UltraNorm.ZERO
    for r in range(1, len(subset) + 1):
        for picked in combinations(subset, r):
            candidate = abs_q(mu.mass(picked), mu.q)
            if candidate > best:
                best = candidate
    return best
