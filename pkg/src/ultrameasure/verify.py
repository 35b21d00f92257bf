"""Seeded property families behind the ``verify`` command.

Every family draws all randomness from one master seed, runs a batch of
named checks, and reports the first counterexample of each failing check.
Reports contain no timestamps or machine state, so a fixed (suite, seed,
trials) triple produces byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Sequence

from . import oracles
from .convolve import (
    approximate_unit,
    convolve_functions,
    convolve_measures,
    is_coset_constant,
    level_convolve,
    level_norm,
    overlap_function,
    translated_sup_norm,
    weighted_sup_norm,
)
from .errors import PreconditionError
from .groups import FiniteGroup, Subgroup, cyclic, heisenberg, make_chain, quotient_project
from .measures import (
    Measure,
    ScalarFunction,
    haar,
    integrate,
    random_function,
    random_measure,
    random_probability_measure,
    random_symmetric_probability_measure,
)
from .rep import Operator, averaged_operator, isometry_check, weighted_regular_rep
from .scalar import UltraNorm, abs_q, format_rational
from .tower import (
    ScalarSequence,
    Tower,
    TowerElement,
    algebra_norm,
    associativity_defect,
    autocorrelation_at_identity,
    c0_star,
    commutativity_defect,
    constant_tower,
    ideal_member,
    idempotent_tower,
    involution,
    star,
)

SUITES = ("all", "lemma2", "cocycle", "prop5", "lemma16", "note19", "ideals", "isometry")

_ZERO = Fraction(0)


@dataclass
class PropertyOutcome:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    trials: int
    witness: dict | None = None

    def to_json(self) -> dict:
        payload: dict = {"name": self.name, "status": self.status, "trials": self.trials}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


@dataclass
class RunReport:
    command: list[str]
    suite: str
    seed: int
    trials: int
    q: int
    families: list[str]
    properties: list[PropertyOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.status != "fail" for p in self.properties)

    def to_json(self) -> dict:
        ordered = sorted(self.properties, key=lambda p: p.name)
        return {
            "command": self.command,
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "q": self.q,
            "families": self.families,
            "properties": [p.to_json() for p in ordered],
            "counts": {
                "pass": sum(1 for p in ordered if p.status == "pass"),
                "fail": sum(1 for p in ordered if p.status == "fail"),
                "skipped": sum(1 for p in ordered if p.status == "skipped"),
            },
            "passed": self.passed,
        }


def _rng(seed: int, family: str) -> Random:
    return Random(f"{seed}:{family}")


def _check(name: str, trials: int, run_trial: Callable[[int], dict | None]) -> PropertyOutcome:
    """Run numbered trials until the first counterexample; record it as the witness."""
    for t in range(trials):
        witness = run_trial(t)
        if witness is not None:
            witness.setdefault("trial", t)
            return PropertyOutcome(name, "fail", t + 1, witness)
    return PropertyOutcome(name, "pass", trials)


def _norm(n: UltraNorm) -> str:
    return n.to_string()


def _frac(x: Fraction) -> str:
    return format_rational(x)


# --- shared fixed instances --------------------------------------------------


def _z9() -> FiniteGroup:
    return cyclic(3, 2)


def _heis() -> FiniteGroup:
    return heisenberg(3, 1)


def _haar_tower(group: FiniteGroup, q: int) -> Tower:
    chain = make_chain(group)
    return Tower(chain, tuple(haar(level, q) for level in chain.levels))


def _random_tower(group: FiniteGroup, q: int, rng: Random) -> Tower:
    chain = make_chain(group)
    return Tower(chain, tuple(random_probability_measure(level, q, rng) for level in chain.levels))


def _random_element(tower: Tower, rng: Random, min_exponent: int = -2) -> TowerElement:
    return tower.element(
        [random_function(level, tower.q, rng, min_exponent=min_exponent) for level in tower.chain.levels]
    )


# --- scalar ------------------------------------------------------------------


def family_scalar(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "scalar")

    def rand_rational() -> Fraction:
        num = rng.randrange(-60, 61)
        return Fraction(num, rng.randrange(1, 40))

    def ultrametric(t: int) -> dict | None:
        x, y = rand_rational(), rand_rational()
        ax, ay, axy = abs_q(x, q), abs_q(y, q), abs_q(x + y, q)
        if axy > max(ax, ay):
            return {"x": _frac(x), "y": _frac(y), "|x+y|": _norm(axy)}
        if ax != ay and axy != max(ax, ay):
            return {"x": _frac(x), "y": _frac(y), "expected equality": _norm(max(ax, ay))}
        return None

    def multiplicative(t: int) -> dict | None:
        x, y = rand_rational(), rand_rational()
        if abs_q(x * y, q) != abs_q(x, q) * abs_q(y, q):
            return {"x": _frac(x), "y": _frac(y)}
        return None

    def lattice(t: int) -> dict | None:
        norms = [abs_q(rand_rational(), q) for _ in range(3)]
        a, b, c = norms
        if max(max(a, b), c) != max(a, max(b, c)) or max(a, b) != max(b, a):
            return {"norms": [_norm(n) for n in norms]}
        if (a * b) * c != a * (b * c) or a * b != b * a:
            return {"norms": [_norm(n) for n in norms]}
        if not a.is_zero and a.sqrt() * a.sqrt() != a:
            return {"norm": _norm(a)}
        return None

    return [
        _check("scalar/ultrametric_inequality", trials, ultrametric),
        _check("scalar/absolute_value_multiplicative", trials, multiplicative),
        _check("scalar/norm_lattice_operations", trials, lattice),
    ]


# --- groups ------------------------------------------------------------------


def family_groups(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "groups")
    groups = [cyclic(3, 2), cyclic(2, 3), heisenberg(3, 1)]

    def axioms(t: int) -> dict | None:
        g = groups[t % len(groups)]
        n = g.order
        ident = g.identity
        for a in range(n):
            if g.mul(ident, a) != a or g.mul(a, ident) != a:
                return {"group": g.descriptor, "element": a, "failure": "identity"}
            if g.mul(a, g.inv(a)) != ident:
                return {"group": g.descriptor, "element": a, "failure": "inverse"}
        for _ in range(2000):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
                return {"group": g.descriptor, "triple": [a, b, c], "failure": "associativity"}
        return None

    def chain_closure(t: int) -> dict | None:
        g = groups[t % len(groups)]
        try:
            chain = make_chain(g)
        except Exception as exc:  # construction already validates; surface any failure
            return {"group": g.descriptor, "error": str(exc)}
        for i, level in enumerate(chain.levels):
            for a in level.members:
                for b in level.members:
                    if g.mul(a, b) not in level or g.inv(a) not in level:
                        return {"group": g.descriptor, "level": i, "pair": [a, b]}
        return None

    def projection(t: int) -> dict | None:
        fine, coarse = cyclic(3, 3), cyclic(3, 2)
        for a in fine.elements():
            for b in fine.elements():
                lhs = quotient_project(fine, coarse, fine.mul(a, b))
                rhs = coarse.mul(quotient_project(fine, coarse, a), quotient_project(fine, coarse, b))
                if lhs != rhs:
                    return {"pair": [a, b]}
        return None

    def noncommutative(t: int) -> dict | None:
        g = heisenberg(3, 1)
        for a in g.elements():
            for b in g.elements():
                if g.mul(a, b) != g.mul(b, a):
                    return None  # witness found: the group is non-abelian as required
        return {"group": g.descriptor, "failure": "no non-commuting pair exists"}

    return [
        _check("groups/axioms", min(trials, 12), axioms),
        _check("groups/chain_closure", min(trials, len(groups)), chain_closure),
        _check("groups/quotient_projection_homomorphism", min(trials, 1), projection),
        _check("groups/noncommutative_witness", min(trials, 1), noncommutative),
    ]


# --- convolution norm bounds (lemma2 suite) ----------------------------------


def family_lemma2(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "lemma2")
    setups: list[tuple[FiniteGroup, Subgroup]] = []
    for g in (_z9(), _heis()):
        chain = make_chain(g)
        setups.append((g, chain[1]))

    def pick(t: int) -> tuple[FiniteGroup, Subgroup]:
        return setups[t % 2]

    def measure_bound(t: int) -> dict | None:
        g, h_sub = pick(t)
        nu = random_measure(h_sub, q, rng, zero_weight=1)
        mu = random_measure(g.full, q, rng, zero_weight=1)
        conv = convolve_measures(nu, mu)
        if conv.whole_norm() > nu.whole_norm() * mu.whole_norm():
            return {"nu": nu.to_json(), "mu": mu.to_json(), "|conv|": _norm(conv.whole_norm())}
        return None

    def function_bound(t: int) -> dict | None:
        g, h_sub = pick(t)
        nu = random_measure(h_sub, q, rng, zero_weight=1)
        mu = random_measure(g.full, q, rng, zero_weight=1)
        q_fn = random_function(h_sub, q, rng)
        f = random_function(g.full, q, rng)
        conv = convolve_functions(q_fn, f, nu)
        lhs = translated_sup_norm(conv, mu, h_sub)
        rhs = weighted_sup_norm(q_fn, nu) * translated_sup_norm(f, mu, h_sub)
        if lhs > rhs:
            return {
                "nu": nu.to_json(),
                "mu": mu.to_json(),
                "q_fn": q_fn.to_json(),
                "f": f.to_json(),
                "lhs": _norm(lhs),
                "rhs": _norm(rhs),
            }
        return None

    def bilinearity(t: int) -> dict | None:
        g, h_sub = pick(t)
        c1 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        c2 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        nu1 = random_measure(h_sub, q, rng)
        nu2 = random_measure(h_sub, q, rng)
        mu = random_measure(g.full, q, rng)
        lhs = convolve_measures(nu1.scale(c1) + nu2.scale(c2), mu)
        rhs = convolve_measures(nu1, mu).scale(c1) + convolve_measures(nu2, mu).scale(c2)
        if lhs.atoms != rhs.atoms:
            return {"c1": _frac(c1), "c2": _frac(c2), "nu1": nu1.to_json(), "nu2": nu2.to_json()}
        f1 = random_function(g.full, q, rng)
        f2 = random_function(g.full, q, rng)
        q_fn = random_function(h_sub, q, rng)
        lhs_f = convolve_functions(q_fn, f1.scale(c1) + f2.scale(c2), nu1)
        rhs_f = convolve_functions(q_fn, f1, nu1).scale(c1) + convolve_functions(q_fn, f2, nu1).scale(c2)
        if lhs_f != rhs_f:
            return {"c1": _frac(c1), "c2": _frac(c2), "argument": "function side"}
        return None

    def translation_preserves(t: int) -> dict | None:
        g, h_sub = pick(t)
        mu = random_measure(g.full, q, rng, zero_weight=1)
        f = random_function(g.full, q, rng)
        base = translated_sup_norm(f, mu, h_sub)
        for shift in h_sub.members:
            if translated_sup_norm(f.translate(shift), mu, h_sub) != base:
                return {"mu": mu.to_json(), "f": f.to_json(), "shift": shift}
        full = g.full
        base_full = translated_sup_norm(f, mu, full)
        shift = rng.randrange(g.order)
        if translated_sup_norm(f.translate(shift), mu, full) != base_full:
            return {"mu": mu.to_json(), "f": f.to_json(), "shift": shift, "subgroup": "full"}
        return None

    return [
        _check("lemma2/measure_convolution_norm_bound", trials, measure_bound),
        _check("lemma2/function_convolution_norm_bound", trials, function_bound),
        _check("lemma2/convolution_bilinearity", max(trials // 4, 1) if trials else 0, bilinearity),
        _check("lemma2/translation_preserves_norm", max(trials // 4, 1) if trials else 0, translation_preserves),
    ]


# --- cocycle suite -----------------------------------------------------------


def family_cocycle(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "cocycle")
    z9, heis = _z9(), _heis()

    def group_for(t: int) -> FiniteGroup:
        return heis if t % 10 == 9 else z9

    def cocycle_identity(t: int) -> dict | None:
        g = group_for(t)
        mu = random_probability_measure(g.full, q, rng)
        densities = [mu.radon_nikodym(phi).values for phi in g.elements()]
        for phi in g.elements():
            rho_phi = densities[phi]
            phinv = g.inv(phi)
            shifted = [g.mul(phinv, x) for x in g.elements()]
            for psi in g.elements():
                rho_both = densities[g.mul(phi, psi)]
                rho_psi = densities[psi]
                for x in g.elements():
                    if rho_both[x] != rho_psi[shifted[x]] * rho_phi[x]:
                        return {"mu": mu.to_json(), "triple": [phi, psi, x]}
        return None

    def translate_roundtrip(t: int) -> dict | None:
        g = group_for(t)
        mu = random_measure(g.full, q, rng, zero_weight=1)
        for phi in g.elements():
            for side in ("left", "right"):
                if mu.translate(phi, side).translate(g.inv(phi), side) != mu:
                    return {"mu": mu.to_json(), "phi": phi, "side": side}
        return None

    def density_integral(t: int) -> dict | None:
        g = group_for(t)
        mu = random_probability_measure(g.full, q, rng)
        for phi in g.elements():
            if integrate(mu.radon_nikodym(phi), mu) != mu.total_mass():
                return {"mu": mu.to_json(), "phi": phi}
        return None

    def probability_norm(t: int) -> dict | None:
        g = group_for(t)
        mu = random_probability_measure(g.full, q, rng)
        for x in g.elements():
            if mu.pointwise_norm(x) > UltraNorm.ONE:
                return {"mu": mu.to_json(), "x": x}
        return None

    def disjoint_union(t: int) -> dict | None:
        g = group_for(t)
        mu = random_measure(g.full, q, rng, zero_weight=1)
        members = list(g.elements())
        rng.shuffle(members)
        cut = rng.randrange(1, g.order)
        a_set, b_set = members[:cut], members[cut:]
        if mu.set_norm(a_set + b_set) != max(mu.set_norm(a_set), mu.set_norm(b_set)):
            return {"mu": mu.to_json(), "A": sorted(a_set), "B": sorted(b_set)}
        return None

    quarter = max(trials // 4, 1) if trials else 0
    return [
        _check("cocycle/identity_exhaustive", trials, cocycle_identity),
        _check("cocycle/translate_inverse_roundtrip", quarter, translate_roundtrip),
        _check("cocycle/density_integral_is_total_mass", quarter, density_integral),
        _check("cocycle/probability_pointwise_norm_bound", quarter, probability_norm),
        _check("cocycle/set_norm_disjoint_max", quarter, disjoint_union),
    ]


# --- approximate unit suite --------------------------------------------------


def family_prop5(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "prop5")
    g27 = cyclic(3, 3)
    chain = make_chain(g27)  # levels of sizes 27, 9, 3, 1
    nu = haar(g27, q)

    def random_coset_constant(level: Subgroup) -> ScalarFunction:
        # one random value per coset of the level
        values: dict[int, Fraction] = {}
        for g in g27.elements():
            rep = min(g27.mul(h, g) for h in level.members)
            if rep not in values:
                values[rep] = Fraction(rng.randrange(-8, 9), rng.choice((1, 2, 3)))
        return ScalarFunction(
            g27.full,
            tuple(values[min(g27.mul(h, g) for h in level.members)] for g in g27.elements()),
        )

    def unit_integral(t: int) -> dict | None:
        weight = nu if t % 2 == 0 else random_probability_measure(g27.full, q, rng)
        for i in range(len(chain)):
            if weight.mass(chain[i].members) == 0:
                continue  # degenerate support; the unit is undefined there by contract
            psi = approximate_unit(chain, weight, i)
            if integrate(psi, weight) != 1:
                return {"nu": weight.to_json(), "level": i}
        return None

    def support_shrinks(t: int) -> dict | None:
        units = [approximate_unit(chain, nu, i) for i in range(len(chain))]
        for i in range(len(units) - 1):
            if not set(units[i + 1].support()) <= set(units[i].support()):
                return {"level": i}
        return None

    def reproduces_coset_constant(t: int) -> dict | None:
        k = t % len(chain)
        f = random_coset_constant(chain[k])
        for i in range(k, len(chain)):
            psi = approximate_unit(chain, nu, i)
            if convolve_functions(psi, f, nu) != f:
                return {"constancy_level": k, "unit_level": i, "f": f.to_json()}
        return None

    def convergence_mechanism(t: int) -> dict | None:
        # constant on the size-3 level's cosets but not on the size-9 level's
        f = random_coset_constant(chain[2])
        if is_coset_constant(f, chain[1]):
            f = f + ScalarFunction.indicator(g27.full, chain[2].members)
        if is_coset_constant(f, chain[1]):
            return {"error": "could not build a function separating levels 1 and 2"}
        for i in range(len(chain)):
            smoothed = convolve_functions(approximate_unit(chain, nu, i), f, nu)
            expected_equal = is_coset_constant(f, chain[i])
            if (smoothed == f) != expected_equal:
                return {"unit_level": i, "expected_equal": expected_equal, "f": f.to_json()}
        return None

    quarter = max(trials // 4, 1) if trials else 0
    return [
        _check("prop5/unit_integral_one", quarter, unit_integral),
        _check("prop5/support_shrinks_along_chain", min(trials, 1), support_shrinks),
        _check("prop5/reproduces_coset_constant_functions", quarter, reproduces_coset_constant),
        _check("prop5/convergence_mechanism", quarter, convergence_mechanism),
    ]


# --- level convolution norm suite --------------------------------------------


def family_lemma16(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "lemma16")
    towers = [_haar_tower(_z9(), q), _haar_tower(_heis(), q)]

    def setup(t: int) -> tuple[Tower, Measure, Measure, Measure | None]:
        base = towers[t % 2]
        if t % 3 == 0:
            tower = base
        else:
            tower = _random_tower(base.chain.group, q, rng)
        mu0, mu1 = tower.measures[0], tower.measures[1]
        mu2 = tower.measures[2] if len(tower) > 2 else None
        return tower, mu0, mu1, mu2

    def norm_bounds(t: int) -> dict | None:
        tower, mu0, mu1, mu2 = setup(t)
        f_next = random_function(mu1.domain, q, rng)
        f = random_function(mu0.domain, q, rng)
        conv = level_convolve(f_next, f, mu1)
        sq_conv, shift_conv, total_conv = level_norm(conv, mu0, mu1)
        sq_next = weighted_sup_norm(f_next.square(), mu1).sqrt()
        _, shift_f, total_f = level_norm(f, mu0, mu1)
        total_next = level_norm(f_next, mu1, mu2)[2]
        witness = {
            "f_next": f_next.to_json(),
            "f": f.to_json(),
            "mu1": mu1.to_json(),
        }
        if sq_conv > sq_next * shift_f:
            return {**witness, "failure": "square-part intermediate bound"}
        if shift_conv > sq_next * shift_f:
            return {**witness, "failure": "shift-part intermediate bound"}
        if total_conv > total_next * total_f:
            return {**witness, "failure": "level norm bound"}
        if total_conv != max(sq_conv, shift_conv):
            return {**witness, "failure": "level norm is not the max of its parts"}
        return None

    def bilinearity(t: int) -> dict | None:
        tower, mu0, mu1, _ = setup(t)
        c1 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        c2 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        a1 = random_function(mu1.domain, q, rng)
        a2 = random_function(mu1.domain, q, rng)
        b = random_function(mu0.domain, q, rng)
        lhs = level_convolve(a1.scale(c1) + a2.scale(c2), b, mu1)
        rhs = level_convolve(a1, b, mu1).scale(c1) + level_convolve(a2, b, mu1).scale(c2)
        if lhs != rhs:
            return {"c1": _frac(c1), "c2": _frac(c2), "argument": "left"}
        b2 = random_function(mu0.domain, q, rng)
        lhs = level_convolve(a1, b.scale(c1) + b2.scale(c2), mu1)
        rhs = level_convolve(a1, b, mu1).scale(c1) + level_convolve(a1, b2, mu1).scale(c2)
        if lhs != rhs:
            return {"c1": _frac(c1), "c2": _frac(c2), "argument": "right"}
        return None

    return [
        _check("lemma16/level_convolution_norm_bounds", trials, norm_bounds),
        _check("lemma16/level_convolution_bilinearity", max(trials // 4, 1) if trials else 0, bilinearity),
    ]


# --- tower algebra suite (run under "all") -----------------------------------


def family_lemma18(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "lemma18")
    z9_tower = _haar_tower(_z9(), q)
    heis_tower = _haar_tower(_heis(), q)

    def tower_for(t: int) -> Tower:
        base = heis_tower if t % 2 else z9_tower
        return base if t % 3 == 0 else _random_tower(base.chain.group, q, rng)

    def involution_squared(t: int) -> dict | None:
        f = _random_element(tower_for(t), rng)
        if involution(involution(f)) != f:
            return {"components": [c.to_json() for c in f.components]}
        return None

    def involution_linear(t: int) -> dict | None:
        tower = tower_for(t)
        f, g = _random_element(tower, rng), _random_element(tower, rng)
        c = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        if involution(f + g) != involution(f) + involution(g):
            return {"failure": "additivity"}
        if involution(f.scale(c)) != involution(f).scale(c):
            return {"failure": "scalar compatibility", "c": _frac(c)}
        return None

    def submultiplicative(t: int) -> dict | None:
        tower = tower_for(t)
        f, g = _random_element(tower, rng), _random_element(tower, rng)
        if algebra_norm(star(f, g)) > algebra_norm(f) * algebra_norm(g):
            return {
                "f": [c.to_json() for c in f.components],
                "g": [c.to_json() for c in g.components],
            }
        return None

    def star_bilinear(t: int) -> dict | None:
        tower = tower_for(t)
        f1, f2, g = (_random_element(tower, rng) for _ in range(3))
        c1 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        c2 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        if star(f1.scale(c1) + f2.scale(c2), g) != star(f1, g).scale(c1) + star(f2, g).scale(c2):
            return {"argument": "left"}
        if star(g, f1.scale(c1) + f2.scale(c2)) != star(g, f1).scale(c1) + star(g, f2).scale(c2):
            return {"argument": "right"}
        return None

    def _first_nonzero(element: TowerElement) -> tuple[int, int, Fraction] | None:
        for level, comp in enumerate(element.components):
            for g, v in zip(comp.domain.members, comp.values):
                if v != 0:
                    return level, g, v
        return None

    def associativity_witness() -> PropertyOutcome:
        name = "lemma18/associativity_defect_witness"
        # fixed scalar-model witness: ((a*b)*b)[0] = 2 but (a*(b*b))[0] = 1
        a = ScalarSequence.of(1, 1, 2)
        b = ScalarSequence.of(1, 1, 1)
        left = c0_star(c0_star(a, b), b)
        right = c0_star(a, c0_star(b, b))
        if left[0] != 2 or right[0] != 1:
            return PropertyOutcome(
                name, "fail", 1,
                {"left": [_frac(v) for v in left.entries], "right": [_frac(v) for v in right.entries]},
            )
        for attempt in range(100):
            f, g, h = (_random_element(z9_tower, rng) for _ in range(3))
            spot = _first_nonzero(associativity_defect(f, g, h))
            if spot is not None:
                return PropertyOutcome(
                    name, "pass", attempt + 1,
                    {"scalar_groupings": ["2", "1"],
                     "tower_defect": {"level": spot[0], "element": spot[1], "value": _frac(spot[2])}},
                )
        return PropertyOutcome(name, "fail", 100, {"failure": "no non-associative triple found in 100 samples"})

    def commutativity_witness() -> PropertyOutcome:
        name = "lemma18/commutativity_defect_witness"
        for attempt in range(100):
            f, g = _random_element(heis_tower, rng), _random_element(heis_tower, rng)
            spot = _first_nonzero(commutativity_defect(f, g))
            if spot is not None:
                return PropertyOutcome(
                    name, "pass", attempt + 1,
                    {"tower_defect": {"level": spot[0], "element": spot[1], "value": _frac(spot[2])}},
                )
        return PropertyOutcome(name, "fail", 100, {"failure": "no non-commuting pair found in 100 samples"})

    quarter = max(trials // 4, 1) if trials else 0
    return [
        _check("lemma18/involution_squared_identity", trials, involution_squared),
        _check("lemma18/involution_linearity", quarter, involution_linear),
        _check("lemma18/star_submultiplicative", trials, submultiplicative),
        _check("lemma18/star_bilinearity", quarter, star_bilinear),
        associativity_witness(),
        commutativity_witness(),
    ]


# --- pairing identity suite --------------------------------------------------


def family_note19(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "note19")
    z9, heis = _z9(), _heis()

    def build(t: int) -> tuple[Tower, TowerElement]:
        group = heis if t % 4 == 3 else z9
        chain = make_chain(group)
        measures = []
        for i, level in enumerate(chain.levels):
            if i == 1:
                measures.append(random_symmetric_probability_measure(level, q, rng))
            elif t % 2 == 0:
                measures.append(haar(level, q))
            else:
                measures.append(random_probability_measure(level, q, rng))
        tower = Tower(chain, tuple(measures))
        # nested components: each one extends the restriction of the previous
        components: list[ScalarFunction] = []
        for level in reversed(chain.levels):
            deeper = components[0] if components else None
            values = []
            for g in level.members:
                if deeper is not None and g in deeper.domain:
                    values.append(deeper(g))
                else:
                    values.append(Fraction(rng.randrange(-(q - 1), q)) * q ** rng.randrange(0, 3))
            components.insert(0, ScalarFunction(level, tuple(values)))
        return tower, tower.element(components)

    def pairing_identity(t: int) -> dict | None:
        tower, f = build(t)
        lhs, rhs = autocorrelation_at_identity(f, 0)
        if lhs != rhs:
            return {"lhs": _frac(lhs), "rhs": _frac(rhs), "mu1": tower.measures[1].to_json()}
        return None

    def pairing_norm_bound(t: int) -> dict | None:
        tower, f = build(t)
        lhs, _ = autocorrelation_at_identity(f, 0)
        mu2 = tower.measures[2] if len(tower) > 2 else None
        bound = level_norm(f.components[1], tower.measures[1], mu2)[2]
        if abs_q(lhs, q) > bound:
            return {"lhs": _frac(lhs), "bound": _norm(bound)}
        return None

    def worked_value(t: int) -> dict | None:
        chain = make_chain(z9)
        tower = Tower(chain, tuple(haar(level, q) for level in chain.levels))
        f1 = ScalarFunction.from_map(chain[1], {0: Fraction(1), 3: Fraction(2), 6: Fraction(4)})
        f0 = ScalarFunction.from_map(
            z9.full, {0: Fraction(1), 3: Fraction(2), 6: Fraction(4), 1: Fraction(5), 4: Fraction(-1)}
        )
        f2 = ScalarFunction.from_map(chain[2], {0: Fraction(1)})
        element = tower.element([f0, f1, f2])
        lhs, rhs = autocorrelation_at_identity(element, 0)
        if lhs != 7 or rhs != 7:
            return {"lhs": _frac(lhs), "rhs": _frac(rhs)}
        return None

    return [
        _check("note19/pairing_identity", trials, pairing_identity),
        _check("note19/pairing_norm_bound", trials, pairing_norm_bound),
        _check("note19/worked_value_seven", min(trials, 1), worked_value),
    ]


# --- idempotents and indicator identity (run under "all") --------------------


def family_theorem22(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "theorem22")
    groups = [_z9(), cyclic(3, 3), _heis()]

    def indicator_fixed(t: int) -> dict | None:
        group = groups[t % len(groups)]
        tower = _haar_tower(group, q) if t % 2 == 0 else _random_tower(group, q, rng)
        ones = tower.indicators()
        result = star(ones, ones)
        for i, comp in enumerate(result.components):
            if comp != ScalarFunction.constant(tower.chain[i], 1):
                return {"group": group.descriptor, "level": i}
        return None

    def idempotent_levelwise(t: int) -> dict | None:
        group = groups[t % len(groups)]
        tower = _haar_tower(group, q) if t % 2 == 0 else _random_tower(group, q, rng)
        chain = tower.chain
        choices: list[Sequence[Subgroup]] = [chain.levels]
        if len(chain) >= 3:
            nested = [chain[1]] + [chain[i] for i in range(1, len(chain))]
            choices.append(nested)
        for inner in choices:
            try:
                e = idempotent_tower(tower, inner)
            except PreconditionError:
                continue  # zero-mass subgroup under a random measure; contract excludes it
            if star(e, e) != e.truncated(len(tower) - 1):
                return {
                    "group": group.descriptor,
                    "inner_sizes": [len(u) for u in inner],
                    "haar": t % 2 == 0,
                }
        return None

    def tail_independence(t: int) -> dict | None:
        length = 6
        entries = [Fraction(rng.randrange(-6, 7)) for _ in range(length)]
        beta = ScalarSequence(tuple(Fraction(rng.randrange(-6, 7)) for _ in range(length)))
        alpha = ScalarSequence(tuple(entries))
        cutoff = 3
        index = rng.randrange(cutoff + 1, length)
        changed = list(entries)
        changed[index] = changed[index] + 1
        alpha2 = ScalarSequence(tuple(changed))
        before = c0_star(alpha, beta)
        after = c0_star(alpha2, beta)
        for i in range(cutoff - 1):
            if before[i] != after[i]:
                return {"index_changed": index, "first_divergence": i}
        return None

    third = max(trials // 3, 1) if trials else 0
    return [
        _check("theorem22/indicator_convolution_fixed", third, indicator_fixed),
        _check("theorem22/idempotent_levelwise", third, idempotent_levelwise),
        _check("theorem22/tail_change_leaves_low_levels", third, tail_independence),
    ]


# --- ideal laws of the scalar model -------------------------------------------


def _k_level(s: ScalarSequence) -> int:
    """Largest i with s in K_i; a large sentinel for the zero sequence."""
    for i, v in enumerate(s.entries):
        if v != 0:
            return i - 1
    return 10**6


def _j_level(s: ScalarSequence) -> int:
    """Smallest i with s in J_i (-1 for the zero sequence)."""
    return len(s.entries) - 1


def enumerate_sequences(values: Sequence[Fraction], max_len: int) -> list[ScalarSequence]:
    """All canonical sequences (no trailing zero) over the given entries, length <= max_len."""
    out = [ScalarSequence(())]
    frontier: list[tuple[Fraction, ...]] = [()]
    for _ in range(max_len):
        frontier = [prefix + (v,) for prefix in frontier for v in values]
        out.extend(ScalarSequence(t) for t in frontier if t[-1] != 0)
    return out

def family_ideals(seed: int, trials: int, q: int, max_len: int = 4) -> list[PropertyOutcome]:
    rng = _rng(seed, "ideals")
    values = (Fraction(0), Fraction(1), Fraction(q), Fraction(1, q))

    def exhaustive_laws(t: int) -> dict | None:
        seqs = enumerate_sequences(values, max_len)
        spot = 0
        for a in seqs:
            ka, ja = _k_level(a), _j_level(a)
            for b in seqs:
                p = c0_star(a, b)
                kp, jp = _k_level(p), _j_level(p)
                if kp < _k_level(b):
                    return {"law": "left product must keep the vanishing head", "a": [_frac(v) for v in a.entries], "b": [_frac(v) for v in b.entries]}
                if kp < ka - 1:
                    return {"law": "right product must keep the head above one level down", "a": [_frac(v) for v in a.entries], "b": [_frac(v) for v in b.entries]}
                if jp > _j_level(b):
                    return {"law": "left product must respect the tail ideal", "a": [_frac(v) for v in a.entries], "b": [_frac(v) for v in b.entries]}
                if not a.is_zero() and jp > ja - 1:
                    return {"law": "right product must shorten the tail", "a": [_frac(v) for v in a.entries], "b": [_frac(v) for v in b.entries]}
                spot += 1
                if spot % 997 == 0:
                    # cross-check the fast level arithmetic against the membership predicate
                    for i in range(-1, max_len):
                        if ideal_member(p, "K", i) != (kp >= i):
                            return {"law": "level arithmetic disagrees with membership", "p": [_frac(v) for v in p.entries], "i": i}
                        if i >= 0 and ideal_member(p, "J", i) != (jp <= i):
                            return {"law": "level arithmetic disagrees with membership", "p": [_frac(v) for v in p.entries], "i": i}
        return None

    def reaches_previous(t: int) -> dict | None:
        length = rng.randrange(1, 6)
        y = ScalarSequence(tuple(Fraction(rng.randrange(-6, 7)) for _ in range(length)))
        i = rng.randrange(0, 4)
        # force y into K_{i-1}
        y = ScalarSequence(tuple(_ZERO if j < i else y[j] for j in range(length)))
        ones = ScalarSequence((Fraction(1),) * (length + 1))
        x = y.shifted_up()
        if not ideal_member(x, "K", i):
            return {"y": [_frac(v) for v in y.entries], "i": i, "failure": "shifted preimage not in K_i"}
        if c0_star(x, ones) != y:
            return {"y": [_frac(v) for v in y.entries], "i": i, "failure": "shifted preimage does not map back"}
        if c0_star(ones, y) != y:
            return {"y": [_frac(v) for v in y.entries], "i": i, "failure": "left unit action does not fix K_i"}
        return None

    def strict_witnesses() -> PropertyOutcome:
        name = "ideals/pinned_strictness_witnesses"
        x = ScalarSequence.of(0, 0, q)
        alpha = ScalarSequence.of(0, 1)
        product = c0_star(x, alpha)
        if not (ideal_member(x, "K", 1) and ideal_member(product, "K", 0) and not ideal_member(product, "K", 1)):
            return PropertyOutcome(name, "fail", 1, {"witness": "head ideal", "product": [_frac(v) for v in product.entries]})
        # every right product out of J_2 lands one tail level down, so (0,0,1) has no preimage
        delta = ScalarSequence.of(0, 0, 1)
        if not ideal_member(delta, "J", 2) or ideal_member(delta, "J", 1):
            return PropertyOutcome(name, "fail", 1, {"witness": "tail ideal element misclassified"})
        for a in enumerate_sequences((Fraction(0), Fraction(1), Fraction(q)), 3):
            if not ideal_member(a, "J", 2):
                continue
            for b in enumerate_sequences((Fraction(0), Fraction(1), Fraction(q)), 3):
                if c0_star(a, b) == delta:
                    return PropertyOutcome(
                        name, "fail", 1,
                        {"witness": "tail ideal strictness",
                         "a": [_frac(v) for v in a.entries], "b": [_frac(v) for v in b.entries]},
                    )
        exhibit = {
            "head_ideal": {
                "x": [_frac(v) for v in x.entries],
                "alpha": [_frac(v) for v in alpha.entries],
                "x_star_alpha": [_frac(v) for v in product.entries],
                "statement": "x in K_1, x*alpha in K_0 but not in K_1",
            },
            "tail_ideal": {
                "element": [_frac(v) for v in delta.entries],
                "statement": "in J_2, unreachable as a right product out of J_2",
            },
        }
        return PropertyOutcome(name, "pass", 1, exhibit)

    return [
        _check("ideals/exhaustive_membership_laws", min(trials, 1), exhaustive_laws),
        _check("ideals/head_ideal_right_action_reaches_previous", trials, reaches_previous),
        strict_witnesses(),
    ]


# --- isometry suite ----------------------------------------------------------


def family_isometry(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "isometry")
    z9, heis = _z9(), _heis()
    z3 = cyclic(3, 1)
    pinned = Measure.from_map(z3, {0: Fraction(5, 6), 1: Fraction(1, 12), 2: Fraction(1, 12)}, q=5, probability=True)

    def measure_for(t: int) -> Measure:
        if t % 5 == 4:
            return random_probability_measure(heis.full, q, rng)
        if t % 5 == 3:
            return pinned
        return random_probability_measure(z9.full, q, rng)

    def isometry_exhaustive(t: int) -> dict | None:
        mu = measure_for(t)
        group = mu.domain.group
        for h in group.elements():
            ok, counterexample = isometry_check(weighted_regular_rep(mu, h), mu, rng, samples=3)
            if not ok:
                return {"mu": mu.to_json(), "h": h, "f": counterexample.to_json()}
        return None

    def homomorphism(t: int) -> dict | None:
        mu = measure_for(t)
        group = mu.domain.group
        ops = {h: weighted_regular_rep(mu, h) for h in group.elements()}
        if group.order <= 9:
            pairs = [(a, b) for a in group.elements() for b in group.elements()]
        else:
            pairs = [(rng.randrange(group.order), rng.randrange(group.order)) for _ in range(12)]
        for a, b in pairs:
            if ops[group.mul(a, b)] != ops[a].compose(ops[b]):
                return {"mu": mu.to_json(), "pair": [a, b]}
        return None

    def intertwining(t: int) -> dict | None:
        mu = measure_for(t)
        group = mu.domain.group
        a_fn = random_function(mu.domain, q, rng)
        h = rng.randrange(group.order)
        lhs = averaged_operator(a_fn, mu, h)
        rhs = weighted_regular_rep(mu, h).compose(averaged_operator(a_fn, mu, group.identity))
        if lhs != rhs:
            return {"mu": mu.to_json(), "a": a_fn.to_json(), "h": h}
        return None

    def checker_detects(t: int) -> dict | None:
        mu = pinned
        scaled = Operator.identity(mu.domain).scale(q)
        ok, counterexample = isometry_check(scaled, mu)
        if ok or counterexample is None:
            return {"failure": "scaled identity slipped through"}
        ok, _ = isometry_check(Operator.identity(mu.domain), mu)
        if not ok:
            return {"failure": "identity operator rejected"}
        return None

    eighth = max(trials // 8, 1) if trials else 0
    return [
        _check("isometry/weighted_translation_isometry", eighth, isometry_exhaustive),
        _check("isometry/weighted_translation_homomorphism", eighth, homomorphism),
        _check("isometry/averaged_operator_intertwining", trials, intertwining),
        _check("isometry/checker_detects_scaling", min(trials, 1), checker_detects),
    ]


# --- oracle agreement (run under "all") ---------------------------------------


def family_oracle(seed: int, trials: int, q: int) -> list[PropertyOutcome]:
    rng = _rng(seed, "oracle")
    z9, heis = _z9(), _heis()

    def setup(t: int) -> tuple[FiniteGroup, Subgroup]:
        group = heis if t % 3 == 2 else z9
        chain = make_chain(group)
        sub = chain[1] if t % 2 == 0 else group.full
        return group, sub

    def measure_conv(t: int) -> dict | None:
        group, sub = setup(t)
        nu = random_measure(sub, q, rng, zero_weight=1)
        mu = random_measure(group.full, q, rng, zero_weight=1)
        if convolve_measures(nu, mu) != oracles.convolve_measures_bruteforce(nu, mu):
            return {"nu": nu.to_json(), "mu": mu.to_json()}
        return None

    def function_conv(t: int) -> dict | None:
        group, sub = setup(t)
        nu = random_measure(sub, q, rng)
        q_fn = random_function(sub, q, rng)
        f = random_function(group.full, q, rng)
        if convolve_functions(q_fn, f, nu) != oracles.convolve_functions_bruteforce(q_fn, f, nu):
            return {"q_fn": q_fn.to_json(), "f": f.to_json(), "nu": nu.to_json()}
        return None

    def level_conv(t: int) -> dict | None:
        group, _ = setup(t)
        tower = _random_tower(group, q, rng)
        f_next = random_function(tower.chain[1], q, rng)
        f = random_function(tower.chain[0], q, rng)
        mu1 = tower.measures[1]
        if level_convolve(f_next, f, mu1) != oracles.level_convolve_bruteforce(f_next, f, mu1):
            return {"f_next": f_next.to_json(), "f": f.to_json(), "mu1": mu1.to_json()}
        return None

    def star_conv(t: int) -> dict | None:
        group, _ = setup(t)
        tower = _random_tower(group, q, rng)
        f, g = _random_element(tower, rng), _random_element(tower, rng)
        if star(f, g) != oracles.star_bruteforce(f, g):
            return {"group": group.descriptor}
        return None

    def set_norm_brute(t: int) -> dict | None:
        mu = random_measure(z9.full, q, rng, zero_weight=2)
        members = list(z9.elements())
        rng.shuffle(members)
        subset = tuple(sorted(members[: rng.randrange(1, 10)]))
        if mu.set_norm(subset) != oracles.set_norm_bruteforce(mu, subset):
            return {"mu": mu.to_json(), "subset": list(subset)}
        return None

    def overlap_supports_product(t: int) -> dict | None:
        group, _ = setup(t)
        mu = random_measure(group.full, q, rng, zero_weight=1)
        members = list(group.elements())
        rng.shuffle(members)
        a_set = set(members[: rng.randrange(1, group.order)])
        rng.shuffle(members)
        b_set = set(members[: rng.randrange(1, group.order)])
        b_inv = {group.inv(b) for b in b_set}
        zeta = overlap_function(mu, a_set, b_inv)
        products = {group.mul(a, b) for a in a_set for b in b_set}
        for x in group.elements():
            intersection = a_set & {group.mul(x, b) for b in b_inv}
            if zeta(x) != mu.mass(intersection):
                return {"mu": mu.to_json(), "A": sorted(a_set), "B": sorted(b_set), "x": x,
                        "failure": "overlap disagrees with the direct intersection mass"}
            if not mu.set_norm(intersection).is_zero and x not in products:
                return {"mu": mu.to_json(), "A": sorted(a_set), "B": sorted(b_set), "x": x,
                        "failure": "positive overlap outside the product set"}
        return None

    return [
        _check("oracle/measure_convolution_bruteforce", trials, measure_conv),
        _check("oracle/function_convolution_bruteforce", trials, function_conv),
        _check("oracle/level_convolution_bruteforce", trials, level_conv),
        _check("oracle/star_bruteforce", max(trials // 4, 1) if trials else 0, star_conv),
        _check("oracle/set_norm_subset_enumeration", trials, set_norm_brute),
        _check("oracle/overlap_positive_implies_product", max(trials // 4, 1) if trials else 0, overlap_supports_product),
    ]


FAMILIES: dict[str, Callable[[int, int, int], list[PropertyOutcome]]] = {
    "lemma2": family_lemma2,
    "cocycle": family_cocycle,
    "prop5": family_prop5,
    "lemma16": family_lemma16,
    "note19": family_note19,
    "ideals": family_ideals,
    "isometry": family_isometry,
}

EXTRA_FAMILIES: dict[str, Callable[[int, int, int], list[PropertyOutcome]]] = {
    "scalar": family_scalar,
    "groups": family_groups,
    "lemma18": family_lemma18,
    "theorem22": family_theorem22,
    "oracle": family_oracle,
}


def run_suite(suite: str, seed: int, trials: int, q: int, command: list[str] | None = None) -> RunReport:
    """Run one named family, or every family for ``all``; trials == 0 runs nothing."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "all":
        names = list(EXTRA_FAMILIES) + list(FAMILIES)
        runners = {**EXTRA_FAMILIES, **FAMILIES}
    else:
        names = [suite]
        runners = FAMILIES
    report = RunReport(command or [], suite, seed, trials, q, sorted(names))
    if trials == 0:
        return report
    for name in sorted(names):
        report.properties.extend(runners[name](seed, trials, q))
    return report
