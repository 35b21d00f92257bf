from fractions import Fraction
from random import Random

import pytest

from ultrameasure import (
    Measure,
    Operator,
    PreconditionError,
    ScalarFunction,
    ValidationError,
    averaged_operator,
    cyclic,
    haar,
    heisenberg,
    isometry_check,
    random_function,
    random_probability_measure,
    weighted_regular_rep,
    weighted_sup_norm,
)


def test_haar_weight_gives_permutation(z9):
    unif = haar(z9, 5)
    for h in z9.elements():
        T = weighted_regular_rep(unif, h)
        for row in T.rows:
            assert sorted(row) == [Fraction(0)] * 8 + [Fraction(1)]
        f = random_function(z9.full, 5, Random(f"perm:{h}"))
        assert T.apply(f) == f.translate(h)


def test_identity_shift_gives_identity_operator(nu3, z3):
    assert weighted_regular_rep(nu3, z3.identity) == Operator.identity(nu3.domain)


def test_weighted_rep_worked_example(nu3):
    T = weighted_regular_rep(nu3, 1)
    f = ScalarFunction.from_map(nu3.domain, {0: Fraction(1), 1: Fraction(5), 2: Fraction(1, 5)})
    out = T.apply(f)
    assert out(0) == Fraction(1, 50)
    assert weighted_sup_norm(out, nu3) == weighted_sup_norm(f, nu3)


def test_weighted_rep_requires_quasi_invariance(z3):
    holed = Measure.from_map(z3, {0: Fraction(1)}, q=5)
    with pytest.raises(PreconditionError):
        weighted_regular_rep(holed, 1)


def test_isometry_exhaustive(nu3, z9, heis):
    rng = Random("iso")
    measures = [nu3, random_probability_measure(z9, 5, rng), random_probability_measure(heis.full, 5, rng)]
    for mu in measures:
        group = mu.domain.group
        for h in group.elements():
            ok, counterexample = isometry_check(weighted_regular_rep(mu, h), mu, rng, samples=4)
            assert ok, (mu.to_json(), h, counterexample and counterexample.to_json())


def test_isometry_check_detects_scaling(nu3):
    scaled = Operator.identity(nu3.domain).scale(5)
    ok, counterexample = isometry_check(scaled, nu3)
    assert not ok and counterexample is not None
    ok, counterexample = isometry_check(Operator.identity(nu3.domain), nu3)
    assert ok and counterexample is None


def test_homomorphism_with_cocycle_twist(z9, heis):
    rng = Random("hom")
    for group in (z9, heis):
        mu = random_probability_measure(group.full, 5, rng)
        ops = {h: weighted_regular_rep(mu, h) for h in group.elements()}
        pairs = (
            [(a, b) for a in group.elements() for b in group.elements()]
            if group.order <= 9
            else [(rng.randrange(group.order), rng.randrange(group.order)) for _ in range(40)]
        )
        for a, b in pairs:
            assert ops[group.mul(a, b)] == ops[a].compose(ops[b])


def test_averaged_operator_identity_cases(nu3, z3):
    zero_fn = ScalarFunction.constant(z3, 0)
    assert averaged_operator(zero_fn, nu3, z3.identity, lam=1) == Operator.identity(nu3.domain)
    a_fn = random_function(z3.full, 5, Random("avg"))
    explicit = Operator.zero(nu3.domain)
    for g in z3.elements():
        explicit = explicit + weighted_regular_rep(nu3, g).scale(a_fn(g) * nu3.atom(g))
    assert averaged_operator(a_fn, nu3, z3.identity) == explicit


def test_intertwining_exact(nu3, z3, z9):
    rng = Random("intertwine")
    ones = ScalarFunction.constant(z3, 1)
    for h in z3.elements():
        lhs = averaged_operator(ones, nu3, h)
        rhs = weighted_regular_rep(nu3, h).compose(averaged_operator(ones, nu3, z3.identity))
        assert lhs == rhs
    mu = random_probability_measure(z9, 5, rng)
    for _ in range(20):
        a_fn = random_function(z9.full, 5, rng)
        h = rng.randrange(z9.order)
        lhs = averaged_operator(a_fn, mu, h)
        rhs = weighted_regular_rep(mu, h).compose(averaged_operator(a_fn, mu, z9.identity))
        assert lhs == rhs


def test_operator_json_roundtrip(nu3):
    T = weighted_regular_rep(nu3, 2)
    assert Operator.from_json(T.to_json(), nu3.domain) == T
    with pytest.raises(ValidationError):
        Operator.from_json({"dim": 5, "rows": []}, nu3.domain)


def test_operator_apply_domain_mismatch(nu3, z9):
    T = Operator.identity(nu3.domain)
    with pytest.raises(ValidationError):
        T.apply(ScalarFunction.constant(z9, 1))
