from fractions import Fraction
from random import Random

import pytest

from ultrameasure import (
    Measure,
    PreconditionError,
    ScalarFunction,
    UltraNorm,
    ValidationError,
    approximate_unit,
    convolve_functions,
    convolve_measures,
    cyclic,
    dirac,
    haar,
    heisenberg,
    integrate,
    is_coset_constant,
    level_convolve,
    level_norm,
    make_chain,
    overlap_function,
    random_function,
    random_measure,
    random_probability_measure,
    translated_sup_norm,
    weighted_sup_norm,
)
from ultrameasure.oracles import (
    convolve_functions_bruteforce,
    convolve_measures_bruteforce,
    level_convolve_bruteforce,
)


# --- measure convolution ------------------------------------------------------


def test_point_mass_convolution_is_translation(nu3, z3):
    for h in z3.elements():
        assert convolve_measures(dirac(z3, h, 5), nu3) == nu3.translate(h, "left")


def test_convolution_with_haar_is_haar(z9):
    rng = Random("haarconv")
    unif = haar(z9, 5)
    for _ in range(5):
        nu = random_probability_measure(z9, 5, rng)
        assert convolve_measures(nu, unif) == unif


def test_self_convolution_frozen_value(nu3):
    # double-sum oracle value, frozen: (5/6,1/12,1/12) * itself
    conv = convolve_measures(nu3, nu3)
    assert conv.atoms == (Fraction(17, 24), Fraction(7, 48), Fraction(7, 48))
    assert conv == convolve_measures_bruteforce(nu3, nu3)


def test_measure_convolution_norm_bound(z9, heis):
    rng = Random("lemma2m")
    for group in (z9, heis):
        h_sub = make_chain(group)[1]
        for _ in range(25):
            nu = random_measure(h_sub, 5, rng, zero_weight=1)
            mu = random_measure(group.full, 5, rng, zero_weight=1)
            conv = convolve_measures(nu, mu)
            assert conv.whole_norm() <= nu.whole_norm() * mu.whole_norm()
            assert conv == convolve_measures_bruteforce(nu, mu)


def test_measure_convolution_rejects_non_subgroup(z9, z3):
    nu = haar(z3, 5)
    with pytest.raises(ValidationError):
        convolve_measures(nu, haar(z9, 5))


# --- function convolution -------------------------------------------------------


def test_function_convolution_example(nu3, z3):
    q_fn = ScalarFunction.constant(z3, 1)
    f = ScalarFunction.indicator(z3, [0])
    result = convolve_functions(q_fn, f, nu3)
    assert result.values == (Fraction(5, 6), Fraction(1, 12), Fraction(1, 12))


def test_function_convolution_normalized_weight_fixes_constants(z9):
    rng = Random("const")
    nu = random_probability_measure(z9, 5, rng)
    q_fn = ScalarFunction.constant(z9, 1)  # integral 1 against a probability measure
    f = ScalarFunction.constant(z9, Fraction(7, 3))
    assert convolve_functions(q_fn, f, nu) == f


def test_function_convolution_zero_left_factor(z9, z9_haar):
    f = random_function(z9.full, 5, Random("zf"))
    zero = ScalarFunction.constant(z9, 0)
    assert convolve_functions(zero, f, z9_haar).is_zero()


def test_function_convolution_norm_bound_and_oracle(z9, heis):
    rng = Random("lemma2f")
    for group in (z9, heis):
        h_sub = make_chain(group)[1]
        for _ in range(20):
            nu = random_measure(h_sub, 5, rng, zero_weight=1)
            mu = random_measure(group.full, 5, rng, zero_weight=1)
            q_fn = random_function(h_sub, 5, rng)
            f = random_function(group.full, 5, rng)
            conv = convolve_functions(q_fn, f, nu)
            assert conv == convolve_functions_bruteforce(q_fn, f, nu)
            lhs = translated_sup_norm(conv, mu, h_sub)
            assert lhs <= weighted_sup_norm(q_fn, nu) * translated_sup_norm(f, mu, h_sub)


def test_convolution_bilinearity(z9):
    rng = Random("bilin")
    h_sub = make_chain(z9)[1]
    for _ in range(10):
        c1 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        c2 = Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3)))
        nu1, nu2 = (random_measure(h_sub, 5, rng) for _ in range(2))
        mu = random_measure(z9.full, 5, rng)
        assert convolve_measures(nu1.scale(c1) + nu2.scale(c2), mu) == (
            convolve_measures(nu1, mu).scale(c1) + convolve_measures(nu2, mu).scale(c2)
        )
        q1, q2 = (random_function(h_sub, 5, rng) for _ in range(2))
        f = random_function(z9.full, 5, rng)
        assert convolve_functions(q1.scale(c1) + q2.scale(c2), f, nu1) == (
            convolve_functions(q1, f, nu1).scale(c1) + convolve_functions(q2, f, nu1).scale(c2)
        )


# --- norms ---------------------------------------------------------------------


def test_weighted_sup_norm_examples(nu3, z9):
    f = ScalarFunction.from_map(nu3.domain, {0: Fraction(1), 1: Fraction(5), 2: Fraction(1, 5)})
    assert weighted_sup_norm(f, nu3) == UltraNorm(Fraction(1))
    unif = haar(z9, 5)
    assert weighted_sup_norm(ScalarFunction.constant(z9, 1), unif) == UltraNorm.ONE
    trivial = cyclic(2, 1)
    point = dirac(trivial, 0, 5)
    assert translated_sup_norm(
        ScalarFunction.constant(trivial, 3), point, trivial.subgroup((0,))
    ) == weighted_sup_norm(ScalarFunction.constant(trivial, 3), point)


def test_translation_preserves_translated_norm(z9):
    rng = Random("lemma3")
    h_sub = make_chain(z9)[1]
    for _ in range(10):
        mu = random_measure(z9.full, 5, rng, zero_weight=1)
        f = random_function(z9.full, 5, rng)
        base_sub = translated_sup_norm(f, mu, h_sub)
        for shift in h_sub.members:
            assert translated_sup_norm(f.translate(shift), mu, h_sub) == base_sub
        base_full = translated_sup_norm(f, mu, z9.full)
        for shift in z9.elements():
            assert translated_sup_norm(f.translate(shift), mu, z9.full) == base_full


def test_level_norm_examples(z9, z9_chain, z9_haar):
    mu_next = haar(z9_chain[1], 5)
    ones = ScalarFunction.constant(z9, 1)
    assert level_norm(ones, z9_haar, mu_next) == (UltraNorm.ONE,) * 3
    zero = ScalarFunction.constant(z9, 0)
    assert all(n.is_zero for n in level_norm(zero, z9_haar, mu_next))
    scaled = ScalarFunction.constant(z9, 5)
    assert level_norm(scaled, z9_haar, mu_next) == (UltraNorm(Fraction(-1)),) * 3


def test_level_norm_max_consistency(z9, z9_chain):
    rng = Random("lvlnorm")
    mu0 = random_probability_measure(z9.full, 5, rng)
    mu1 = random_probability_measure(z9_chain[1], 5, rng)
    for _ in range(20):
        f = random_function(z9.full, 5, rng)
        square, shift, total = level_norm(f, mu0, mu1)
        assert total == max(square, shift)


# --- level convolution ----------------------------------------------------------


def test_indicator_identity_on_levels(z9_chain):
    mu1 = haar(z9_chain[1], 5)
    ch_sub = ScalarFunction.constant(z9_chain[1], 1)
    ch_full = ScalarFunction.constant(z9_chain[0], 1)
    assert level_convolve(ch_sub, ch_full, mu1) == ch_full


def test_trivial_subgroup_level_convolution(z9, z9_chain):
    trivial = z9_chain[2]
    mu = dirac(trivial, 0, 5)
    f = random_function(z9.full, 5, Random("triv"))
    unit = ScalarFunction.constant(trivial, 1)
    assert level_convolve(unit, f, mu) == f


def test_level_convolution_frozen_example(z9, z9_chain):
    mu1 = haar(z9_chain[1], 5)
    f_next = ScalarFunction.from_map(z9_chain[1], {0: Fraction(1), 3: Fraction(2), 6: Fraction(4)})
    f = ScalarFunction.indicator(z9.full, [0])
    result = level_convolve(f_next, f, mu1)
    expected = {0: Fraction(1, 3), 3: Fraction(2, 3), 6: Fraction(4, 3)}
    assert result == ScalarFunction.from_map(z9.full, expected)
    assert result == level_convolve_bruteforce(f_next, f, mu1)


def test_level_convolution_requires_probability(z9, z9_chain):
    not_prob = Measure.from_map(z9_chain[1], {0: Fraction(2), 3: Fraction(-1)}, q=5)
    with pytest.raises(ValidationError, match="probability"):
        level_convolve(ScalarFunction.constant(z9_chain[1], 1), ScalarFunction.constant(z9, 1), not_prob)


def test_level_convolution_norm_bounds(z9, heis):
    rng = Random("lemma16")
    for group in (z9, heis):
        chain = make_chain(group)
        for trial in range(25):
            mus = [
                haar(level, 5) if trial % 2 else random_probability_measure(level, 5, rng)
                for level in chain.levels
            ]
            f_next = random_function(chain[1], 5, rng)
            f = random_function(chain[0], 5, rng)
            conv = level_convolve(f_next, f, mus[1])
            assert conv == level_convolve_bruteforce(f_next, f, mus[1])
            sq_conv, shift_conv, total_conv = level_norm(conv, mus[0], mus[1])
            sq_next = weighted_sup_norm(f_next.square(), mus[1]).sqrt()
            shift_f = level_norm(f, mus[0], mus[1])[1]
            total_f = level_norm(f, mus[0], mus[1])[2]
            total_next = level_norm(f_next, mus[1], mus[2])[2]
            assert sq_conv <= sq_next * shift_f
            assert shift_conv <= sq_next * shift_f
            assert total_conv <= total_next * total_f


# --- approximate units ------------------------------------------------------------


def test_unit_examples(z9, z9_chain, z9_haar):
    psi1 = approximate_unit(z9_chain, z9_haar, 1)
    assert psi1 == ScalarFunction.indicator(z9.full, [0, 3, 6]).scale(3)
    assert integrate(psi1, z9_haar) == 1
    psi0 = approximate_unit(z9_chain, z9_haar, 0)
    assert psi0 == ScalarFunction.constant(z9, 1)
    psi_last = approximate_unit(z9_chain, z9_haar, 2)
    assert psi_last == ScalarFunction.indicator(z9.full, [0]).scale(9)


def test_unit_degenerate_support(z9, z9_chain):
    vanishing = Measure.from_map(
        z9, {0: Fraction(1, 2), 3: Fraction(-1, 2), 1: Fraction(1)}, q=5
    )  # the subgroup {0,3,6} has mass 0
    with pytest.raises(PreconditionError, match="degenerate"):
        approximate_unit(z9_chain, vanishing, 1)


def test_unit_reproduces_coset_constant_functions(z27):
    chain = make_chain(z27)
    nu = haar(z27, 5)
    rng = Random("prop5")
    for k in range(len(chain)):
        values = {}
        for g in z27.elements():
            rep = g % (3**k) if k <= 3 else g
            values.setdefault(rep, Fraction(rng.randrange(-8, 9)))
        f = ScalarFunction(z27.full, tuple(values[g % (3**k)] for g in z27.elements()))
        assert is_coset_constant(f, chain[k])
        for i in range(k, len(chain)):
            assert convolve_functions(approximate_unit(chain, nu, i), f, nu) == f


def test_unit_convergence_mechanism(z27):
    chain = make_chain(z27)
    nu = haar(z27, 5)
    f = ScalarFunction.indicator(z27.full, [0])
    smoothed = [convolve_functions(approximate_unit(chain, nu, i), f, nu) for i in range(4)]
    assert smoothed[0] != f and smoothed[1] != f and smoothed[2] != f
    assert smoothed[3] == f  # constant on singleton cosets only
    # constant on the level-2 cosets but not level-1: equal from level 2 on
    g = ScalarFunction(z27.full, tuple(Fraction((x % 9) ** 2 % 7) for x in z27.elements()))
    assert is_coset_constant(g, chain[2]) and not is_coset_constant(g, chain[1])
    results = [convolve_functions(approximate_unit(chain, nu, i), g, nu) for i in range(4)]
    assert results[0] != g and results[1] != g
    assert results[2] == g and results[3] == g


def test_unit_support_shrinks(z27):
    chain = make_chain(z27)
    nu = haar(z27, 5)
    units = [approximate_unit(chain, nu, i) for i in range(len(chain))]
    for i in range(len(units) - 1):
        assert set(units[i + 1].support()) <= set(units[i].support())


# --- overlap function ---------------------------------------------------------------


def test_overlap_examples(nu3, z3):
    zeta = overlap_function(nu3, {0, 1}, {0})
    assert zeta.values == (Fraction(5, 6), Fraction(1, 12), Fraction(0))
    full = overlap_function(nu3, {0, 2}, set(z3.elements()))
    assert full.values == (nu3.mass([0, 2]),) * 3
    assert overlap_function(nu3, set(), {0, 1}).is_zero()


def test_overlap_positive_norm_inside_product_set(z9, heis):
    rng = Random("cor8")
    for group in (z9, heis):
        mu = random_measure(group.full, 5, rng, zero_weight=1)
        members = list(group.elements())
        rng.shuffle(members)
        a_set = set(members[:4])
        rng.shuffle(members)
        b_set = set(members[:3])
        products = {group.mul(a, b) for a in a_set for b in b_set}
        b_inv = {group.inv(b) for b in b_set}
        zeta = overlap_function(mu, a_set, b_inv)
        for x in group.elements():
            intersection = a_set & {group.mul(x, b) for b in b_inv}
            assert zeta(x) == mu.mass(intersection)
            if not mu.set_norm(intersection).is_zero:
                assert x in products
