from random import Random

import pytest

from ultrameasure import (
    ValidationError,
    cyclic,
    from_table,
    group_from_descriptor,
    heisenberg,
    make_chain,
    quotient_project,
)
from ultrameasure.groups import Subgroup


def test_cyclic_law_examples():
    g = cyclic(3, 2)
    assert g.mul(4, 7) == 2
    assert g.mul(g.identity, 5) == 5
    assert g.inv(4) == 5


@pytest.mark.parametrize("group", [cyclic(3, 2), cyclic(2, 3), heisenberg(3, 1), heisenberg(2, 2)])
def test_group_axioms_exhaustive(group):
    e = group.identity
    for a in group.elements():
        assert group.mul(e, a) == a
        assert group.mul(a, e) == a
        assert group.mul(a, group.inv(a)) == e
        assert group.mul(group.inv(a), a) == e
    for a in group.elements():
        for b in group.elements():
            ab = group.mul(a, b)
            for c in group.elements():
                assert group.mul(ab, c) == group.mul(a, group.mul(b, c))


def test_large_cyclic_sampled_associativity():
    g = cyclic(3, 5)
    assert g.order == 243
    rng = Random("assoc:243")
    for _ in range(20000):
        a, b, c = rng.randrange(243), rng.randrange(243), rng.randrange(243)
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_order_cap_enforced():
    with pytest.raises(ValidationError):
        cyclic(2, 8)
    with pytest.raises(ValidationError):
        heisenberg(3, 2)


def test_heisenberg_noncommutative():
    g = heisenberg(3, 1)
    witnesses = [(a, b) for a in g.elements() for b in g.elements() if g.mul(a, b) != g.mul(b, a)]
    assert witnesses, "the mod-3 Heisenberg group must be non-abelian"


def test_table_group_validation():
    klein = from_table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert klein.identity == 0
    assert klein.inv(3) == 3
    with pytest.raises(ValidationError):
        from_table([[0, 1], [1, 1]])  # not a group: 1 has no inverse / not associative


def test_foreign_element_rejected():
    g = cyclic(3, 1)
    with pytest.raises(ValidationError):
        g.mul(0, 3)
    with pytest.raises(ValidationError):
        g.inv(-1)


def test_full_chain_cyclic():
    chain = make_chain(cyclic(3, 2))
    assert [len(level) for level in chain.levels] == [9, 3, 1]
    assert list(chain[1].members) == [0, 3, 6]


def test_explicit_chain():
    g = cyclic(2, 3)
    chain = make_chain(g, [[0, 1, 2, 3, 4, 5, 6, 7], [0, 2, 4, 6], [0, 4]])
    assert [len(level) for level in chain.levels] == [8, 4, 2]
    single = make_chain(g, [list(range(8))])
    assert len(single) == 1


def test_heisenberg_full_chain_nested():
    chain = make_chain(heisenberg(3, 1))
    assert [len(level) for level in chain.levels] == [27, 3, 1]
    for i in range(len(chain) - 1):
        assert chain[i + 1].is_subset_of(chain[i])


def test_chain_closure_error_names_pair():
    g = cyclic(3, 2)
    with pytest.raises(ValidationError, match="not closed"):
        make_chain(g, [[0, 1, 2, 3, 4, 5, 6, 7, 8], [0, 3, 4]])


def test_chain_nesting_error():
    g = cyclic(3, 2)
    with pytest.raises(ValidationError, match="not contained"):
        make_chain(g, [[0, 3, 6], [0, 1, 2, 3, 4, 5, 6, 7, 8]])


def test_subgroup_closure_exhaustive():
    g = cyclic(3, 2)
    sub = Subgroup(g, (0, 3, 6))
    for a in sub.members:
        assert g.inv(a) in sub
        for b in sub.members:
            assert g.mul(a, b) in sub


def test_quotient_projection_examples():
    fine, coarse = cyclic(3, 3), cyclic(3, 2)
    assert quotient_project(fine, coarse, 14) == 5
    assert quotient_project(fine, coarse, 0) == 0
    assert quotient_project(cyclic(3, 2), cyclic(3, 1), 7) == 1


def test_quotient_projection_is_homomorphism():
    fine, coarse = cyclic(3, 3), cyclic(3, 2)
    for a in fine.elements():
        for b in fine.elements():
            lhs = quotient_project(fine, coarse, fine.mul(a, b))
            rhs = coarse.mul(quotient_project(fine, coarse, a), quotient_project(fine, coarse, b))
            assert lhs == rhs


def test_quotient_projection_rejects_mismatched_primes():
    with pytest.raises(ValidationError):
        quotient_project(cyclic(3, 2), cyclic(2, 1), 0)


def test_group_descriptor_roundtrip():
    for g in (cyclic(3, 2), heisenberg(3, 1)):
        rebuilt = group_from_descriptor(g.descriptor)
        assert rebuilt == g
    table = from_table([[0, 1], [1, 0]])
    assert group_from_descriptor(table.descriptor) == table
