"""Chain decompositions, solution vectors, ordering, and product lattices."""
import random
from collections import Counter

import pytest

from latticediv.errors import ContractViolationError, InputError
from latticediv.lattice import (
    ChainDecomposition,
    CompactLattice,
    build_product_irreducibles,
    is_left_right_ordered,
    join,
    leq,
    lro,
    meet,
)
from latticediv.poset import Poset

from corpus import six_element_lattice


def multiset(decomp, vectors):
    counts = Counter()
    for vec in vectors:
        counts.update(decomp.elements_of(vec))
    return counts


def test_decomposition_validation():
    with pytest.raises(InputError):
        ChainDecomposition(((),))
    with pytest.raises(InputError):
        ChainDecomposition(((0, 1), (1, 2)))
    with pytest.raises(InputError):
        ChainDecomposition(((0, 1), (3,)))


def test_decomposition_lookup():
    decomp = ChainDecomposition(((0, 1), (2, 3, 4)))
    assert decomp.r == 2 and decomp.n == 5
    assert decomp.position(3) == (1, 1)
    assert decomp.element(1, 1) == 3
    assert decomp.elements_of((1, 2)) == {1, 4}
    with pytest.raises(InputError):
        decomp.position(9)
    with pytest.raises(InputError):
        decomp.check_vector((0,))
    with pytest.raises(InputError):
        decomp.check_vector((0, 3))


def test_join_meet_examples():
    assert join((0, 1), (1, 0)) == (1, 1)
    assert meet((0, 1), (1, 0)) == (0, 0)
    assert join((1, 2), (1, 2)) == (1, 2) == meet((1, 2), (1, 2))
    assert leq((0, 0), (1, 0)) and not leq((1, 0), (0, 1))
    with pytest.raises(InputError):
        join((0,), (0, 1))


def test_distributivity_sampled():
    rng = random.Random(2)
    for _ in range(500):
        r = rng.randint(1, 5)
        x, y, z = (tuple(rng.randint(0, 4) for _ in range(r)) for _ in range(3))
        assert join(x, meet(y, z)) == meet(join(x, y), join(x, z))
        assert meet(x, join(y, z)) == join(meet(x, y), meet(x, z))


def test_multiset_sum_identity_sampled():
    decomp = ChainDecomposition(((0, 1, 2), (3, 4), (5, 6, 7, 8)))
    rng = random.Random(3)
    for _ in range(300):
        x = tuple(rng.randint(0, len(c) - 1) for c in decomp.chains)
        y = tuple(rng.randint(0, len(c) - 1) for c in decomp.chains)
        assert multiset(decomp, (x, y)) == multiset(decomp, (meet(x, y), join(x, y)))


def test_lro_fixed_point_and_exchange():
    ordered = ((0, 0), (0, 1), (1, 1))
    assert lro(ordered) == ordered
    assert lro(((1, 0), (0, 1))) == ((0, 0), (1, 1))


def test_lro_orders_and_preserves_multiplicity():
    lattice = six_element_lattice()
    sols = lattice.solutions()
    decomp = lattice.decomposition
    rng = random.Random(4)
    for _ in range(300):
        k = rng.randint(1, 5)
        tup = tuple(rng.choice(sols) for _ in range(k))
        out = lro(tup)
        assert is_left_right_ordered(out)
        assert multiset(decomp, tup) == multiset(decomp, out)


def test_compact_lattice_decode_encode():
    lattice = six_element_lattice()
    assert lattice.decode_ideal(frozenset()) == (0, 0)
    assert lattice.decode_ideal(frozenset({1, 2})) == (0, 2)
    assert lattice.top == (1, 2)
    assert lattice.solutions() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    for ideal in lattice.poset.enumerate_ideals():
        vec = lattice.decode_ideal(ideal)
        assert lattice.encode(vec) == ideal
    for vec in lattice.solutions():
        assert lattice.decode_ideal(lattice.encode(vec)) == vec
    with pytest.raises(ContractViolationError):
        lattice.decode_ideal(frozenset({2}))


def test_decode_is_monotone():
    lattice = six_element_lattice()
    ideals = lattice.poset.enumerate_ideals()
    for a in ideals:
        for b in ideals:
            if a <= b:
                assert leq(lattice.decode_ideal(a), lattice.decode_ideal(b))


def test_compact_lattice_validation():
    decomp = ChainDecomposition(((0, 1), (2, 3, 4)))
    with pytest.raises(InputError):
        CompactLattice(decomp, Poset(2, ()), ((1, 0),), (0, 0))
    with pytest.raises(ContractViolationError):
        # the irreducible of the larger poset element decodes below the smaller
        CompactLattice(decomp, Poset(2, ((0, 1),)), ((1, 1), (1, 0)), (0, 0))
    with pytest.raises(ContractViolationError):
        # an irreducible's solution may not undercut the bottom
        CompactLattice(decomp, Poset(1, ()), ((0, 0),), (0, 1))


def test_product_size_and_k1_copy():
    lattice = six_element_lattice()
    with pytest.raises(InputError):
        build_product_irreducibles(lattice, 0)
    for k in (1, 2, 3):
        product = build_product_irreducibles(lattice, k)
        assert product.poset.n == k * lattice.num_irreducibles
    assert build_product_irreducibles(lattice, 1).poset == lattice.poset


def test_product_order_rule_matches_decoded_tuples():
    lattice = six_element_lattice()
    for k in (1, 2, 3):
        product = build_product_irreducibles(lattice, k)
        tuples = [
            product.decode_ideal(product.poset.down_closure({pid}))
            for pid in range(product.poset.n)
        ]
        for a in range(product.poset.n):
            for b in range(product.poset.n):
                componentwise = all(leq(x, y) for x, y in zip(tuples[a], tuples[b]))
                assert product.poset.leq(a, b) == componentwise, (a, b)


def test_product_ideal_count_equals_ordered_pairs():
    lattice = six_element_lattice()
    sols = lattice.solutions()
    pairs = sum(1 for x in sols for y in sols if leq(x, y))
    assert pairs == 18
    product = build_product_irreducibles(lattice, 2)
    assert product.poset.count_ideals() == pairs


def test_product_round_trip():
    lattice = six_element_lattice()
    for k in (1, 2, 3):
        product = build_product_irreducibles(lattice, k)
        seen = set()
        for ideal in product.poset.enumerate_ideals():
            tup = product.decode_ideal(ideal)
            assert is_left_right_ordered(tup)
            assert product.encode_tuple(tup) == ideal
            seen.add(tup)
        sols = lattice.solutions()

        def extend(prefix, low):
            if len(prefix) == k:
                assert tuple(prefix) in seen
                return
            for vec in sols:
                if leq(low, vec):
                    extend(prefix + [vec], vec)

        extend([], lattice.bottom)
        assert product.decode_ideal(frozenset()) == product.bottom_tuple
        assert (
            product.decode_ideal(frozenset(range(product.poset.n)))
            == product.top_tuple
        )


def test_product_encode_validation():
    product = build_product_irreducibles(six_element_lattice(), 2)
    with pytest.raises(InputError):
        product.encode_tuple(((0, 0),))
    with pytest.raises(InputError):
        product.encode_tuple(((1, 1), (0, 0)))
    with pytest.raises(ContractViolationError):
        product.decode_ideal(frozenset({product.poset.n - 1}))


def test_interval_property_sampled():
    lattice = six_element_lattice()
    decomp = lattice.decomposition
    sols = lattice.solutions()
    rng = random.Random(5)
    for _ in range(300):
        k = rng.randint(1, 6)
        tup = lro(tuple(rng.choice(sols) for _ in range(k)))
        for e in range(decomp.n):
            where = [i for i, vec in enumerate(tup) if e in decomp.elements_of(vec)]
            if where:
                assert where == list(range(where[0], where[-1] + 1))
