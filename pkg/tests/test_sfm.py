"""Tests for submodular minimisation over ideals."""
import random

import pytest

import corpus
from latticediv import diversity, matching, sfm
from latticediv.cli import random_objective, random_poset
from latticediv.diversity import Measure, make_objective
from latticediv.errors import InputError, ResourceLimitError
from latticediv.lattice import build_product_irreducibles
from latticediv.poset import Poset
from latticediv.sfm import (
    PenalizedObjective,
    SubmodularObjective,
    minimize,
    minimize_exhaustive,
    minimize_mnp,
    verify_submodular_sample,
)


def modular_objective(poset, weights):
    lower = sum(w for w in weights if w < 0)
    upper = sum(w for w in weights if w > 0)
    return SubmodularObjective(
        poset, lambda ideal: sum(weights[e] for e in ideal), lower, upper
    )


def test_bounds_must_bracket():
    with pytest.raises(InputError):
        SubmodularObjective(Poset(2, ()), len, 5, 4)


def test_penalty_size():
    obj = modular_objective(Poset(3, ()), [-2, 0, 3])
    pen = PenalizedObjective.from_objective(obj)
    assert pen.penalty == 2 * (3 - (-2)) + 1


def test_penalized_agrees_on_ideals():
    poset = Poset(4, ((0, 1), (0, 2), (2, 3)))
    obj = modular_objective(poset, [1, -3, 2, -1])
    pen = PenalizedObjective.from_objective(obj)
    for ideal in poset.enumerate_ideals():
        assert pen.evaluate_subset(ideal) == obj.evaluate(ideal)


def test_penalized_prefers_closure():
    rng = random.Random(3)
    for _ in range(50):
        poset = random_poset(rng, rng.randint(2, 7))
        obj = random_objective(rng, poset)
        pen = PenalizedObjective.from_objective(obj)
        for _ in range(20):
            subset = frozenset(
                e for e in range(poset.n) if rng.random() < 0.5
            )
            closed = poset.down_closure(subset)
            assert pen.evaluate_subset(closed) <= pen.evaluate_subset(subset)


def test_penalized_minimum_is_an_ideal():
    # The subset minimum of the extension matches the ideal minimum of
    # the base objective, which is the whole point of the penalty.
    rng = random.Random(4)
    for _ in range(30):
        poset = random_poset(rng, rng.randint(1, 6))
        obj = random_objective(rng, poset)
        pen = PenalizedObjective.from_objective(obj)
        _, ideal_min = minimize_exhaustive(obj)
        subset_min = min(
            pen.evaluate_subset(frozenset(
                e for e in range(poset.n) if mask >> e & 1
            ))
            for mask in range(1 << poset.n)
        )
        assert subset_min == ideal_min


def test_penalized_extension_is_submodular():
    rng = random.Random(5)
    for _ in range(20):
        poset = random_poset(rng, rng.randint(2, 7))
        obj = random_objective(rng, poset)
        pen = PenalizedObjective.from_objective(obj).as_subset_objective()
        assert pen.poset.count_ideals() == 2 ** poset.n
        assert verify_submodular_sample(pen, trials=200, seed=rng.randint(0, 999))


def test_verify_accepts_diversity_objectives():
    base = corpus.six_element_lattice()
    product = build_product_irreducibles(base, 2)
    for kind in ("sum", "cov", "abs"):
        obj = make_objective(product, Measure(kind))
        assert verify_submodular_sample(obj, trials=400)


def test_verify_rejects_supermodular():
    poset = Poset(5, ())
    probe = SubmodularObjective(
        poset, lambda ideal: len(ideal) * (len(ideal) - 1) // 2, 0, 10
    )
    assert not verify_submodular_sample(probe, trials=400)


def test_exhaustive_tie_break():
    poset = Poset(3, ())
    ideal, value = minimize_exhaustive(SubmodularObjective(poset, lambda s: 0, 0, 0))
    assert (ideal, value) == (frozenset(), 0)
    ideal, value = minimize_exhaustive(SubmodularObjective(poset, len, 0, 3))
    assert (ideal, value) == (frozenset(), 0)
    ideal, value = minimize_exhaustive(
        SubmodularObjective(poset, lambda s: -len(s), -3, 0)
    )
    assert (ideal, value) == (frozenset({0, 1, 2}), -3)


def test_exhaustive_cap():
    obj = modular_objective(Poset(10, ()), [0] * 10)
    with pytest.raises(ResourceLimitError):
        minimize_exhaustive(obj, cap=100)


def test_mnp_two_element():
    ideal, value = minimize_mnp(modular_objective(Poset(2, ()), [-1, 2]))
    assert (ideal, value) == (frozenset({0}), -1)


def test_mnp_chain_interior():
    poset = Poset(3, ((0, 1), (1, 2)))
    ideal, value = minimize_mnp(modular_objective(poset, [-3, 1, -2]))
    assert (ideal, value) == (frozenset({0, 1, 2}), -4)


def test_mnp_empty_poset():
    ideal, value = minimize_mnp(modular_objective(Poset(0, ()), []))
    assert (ideal, value) == (frozenset(), 0)


def test_mnp_matches_exhaustive_random():
    rng = random.Random(12)
    for _ in range(20):
        poset = random_poset(rng, rng.randint(1, 9))
        obj = random_objective(rng, poset)
        _, exact = minimize_exhaustive(obj)
        ideal, value = minimize_mnp(obj)
        assert value == exact
        assert obj.poset.is_ideal(ideal)
        assert obj.evaluate(ideal) == value


def test_mnp_on_matching_product():
    instance = matching.build_instance(corpus.two_agent_profile())
    product = build_product_irreducibles(instance.lattice, 2)
    obj = make_objective(product, Measure("sum"))
    _, exact = minimize_exhaustive(obj)
    ideal, value = minimize_mnp(obj)
    assert value == exact
    assert product.poset.is_ideal(ideal)


def test_dispatch_unknown_solver():
    obj = modular_objective(Poset(1, ()), [1])
    with pytest.raises(InputError):
        minimize(obj, solver="nope")


def test_dispatch_auto_small():
    obj = modular_objective(Poset(3, ()), [1, -1, 1])
    ideal, value, name = minimize(obj, solver="auto")
    assert (ideal, value, name) == (frozenset({1}), -1, "exhaustive")


def test_dispatch_auto_large_falls_back():
    weights = [(-1) ** e * (e + 1) for e in range(13)]
    obj = modular_objective(Poset(13, ()), weights)
    ideal, value, name = minimize(obj, solver="auto")
    assert name == "mnp"
    assert value == sum(w for w in weights if w < 0)
    assert ideal == frozenset(e for e in range(13) if weights[e] < 0)


def test_dispatch_explicit_solvers_agree():
    poset = Poset(4, ((0, 2), (1, 2), (1, 3)))
    obj = modular_objective(poset, [2, -1, -4, 3])
    exh = minimize(obj, solver="exhaustive")
    mnp = minimize(obj, solver="mnp")
    assert exh[2] == "exhaustive" and mnp[2] == "mnp"
    assert exh[1] == mnp[1]
