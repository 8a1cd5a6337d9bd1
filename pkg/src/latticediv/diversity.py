"""Diversity measures on collections of solutions, and their SFM oracles.

All three measures are exact integers:

  sum  - total pairwise Hamming distance between the selected element sets,
  cov  - number of distinct elements covered by the collection,
  abs  - total pairwise sum of per-chain value gaps (values default to
         chain ranks).

Maximising each over left-right ordered k-tuples is equivalent to
minimising a submodular counterpart on ideals of the product lattice:
the per-element binomial sum for 'sum', the excess-multiplicity sum for
'cov', and the negated distance itself for 'abs' (which is modular).
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from math import comb

from .errors import ConfigurationError, InputError
from .lattice import (
    ChainDecomposition,
    CompactLattice,
    ProductLattice,
    build_product_irreducibles,
)
from .poset import Ideal
from . import sfm

MEASURE_KINDS = ("sum", "cov", "abs")


@dataclass(frozen=True)
class Measure:
    """A diversity measure; element_values applies to 'abs' only."""

    kind: str
    element_values: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise InputError(f"unknown measure kind {self.kind!r}")
        if self.element_values is not None:
            if self.kind != "abs":
                raise InputError("element values only apply to the abs measure")
            object.__setattr__(
                self, "element_values", tuple(int(v) for v in self.element_values)
            )


def resolve_values(decomp: ChainDecomposition, values=None) -> list[int]:
    """Per-element values for the abs measure, defaulting to chain ranks.

    Values must be strictly increasing along every chain.
    """
    out = [0] * decomp.n
    if values is None:
        for chain in decomp.chains:
            for rank, e in enumerate(chain):
                out[e] = rank
        return out
    if isinstance(values, Mapping):
        getter = values.get
    elif isinstance(values, Sequence):
        seq = list(values)
        getter = lambda e: seq[e] if 0 <= e < len(seq) else None
    else:
        raise ConfigurationError(f"unsupported value table {type(values)!r}")
    for e in range(decomp.n):
        v = getter(e)
        if v is None:
            raise ConfigurationError(f"no value supplied for element {e}")
        out[e] = int(v)
    for ci, chain in enumerate(decomp.chains):
        for a, b in zip(chain, chain[1:]):
            if out[a] >= out[b]:
                raise ConfigurationError(
                    f"values must be strictly increasing along chain {ci}"
                )
    return out


def multiplicity(decomp: ChainDecomposition, solutions) -> Counter:
    """How often each ground element is selected across the collection."""
    counts: Counter = Counter()
    for vec in solutions:
        decomp.check_vector(vec)
        for ci, rank in enumerate(vec):
            counts[decomp.chains[ci][rank]] += 1
    return counts


def d_sum(decomp: ChainDecomposition, solutions) -> int:
    """Sum of pairwise symmetric-difference sizes, straight from the sets."""
    sets = [decomp.elements_of(v) for v in solutions]
    return sum(
        len(sets[i] ^ sets[j])
        for i in range(len(sets))
        for j in range(i + 1, len(sets))
    )


def d_sum_via_multiplicity(decomp: ChainDecomposition, solutions) -> int:
    """Same quantity through the multiplicity identity; used as a cross-check."""
    k = len(list(solutions))
    counts = multiplicity(decomp, solutions)
    return 2 * (decomp.r * comb(k, 2) - sum(comb(c, 2) for c in counts.values()))


def dhat_sum(decomp: ChainDecomposition, solutions) -> int:
    """Minimisation counterpart of d_sum: per-element binomial sum."""
    counts = multiplicity(decomp, solutions)
    return sum(comb(c, 2) for c in counts.values())


def d_cov(decomp: ChainDecomposition, solutions) -> int:
    """Number of distinct covered elements."""
    covered: set[int] = set()
    for vec in solutions:
        covered |= decomp.elements_of(vec)
    return len(covered)


def dhat_cov(decomp: ChainDecomposition, solutions) -> int:
    """Minimisation counterpart of d_cov: excess multiplicity."""
    counts = multiplicity(decomp, solutions)
    return sum(c - 1 for c in counts.values() if c >= 2)


def d_abs(decomp: ChainDecomposition, solutions, values=None) -> int:
    """Sum of pairwise per-chain value gaps."""
    val = resolve_values(decomp, values)
    sols = [tuple(v) for v in solutions]
    for vec in sols:
        decomp.check_vector(vec)
    total = 0
    for i in range(len(sols)):
        for j in range(i + 1, len(sols)):
            for ci in range(decomp.r):
                a = val[decomp.chains[ci][sols[i][ci]]]
                b = val[decomp.chains[ci][sols[j][ci]]]
                total += abs(a - b)
    return total


def evaluate_measure(decomp: ChainDecomposition, solutions, measure: Measure) -> int:
    """Diversity of a collection under the given measure (to be maximised)."""
    if measure.kind == "sum":
        return d_sum(decomp, solutions)
    if measure.kind == "cov":
        return d_cov(decomp, solutions)
    return d_abs(decomp, solutions, measure.element_values)


def objective_value(decomp: ChainDecomposition, solutions, measure: Measure) -> int:
    """Minimisation-form value of a collection under the given measure."""
    if measure.kind == "sum":
        return dhat_sum(decomp, solutions)
    if measure.kind == "cov":
        return dhat_cov(decomp, solutions)
    return -d_abs(decomp, solutions, measure.element_values)


def objective_oracle(product: ProductLattice, measure: Measure, ideal: Ideal) -> int:
    """Evaluate the minimisation objective on an ideal of the product poset."""
    return objective_value(
        product.decomposition, product.decode_ideal(ideal), measure
    )


class _CountingOracle:
    """Callable wrapper that counts evaluations."""

    def __init__(self, fn):
        self._fn = fn
        self.calls = 0

    def __call__(self, ideal: Ideal) -> int:
        self.calls += 1
        return self._fn(ideal)


def make_objective(product: ProductLattice, measure: Measure) -> sfm.SubmodularObjective:
    """SFM objective for a product lattice under a measure, with integer bounds."""
    decomp = product.decomposition
    k, r = product.k, decomp.r
    if measure.kind == "sum":
        lower, upper = 0, r * comb(k, 2)
    elif measure.kind == "cov":
        lower, upper = 0, r * (k - 1)
    else:
        val = resolve_values(decomp, measure.element_values)
        span = sum(
            val[chain[-1]] - val[chain[0]] for chain in decomp.chains
        )
        lower, upper = -comb(k, 2) * span, 0
    oracle = _CountingOracle(lambda ideal: objective_oracle(product, measure, ideal))
    return sfm.SubmodularObjective(product.poset, oracle, lower, upper)


@dataclass(frozen=True)
class DiverseOutcome:
    """A maximising left-right ordered tuple plus solve statistics."""

    solutions: tuple
    diversity: int
    solver: str
    oracle_calls: int
    num_irreducibles: int


def maximize_diversity(
    base: CompactLattice, k: int, measure: Measure, solver: str = "auto"
) -> DiverseOutcome:
    """Best k-multiset of lattice solutions under the measure.

    Builds the product lattice of left-right ordered k-tuples, minimises
    the measure's submodular counterpart over its ideals, and decodes
    the argmin back into solutions.
    """
    product = build_product_irreducibles(base, k)
    objective = make_objective(product, measure)
    ideal, _value, used = sfm.minimize(objective, solver=solver)
    chosen = product.decode_ideal(ideal)
    diversity = evaluate_measure(product.decomposition, chosen, measure)
    return DiverseOutcome(
        solutions=chosen,
        diversity=diversity,
        solver=used,
        oracle_calls=objective.evaluate.calls,
        num_irreducibles=product.poset.n,
    )
