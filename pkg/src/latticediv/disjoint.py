"""Maximum collections of pairwise-disjoint solutions via three oracles.

The oracles deliver the bottom solution, the top solution, and the
minimal disjoint successor of a given solution.  Walking from the bottom
with the successor oracle until the top is touched yields a maximum
pairwise-disjoint set in left-right order; one solution whose elements
meet the top's certifies that a larger set cannot exist.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ContractViolationError
from .lattice import ChainDecomposition, SolutionVector


@dataclass
class DisjointOracles:
    """Problem-specific oracle bundle over one solution lattice."""

    decomposition: ChainDecomposition
    o_min: Callable[[], SolutionVector]
    o_max: Callable[[], SolutionVector]
    o_next_disjoint: Callable[[SolutionVector], Optional[SolutionVector]]


@dataclass(frozen=True)
class MaxDisjointResult:
    solutions: tuple[SolutionVector, ...]
    oracle_calls: int

    def __len__(self):
        return len(self.solutions)


def max_disjoint(oracles: DisjointOracles) -> MaxDisjointResult:
    """Greedy bottom-up walk; output is pairwise disjoint, strictly
    left-right ordered and of maximum cardinality.

    Uses at most n + 2 oracle calls for a ground set of size n: every
    successor strictly advances each chain.
    """
    decomp = oracles.decomposition
    calls = 0
    top = oracles.o_max()
    calls += 1
    top_elements = decomp.elements_of(top)
    current = oracles.o_min()
    calls += 1
    chosen: list[SolutionVector] = []
    while not (decomp.elements_of(current) & top_elements):
        chosen.append(current)
        successor = oracles.o_next_disjoint(current)
        calls += 1
        if successor is None:
            raise ContractViolationError(
                "successor oracle returned none below an untouched top"
            )
        if any(s <= c for s, c in zip(successor, current)):
            raise ContractViolationError("successor is not strictly beyond its input")
        current = successor
    chosen.append(current)
    return MaxDisjointResult(tuple(chosen), calls)
