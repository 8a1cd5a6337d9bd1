"""Exhaustive baselines used to validate the lattice machinery.

Everything here enumerates raw combinatorial objects and evaluates the
diversity definitions literally, without touching flows, rotations or
ideals, so the results are independent checks for the compact pipeline.
Each routine guards its input size and refuses larger instances.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from math import comb

from .errors import InfeasibleError, ResourceLimitError
from .lattice import ChainDecomposition, SolutionVector, join, meet
from .matching import PreferenceProfile, is_stable
from .mincut import FlowNetwork

MAX_CUT_VERTICES = 12
MAX_MATCHING_SIZE = 6
MAX_MULTISETS = 10**6
MAX_DISJOINT_SOLUTIONS = 20


@dataclass(frozen=True)
class EnumeratedSolutionSet:
    """All solutions of an instance, as frozensets of problem-native keys."""

    solutions: tuple[frozenset, ...]
    source: str


def enumerate_min_cuts(net: FlowNetwork) -> EnumeratedSolutionSet:
    """All minimum cuts as arc-id sets, by scanning every vertex subset."""
    if net.vertex_count > MAX_CUT_VERTICES:
        raise ResourceLimitError(
            f"brute force limited to {MAX_CUT_VERTICES} vertices"
        )
    others = [v for v in range(net.vertex_count) if v not in (net.source, net.sink)]
    best = None
    cuts: set[frozenset[int]] = set()
    for bits in range(1 << len(others)):
        side = {net.source}
        for i, v in enumerate(others):
            if bits >> i & 1:
                side.add(v)
        crossing = frozenset(
            a for a, (u, v) in enumerate(net.arcs) if u in side and v not in side
        )
        if best is None or len(crossing) < best:
            best = len(crossing)
            cuts = {crossing}
        elif len(crossing) == best:
            cuts.add(crossing)
    if best == 0:
        raise InfeasibleError("sink is unreachable from source")
    return EnumeratedSolutionSet(tuple(sorted(cuts, key=sorted)), "mincut")


def enumerate_stable_matchings(profile: PreferenceProfile) -> EnumeratedSolutionSet:
    """All stable matchings as (a, b) pair sets, by scanning permutations."""
    if profile.n > MAX_MATCHING_SIZE:
        raise ResourceLimitError(
            f"brute force limited to size {MAX_MATCHING_SIZE}"
        )
    n = profile.n
    out = []
    for perm in permutations(range(n)):
        vec = tuple(profile.a_rank(a, perm[a]) for a in range(n))
        if is_stable(profile, vec):
            out.append(frozenset((a, perm[a]) for a in range(n)))
    return EnumeratedSolutionSet(tuple(sorted(out, key=sorted)), "matching")


def best_diverse_multiset(
    solutions,
    k: int,
    kind: str,
    chain_of=None,
    value_of=None,
):
    """Best k-multiset under a measure, scanning all multisets.

    For the abs measure, chain_of and value_of map an element key to its
    chain and value.  Returns (multiset of solution sets, value).
    """
    sols = list(solutions)
    count = comb(len(sols) + k - 1, k)
    if count > MAX_MULTISETS:
        raise ResourceLimitError(f"{count} multisets exceed the scan limit")

    if kind == "abs":
        profiles = []
        for s in sols:
            by_chain = {}
            for e in s:
                c = chain_of(e)
                if c in by_chain:
                    raise ValueError("solution picks two elements of one chain")
                by_chain[c] = value_of(e)
            profiles.append(by_chain)

    pair = [[0] * len(sols) for _ in sols]
    for i in range(len(sols)):
        for j in range(i + 1, len(sols)):
            if kind == "sum":
                d = len(sols[i] ^ sols[j])
            elif kind == "abs":
                d = sum(
                    abs(profiles[i][c] - profiles[j][c]) for c in profiles[i]
                )
            else:
                d = 0
            pair[i][j] = pair[j][i] = d

    best_value = None
    best_choice = None
    for choice in combinations_with_replacement(range(len(sols)), k):
        if kind == "cov":
            value = len(frozenset().union(*(sols[i] for i in choice)))
        else:
            value = sum(
                pair[choice[i]][choice[j]]
                for i in range(k)
                for j in range(i + 1, k)
            )
        if best_value is None or value > best_value:
            best_value = value
            best_choice = choice
    return tuple(sols[i] for i in best_choice), best_value


def max_disjoint_bruteforce(solutions) -> int:
    """Size of a largest pairwise-disjoint subfamily, by pruned search."""
    sols = sorted(solutions, key=sorted)
    if len(sols) > MAX_DISJOINT_SOLUTIONS:
        raise ResourceLimitError(
            f"disjoint scan limited to {MAX_DISJOINT_SOLUTIONS} solutions"
        )
    best = 0

    def rec(i: int, used: frozenset, size: int):
        nonlocal best
        if size > best:
            best = size
        if i == len(sols) or size + len(sols) - i <= best:
            return
        if not (sols[i] & used):
            rec(i + 1, used | sols[i], size + 1)
        rec(i + 1, used, size)

    rec(0, frozenset(), 0)
    return best


def reference_disjoint_successor(
    decomp: ChainDecomposition, all_vectors, vec: SolutionVector
):
    """Minimal disjoint successor of vec among an explicit solution list.

    Materialises the disjoint successors, checks that they still pick one
    element per restricted chain, and returns their meet.  Serves as the
    slow counterpart of the fused per-problem oracles.
    """
    succ = [y for y in all_vectors if all(b > a for a, b in zip(vec, y))]
    if not succ:
        return None
    union: set[int] = set()
    for y in succ:
        union |= decomp.elements_of(y)
    restricted = [
        [e for e in chain if e in union] for chain in decomp.chains
    ]
    for y in succ:
        chosen = decomp.elements_of(y)
        for sub in restricted:
            if len(chosen & set(sub)) != 1:
                raise AssertionError("successor misses a restricted chain")
    bottom = succ[0]
    for y in succ[1:]:
        bottom = meet(bottom, y)
    if bottom not in succ:
        raise AssertionError("disjoint successors are not meet-closed")
    top = succ[0]
    for y in succ[1:]:
        top = join(top, y)
    if top not in succ:
        raise AssertionError("disjoint successors are not join-closed")
    return bottom
