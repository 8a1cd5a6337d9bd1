"""Shared instances for the test suite.

Fixed hand-checked instances plus seeded random families; random
generation is delegated to the seeded generators the CLI selftest uses,
so tests and selftest draw from one implementation.
"""
from __future__ import annotations

import random

from latticediv.cli import random_network, random_objective, random_poset, random_profile
from latticediv.lattice import ChainDecomposition, CompactLattice
from latticediv.matching import PreferenceProfile
from latticediv.mincut import FlowNetwork
from latticediv.poset import Poset

# --------------------------------------------------------------------------
# networks (arc ids follow tuple order)


def single_arc_network() -> FlowNetwork:
    return FlowNetwork(2, ((0, 1),), 0, 1)


def diamond_network() -> FlowNetwork:
    """s=0, a=1, b=2, t=3; arcs sa=0, at=1, sb=2, bt=3."""
    return FlowNetwork(4, ((0, 1), (1, 3), (0, 2), (2, 3)), 0, 3)


def path_network(arc_count: int = 3) -> FlowNetwork:
    arcs = tuple((v, v + 1) for v in range(arc_count))
    return FlowNetwork(arc_count + 1, arcs, 0, arc_count)


def parallel_network(width: int = 3) -> FlowNetwork:
    return FlowNetwork(2, ((0, 1),) * width, 0, 1)


def dead_end_network() -> FlowNetwork:
    """Diamond plus an arc into a dead-end vertex; that arc joins no cut."""
    return FlowNetwork(5, ((0, 1), (1, 3), (0, 2), (2, 3), (0, 4)), 0, 3)


def double_diamond_network() -> FlowNetwork:
    """Two diamonds in series through a waist vertex; 8 minimum cuts."""
    arcs = (
        (0, 1), (1, 3), (0, 2), (2, 3),
        (3, 4), (4, 6), (3, 5), (5, 6),
    )
    return FlowNetwork(7, arcs, 0, 6)


def cyclic_middle_network() -> FlowNetwork:
    """Contains a 2-cycle between internal vertices; exercises residual SCCs."""
    arcs = ((0, 1), (1, 2), (2, 1), (2, 3), (0, 2), (2, 3))
    return FlowNetwork(4, arcs, 0, 3)


def decorated_diamond_network() -> FlowNetwork:
    """Diamond plus a self-loop and a t->s back arc; both stay residual."""
    arcs = ((0, 1), (1, 3), (0, 2), (2, 3), (1, 1), (3, 0))
    return FlowNetwork(4, arcs, 0, 3)


def pendant_network() -> FlowNetwork:
    """Diamond plus an arc to a dead end hanging off an internal vertex.

    The dead end is residually reachable only from the internal vertex,
    so it is folded into that node's pulled vertices."""
    return FlowNetwork(5, ((0, 1), (1, 3), (0, 2), (2, 3), (1, 4)), 0, 3)


def crossing_bridge_network() -> FlowNetwork:
    """Two 3-arc paths plus an unflowed bridge between them.

    The bridge lets a rank vector miss being a cut even though none of
    its arcs ends at the sink, and it chains the four middle vertices
    into a 4-node total order (5 minimum cuts)."""
    arcs = ((0, 1), (1, 3), (3, 5), (0, 2), (2, 4), (4, 5), (1, 4))
    return FlowNetwork(6, arcs, 0, 5)


def shared_vertex_network() -> FlowNetwork:
    """Two parallel 2-arc paths through one middle vertex; rank vectors
    mixing the paths are not cuts, so the cut lattice is a strict subset
    of the chain product."""
    arcs = ((0, 1), (1, 2), (0, 1), (1, 2))
    return FlowNetwork(3, arcs, 0, 2)


def corpus_networks() -> list[FlowNetwork]:
    fixed = [
        single_arc_network(),
        diamond_network(),
        path_network(3),
        path_network(5),
        parallel_network(3),
        dead_end_network(),
        double_diamond_network(),
        cyclic_middle_network(),
        decorated_diamond_network(),
        pendant_network(),
        crossing_bridge_network(),
        shared_vertex_network(),
    ]
    rng = random.Random(7)
    fixed.extend(random_network(rng) for _ in range(15))
    return fixed


# --------------------------------------------------------------------------
# preference profiles (0-based entries)


def singleton_profile() -> PreferenceProfile:
    return PreferenceProfile(((0,),), ((0,),))


def two_agent_profile() -> PreferenceProfile:
    """Opposed tastes: two stable matchings, elementwise disjoint."""
    return PreferenceProfile(((0, 1), (1, 0)), ((1, 0), (0, 1)))


def unique_matching_profile(n: int = 4) -> PreferenceProfile:
    """Everyone agrees; the lattice is a single matching."""
    rows = tuple(tuple((i + d) % n for d in range(n)) for i in range(n))
    return PreferenceProfile(rows, rows)


def cyclic_profile(n: int = 4) -> PreferenceProfile:
    """Latin-square tastes with shifted B rows; n pairwise-disjoint
    stable matchings."""
    a = tuple(tuple((i + d) % n for d in range(n)) for i in range(n))
    b = tuple(tuple((j + 1 + d) % n for d in range(n)) for j in range(n))
    return PreferenceProfile(a, b)


def corpus_profiles() -> list[PreferenceProfile]:
    fixed = [
        singleton_profile(),
        two_agent_profile(),
        unique_matching_profile(3),
        unique_matching_profile(4),
        cyclic_profile(3),
        cyclic_profile(4),
    ]
    rng = random.Random(11)
    fixed.extend(random_profile(rng, rng.randint(3, 5)) for _ in range(15))
    return fixed


# --------------------------------------------------------------------------
# hand-built lattice: 6 elements, 3 irreducibles, one covering relation


def six_element_lattice() -> CompactLattice:
    """Two chains of sizes 2 and 3; irreducibles p0=(1,0), p1=(0,1),
    p2=(0,2) with p1 below p2.  Solutions are the six vectors
    (0,0) (1,0) (0,1) (1,1) (0,2) (1,2)."""
    return CompactLattice(
        decomposition=ChainDecomposition(((0, 1), (2, 3, 4))),
        poset=Poset(3, ((1, 2),)),
        irreducible_solution=((1, 0), (0, 1), (0, 2)),
        bottom=(0, 0),
    )


__all__ = [
    "corpus_networks",
    "corpus_profiles",
    "crossing_bridge_network",
    "cyclic_middle_network",
    "cyclic_profile",
    "dead_end_network",
    "decorated_diamond_network",
    "diamond_network",
    "double_diamond_network",
    "parallel_network",
    "path_network",
    "pendant_network",
    "random_network",
    "random_objective",
    "random_poset",
    "random_profile",
    "shared_vertex_network",
    "single_arc_network",
    "singleton_profile",
    "six_element_lattice",
    "two_agent_profile",
    "unique_matching_profile",
]
