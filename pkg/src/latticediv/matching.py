"""Stable matchings as a distributive lattice via the rotation poset.

The ground set is the n*n pairs (a, b); chain a lists a's preferences,
most preferred first, so a matching is the vector of preference ranks on
the A side and the A-optimal matching is the lattice bottom.  Rotations
are discovered by repeated reduced-list elimination starting from the
A-optimal matching; ideals of their precedence poset decode to the
stable matchings.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diversity import DiverseOutcome, Measure, maximize_diversity
from .errors import ContractViolationError, InputError
from .lattice import ChainDecomposition, CompactLattice, SolutionVector, join, meet
from .poset import Ideal, Poset


@dataclass(frozen=True)
class PreferenceProfile:
    """Complete strict preferences for n agents per side, 0-based."""

    a_prefs: tuple[tuple[int, ...], ...]
    b_prefs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a = tuple(tuple(row) for row in self.a_prefs)
        b = tuple(tuple(row) for row in self.b_prefs)
        object.__setattr__(self, "a_prefs", a)
        object.__setattr__(self, "b_prefs", b)
        n = len(a)
        if n == 0 or len(b) != n:
            raise InputError("both sides must list the same positive number of agents")
        for side in (a, b):
            for i, row in enumerate(side):
                if sorted(row) != list(range(n)):
                    raise InputError(
                        f"preference row {i} is not a permutation of 0..{n - 1}"
                    )
        object.__setattr__(
            self, "_a_rank",
            tuple(_invert(row) for row in a),
        )
        object.__setattr__(
            self, "_b_rank",
            tuple(_invert(row) for row in b),
        )

    @property
    def n(self) -> int:
        return len(self.a_prefs)

    def a_rank(self, a: int, b: int) -> int:
        return self._a_rank[a][b]

    def b_rank(self, b: int, a: int) -> int:
        return self._b_rank[b][a]


def _invert(row: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(row)
    for pos, x in enumerate(row):
        out[x] = pos
    return tuple(out)


def chain_decomposition(profile: PreferenceProfile) -> ChainDecomposition:
    """Chain a holds the pairs (a, *) in a's preference order; the pair
    (a, b) has element id a * n + rank."""
    n = profile.n
    return ChainDecomposition(
        tuple(tuple(range(a * n, (a + 1) * n)) for a in range(n))
    )


def pair_of_element(profile: PreferenceProfile, e: int) -> tuple[int, int]:
    """(a, b) encoded by ground element e."""
    n = profile.n
    a, rank = divmod(e, n)
    return a, profile.a_prefs[a][rank]


def matching_pairs(profile: PreferenceProfile, vec: SolutionVector) -> list[tuple[int, int]]:
    return [(a, profile.a_prefs[a][rank]) for a, rank in enumerate(vec)]


def _propose(proposer_prefs, receiver_rank) -> list[int] | None:
    """Deferred acceptance with possibly truncated lists.

    Returns the receiver matched to each proposer, or None once any
    proposer runs out of options.
    """
    n = len(proposer_prefs)
    next_choice = [0] * n
    holder: dict[int, int] = {}
    free = list(reversed(range(n)))
    while free:
        p = free.pop()
        while True:
            if next_choice[p] >= len(proposer_prefs[p]):
                return None
            r = proposer_prefs[p][next_choice[p]]
            next_choice[p] += 1
            cur = holder.get(r)
            if cur is None:
                holder[r] = p
                break
            if receiver_rank[r][p] < receiver_rank[r][cur]:
                holder[r] = p
                free.append(cur)
                break
    out = [0] * n
    for r, p in holder.items():
        out[p] = r
    return out


def gale_shapley(profile: PreferenceProfile, proposing: str = "a") -> SolutionVector:
    """Deferred acceptance; the proposing side gets its optimal matching.
    The result is an A-side rank vector either way."""
    if proposing == "a":
        partner = _propose(profile.a_prefs, profile._b_rank)
        return tuple(profile.a_rank(a, b) for a, b in enumerate(partner))
    if proposing == "b":
        partner = _propose(profile.b_prefs, profile._a_rank)
        by_a = {a: b for b, a in enumerate(partner)}
        return tuple(profile.a_rank(a, by_a[a]) for a in range(profile.n))
    raise InputError(f"unknown proposing side {proposing!r}")


def is_stable(profile: PreferenceProfile, vec: SolutionVector) -> bool:
    """No pair prefers each other to their assigned partners."""
    n = profile.n
    if len(vec) != n:
        return False
    partner_of_b = [-1] * n
    for a, rank in enumerate(vec):
        if not (0 <= rank < n):
            return False
        b = profile.a_prefs[a][rank]
        if partner_of_b[b] != -1:
            return False
        partner_of_b[b] = a
    for a, rank in enumerate(vec):
        for better in range(rank):
            b = profile.a_prefs[a][better]
            if profile.b_rank(b, a) < profile.b_rank(b, partner_of_b[b]):
                return False
    return True


def join_meet_matchings(
    profile: PreferenceProfile, x: SolutionVector, y: SolutionVector
) -> tuple[SolutionVector, SolutionVector]:
    """Componentwise join and meet; both are stable matchings again."""
    hi, lo = join(x, y), meet(x, y)
    for vec in (hi, lo):
        if not is_stable(profile, vec):
            raise ContractViolationError("join or meet of stable matchings unstable")
    return hi, lo


@dataclass(frozen=True)
class Rotation:
    """Cyclic list of (a, b) pairs; eliminating it moves each listed a to
    the b of the following pair."""

    pairs: tuple[tuple[int, int], ...]

    def moves(self):
        l = len(self.pairs)
        for i, (a, b) in enumerate(self.pairs):
            yield a, b, self.pairs[(i + 1) % l][1]


@dataclass(frozen=True)
class RotationPoset:
    """All rotations of a profile with their precedence order.

    Rotation indices follow discovery order, which is a linear extension
    of the precedence order.
    """

    profile: PreferenceProfile
    rotations: tuple[Rotation, ...]
    poset: Poset
    base: SolutionVector


def build_rotation_poset(profile: PreferenceProfile) -> RotationPoset:
    """Discover rotations by repeated reduced-list elimination.

    Reduced lists start from the A-optimal matching (b keeps a iff a is
    not worse than b's current partner).  Exposed rotations are the
    cycles of a -> partner(second entry of a's list); eliminating one
    shrinks the lists and the loop repeats until none remain, at which
    point the current matching is B-optimal.  Precedence arcs come from
    two sources: the rotation previously moving a to b precedes the one
    moving a away from b, and the rotation that removed a skipped pair
    (a, b) from the lists precedes any rotation jumping a over b.
    """
    n = profile.n
    base = gale_shapley(profile, "a")
    partner_of_a = [profile.a_prefs[a][rank] for a, rank in enumerate(base)]
    partner_of_b = [0] * n
    for a, b in enumerate(partner_of_a):
        partner_of_b[b] = a

    alive = [
        [
            b for b in profile.a_prefs[a]
            if profile.b_rank(b, a) <= profile.b_rank(b, partner_of_b[b])
        ]
        for a in range(n)
    ]
    for a in range(n):
        if not alive[a] or alive[a][0] != partner_of_a[a]:
            raise ContractViolationError("reduced lists disagree with the optimum")

    rotations: list[Rotation] = []
    eliminated_by: dict[tuple[int, int], int] = {}
    moved_to: dict[tuple[int, int], int] = {}
    relations: list[tuple[int, int]] = []

    def find_cycle() -> list[int] | None:
        state = [0] * n
        for start in range(n):
            if state[start] or len(alive[start]) < 2:
                continue
            walk: list[int] = []
            a = start
            while a is not None and state[a] == 0:
                state[a] = 1
                walk.append(a)
                a = partner_of_b[alive[a][1]] if len(alive[a]) >= 2 else None
            if a is not None and state[a] == 1:
                cycle = walk[walk.index(a):]
                shift = cycle.index(min(cycle))
                return cycle[shift:] + cycle[:shift]
            for w in walk:
                state[w] = 2
        return None

    while True:
        cycle = find_cycle()
        if cycle is None:
            break
        idx = len(rotations)
        pairs = tuple((a, partner_of_a[a]) for a in cycle)
        rotation = Rotation(pairs)
        rotations.append(rotation)

        for a, b_old, b_new in rotation.moves():
            prev = moved_to.get((a, b_old))
            if prev is not None:
                relations.append((prev, idx))
            lo, hi = profile.a_rank(a, b_old), profile.a_rank(a, b_new)
            for skipped_rank in range(lo + 1, hi):
                skipped = profile.a_prefs[a][skipped_rank]
                src = eliminated_by.get((a, skipped))
                if src is not None and src != idx:
                    relations.append((src, idx))
            moved_to[(a, b_new)] = idx

        for a, _b_old, b_new in rotation.moves():
            cutoff = profile.b_rank(b_new, a)
            for worse in [m for m in profile.b_prefs[b_new] if profile.b_rank(b_new, m) > cutoff]:
                if b_new in alive[worse]:
                    alive[worse].remove(b_new)
                    eliminated_by[(worse, b_new)] = idx
            partner_of_a[a] = b_new
            partner_of_b[b_new] = a
        for a, _b_old, b_new in rotation.moves():
            if not alive[a] or alive[a][0] != b_new:
                raise ContractViolationError("elimination left inconsistent lists")

    return RotationPoset(
        profile=profile,
        rotations=tuple(rotations),
        poset=Poset(len(rotations), relations),
        base=base,
    )


def decode_matching(rp: RotationPoset, ideal: Ideal) -> SolutionVector:
    """Apply the rotations of an ideal, in discovery order, to the bottom."""
    if not rp.poset.is_ideal(ideal):
        raise ContractViolationError(f"{set(ideal)!r} is not an ideal")
    ranks = list(rp.base)
    profile = rp.profile
    for idx in sorted(ideal):
        for a, _b_old, b_new in rp.rotations[idx].moves():
            ranks[a] = profile.a_rank(a, b_new)
    return tuple(ranks)


def compact_lattice(rp: RotationPoset) -> CompactLattice:
    sols = tuple(
        decode_matching(rp, rp.poset.down_closure({p})) for p in range(rp.poset.n)
    )
    return CompactLattice(
        decomposition=chain_decomposition(rp.profile),
        poset=rp.poset,
        irreducible_solution=sols,
        bottom=rp.base,
    )


@dataclass(frozen=True)
class MatchingInstance:
    profile: PreferenceProfile
    rotation_poset: RotationPoset
    lattice: CompactLattice

    @property
    def decomposition(self) -> ChainDecomposition:
        return self.lattice.decomposition


def build_instance(profile: PreferenceProfile) -> MatchingInstance:
    rp = build_rotation_poset(profile)
    return MatchingInstance(profile, rp, compact_lattice(rp))


@dataclass(frozen=True)
class DiverseMatchings:
    instance: MatchingInstance
    solutions: tuple[SolutionVector, ...]
    diversity: int
    solver: str
    oracle_calls: int
    num_irreducibles: int

    def pair_sets(self) -> list[list[tuple[int, int]]]:
        return [matching_pairs(self.instance.profile, v) for v in self.solutions]


def diverse_stable_matchings(
    profile: PreferenceProfile, k: int, measure: Measure, solver: str = "auto"
) -> DiverseMatchings:
    """Maximum-diversity multiset of k stable matchings."""
    instance = build_instance(profile)
    outcome: DiverseOutcome = maximize_diversity(instance.lattice, k, measure, solver)
    return DiverseMatchings(
        instance=instance,
        solutions=outcome.solutions,
        diversity=outcome.diversity,
        solver=outcome.solver,
        oracle_calls=outcome.oracle_calls,
        num_irreducibles=outcome.num_irreducibles,
    )


def next_disjoint_matching(
    profile: PreferenceProfile, vec: SolutionVector
) -> SolutionVector | None:
    """Minimal stable matching strictly worse than vec for every a, or None.

    Truncates each a's list to the strict successors of vec's partner
    (with the mirrored deletions on the B side) and reruns deferred
    acceptance; the result only counts if it is perfect and stable under
    the full profile.
    """
    n = profile.n
    truncated = [profile.a_prefs[a][vec[a] + 1:] for a in range(n)]
    kept = {(a, b) for a in range(n) for b in truncated[a]}
    receiver_rank = []
    for b in range(n):
        rank = [n * n] * n
        for a in profile.b_prefs[b]:
            if (a, b) in kept:
                rank[a] = profile.b_rank(b, a)
        receiver_rank.append(rank)
    partner = _propose([tuple(row) for row in truncated], receiver_rank)
    if partner is None:
        return None
    out = tuple(profile.a_rank(a, b) for a, b in enumerate(partner))
    if not is_stable(profile, out):
        return None
    for a in range(n):
        if out[a] <= vec[a]:
            raise ContractViolationError("truncated run failed to advance an agent")
    return out


def oracles_from_instance(instance: MatchingInstance):
    """Disjoint-solution oracle bundle over an already-built instance."""
    from .disjoint import DisjointOracles

    profile = instance.profile
    return DisjointOracles(
        decomposition=instance.decomposition,
        o_min=lambda: instance.lattice.bottom,
        o_max=lambda: instance.lattice.top,
        o_next_disjoint=lambda vec: next_disjoint_matching(profile, vec),
    )


def matching_oracles(profile: PreferenceProfile):
    """Bottom, top and fused next-disjoint oracles over the matching lattice.

    Works straight off deferred acceptance; the rotation poset is not
    needed for the disjoint walk.
    """
    from .disjoint import DisjointOracles

    bottom = gale_shapley(profile, "a")
    top = gale_shapley(profile, "b")
    return DisjointOracles(
        decomposition=chain_decomposition(profile),
        o_min=lambda: bottom,
        o_max=lambda: top,
        o_next_disjoint=lambda vec: next_disjoint_matching(profile, vec),
    )
