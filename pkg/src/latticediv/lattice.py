"""Solution lattices in chain-rank coordinates.

A problem instance supplies a chain decomposition of its ground set:
r disjoint chains that jointly cover elements 0..n-1, where every
feasible solution picks exactly one element per chain.  A solution is
then an r-tuple of chain ranks; join and meet are componentwise max and
min.  A CompactLattice represents the feasible sublattice through the
poset of its join-irreducible solutions, and a ProductLattice does the
same for left-right ordered k-tuples of solutions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolationError, InputError
from .poset import Ideal, Poset

SolutionVector = tuple[int, ...]
LrTuple = tuple[SolutionVector, ...]


@dataclass(frozen=True)
class ChainDecomposition:
    """Partition of the ground set into chains, in chain order."""

    chains: tuple[tuple[int, ...], ...]
    _position: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        position: dict[int, tuple[int, int]] = {}
        for ci, chain in enumerate(chains):
            if not chain:
                raise InputError(f"chain {ci} is empty")
            for rank, e in enumerate(chain):
                if e in position:
                    raise InputError(f"element {e} appears in two chains")
                position[e] = (ci, rank)
        n = len(position)
        if set(position) != set(range(n)):
            raise InputError("chains must cover elements 0..n-1 exactly")
        object.__setattr__(self, "_position", position)

    @property
    def r(self) -> int:
        return len(self.chains)

    @property
    def n(self) -> int:
        return len(self._position)

    def position(self, e: int) -> tuple[int, int]:
        """(chain index, rank) of element e."""
        try:
            return self._position[e]
        except KeyError:
            raise InputError(f"unknown element {e!r}") from None

    def element(self, chain: int, rank: int) -> int:
        return self.chains[chain][rank]

    def check_vector(self, vec: SolutionVector):
        if len(vec) != self.r:
            raise InputError(
                f"solution has {len(vec)} entries, decomposition has {self.r} chains"
            )
        for ci, rank in enumerate(vec):
            if not (0 <= rank < len(self.chains[ci])):
                raise InputError(f"rank {rank} out of range on chain {ci}")

    def elements_of(self, vec: SolutionVector) -> frozenset[int]:
        """Ground elements selected by a rank vector, one per chain."""
        self.check_vector(vec)
        return frozenset(self.chains[ci][rank] for ci, rank in enumerate(vec))


def _check_pair(x: SolutionVector, y: SolutionVector):
    if len(x) != len(y):
        raise InputError(f"rank vectors of lengths {len(x)} and {len(y)} do not match")


def join(x: SolutionVector, y: SolutionVector) -> SolutionVector:
    _check_pair(x, y)
    return tuple(a if a >= b else b for a, b in zip(x, y))


def meet(x: SolutionVector, y: SolutionVector) -> SolutionVector:
    _check_pair(x, y)
    return tuple(a if a <= b else b for a, b in zip(x, y))


def leq(x: SolutionVector, y: SolutionVector) -> bool:
    _check_pair(x, y)
    return all(a <= b for a, b in zip(x, y))


def is_left_right_ordered(solutions) -> bool:
    sols = list(solutions)
    return all(leq(sols[i], sols[i + 1]) for i in range(len(sols) - 1))


def lro(solutions) -> LrTuple:
    """Left-right order a tuple of solutions by repeated meet/join exchange.

    Every pairwise pass replaces (X_i, X_j) by (X_i ^ X_j, X_i v X_j), so
    per-element multiplicities are preserved while the result becomes a
    chain X_1 <= ... <= X_k.
    """
    sols = [tuple(s) for s in solutions]
    k = len(sols)
    for i in range(k - 1):
        for j in range(i + 1, k):
            a = meet(sols[i], sols[j])
            b = join(sols[i], sols[j])
            sols[i], sols[j] = a, b
    out = tuple(sols)
    if not is_left_right_ordered(out):
        raise ContractViolationError("pairwise exchange did not produce a chain")
    return out


@dataclass(frozen=True)
class CompactLattice:
    """A distributive solution lattice given by its join-irreducible poset.

    irreducible_solution[p] is the solution obtained by decoding the
    principal ideal of p; decoding a general ideal joins bottom with the
    irreducible solutions of its members.
    """

    decomposition: ChainDecomposition
    poset: Poset
    irreducible_solution: tuple[SolutionVector, ...]
    bottom: SolutionVector

    def __post_init__(self):
        object.__setattr__(
            self, "irreducible_solution",
            tuple(tuple(v) for v in self.irreducible_solution),
        )
        object.__setattr__(self, "bottom", tuple(self.bottom))
        if len(self.irreducible_solution) != self.poset.n:
            raise InputError("one solution per irreducible required")
        self.decomposition.check_vector(self.bottom)
        for p, vec in enumerate(self.irreducible_solution):
            self.decomposition.check_vector(vec)
            if not leq(self.bottom, vec):
                raise ContractViolationError(
                    f"irreducible {p} decodes below the bottom solution"
                )
        for p in range(self.poset.n):
            for q in self.poset.strictly_below(p):
                if not leq(self.irreducible_solution[q], self.irreducible_solution[p]):
                    raise ContractViolationError(
                        f"irreducible order {q} <= {p} not reflected in solutions"
                    )

    @property
    def num_irreducibles(self) -> int:
        return self.poset.n

    @property
    def top(self) -> SolutionVector:
        return self.decode_ideal(frozenset(range(self.poset.n)))

    def decode_ideal(self, ideal: Ideal) -> SolutionVector:
        if not self.poset.is_ideal(ideal):
            raise ContractViolationError(f"{set(ideal)!r} is not an ideal")
        vec = self.bottom
        for p in ideal:
            vec = join(vec, self.irreducible_solution[p])
        return vec

    def encode(self, vec: SolutionVector) -> Ideal:
        """Ideal of irreducibles lying at or below vec."""
        self.decomposition.check_vector(vec)
        return frozenset(
            p for p in range(self.poset.n)
            if leq(self.irreducible_solution[p], vec)
        )

    def solutions(self, cap: int = 1_000_000) -> list[SolutionVector]:
        """All lattice elements, sorted by rank vector."""
        return sorted(self.decode_ideal(i) for i in self.poset.enumerate_ideals(cap))


@dataclass(frozen=True)
class ProductLattice:
    """Lattice of left-right ordered k-tuples over a base CompactLattice.

    The irreducibles are the pairs (i, p): bottom in the first i-1
    positions, then the irreducible solution of p from position i on.
    (i, p) precedes (j, q) iff i >= j and p precedes q in the base poset.
    """

    base: CompactLattice
    k: int
    poset: Poset
    labels: tuple[tuple[int, int], ...]

    @property
    def decomposition(self) -> ChainDecomposition:
        return self.base.decomposition

    @property
    def bottom_tuple(self) -> LrTuple:
        return (self.base.bottom,) * self.k

    @property
    def top_tuple(self) -> LrTuple:
        return (self.base.top,) * self.k

    def decode_ideal(self, ideal: Ideal) -> LrTuple:
        if not self.poset.is_ideal(ideal):
            raise ContractViolationError(f"{set(ideal)!r} is not an ideal")
        per_position: list[list[int]] = [[] for _ in range(self.k)]
        for pid in ideal:
            i, p = self.labels[pid]
            per_position[i - 1].append(p)
        out: list[SolutionVector] = []
        cur = self.base.bottom
        for pos in range(self.k):
            for p in per_position[pos]:
                cur = join(cur, self.base.irreducible_solution[p])
            out.append(cur)
        return tuple(out)

    def encode_tuple(self, solutions) -> Ideal:
        sols = tuple(tuple(s) for s in solutions)
        if len(sols) != self.k:
            raise InputError(f"expected {self.k} solutions, got {len(sols)}")
        if not is_left_right_ordered(sols):
            raise InputError("tuple is not left-right ordered")
        return frozenset(
            pid for pid, (i, p) in enumerate(self.labels)
            if leq(self.base.irreducible_solution[p], sols[i - 1])
        )


def build_product_irreducibles(base: CompactLattice, k: int) -> ProductLattice:
    """Irreducible poset of the lattice of left-right ordered k-tuples.

    There are exactly k * |J(L)| irreducibles: one copy of each base
    irreducible per tuple position.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    m = base.poset.n
    labels = tuple((i, p) for i in range(1, k + 1) for p in range(m))
    relations = []
    for pid_a, (i, p) in enumerate(labels):
        for pid_b, (j, q) in enumerate(labels):
            if pid_a != pid_b and i >= j and base.poset.leq(p, q):
                relations.append((pid_a, pid_b))
    return ProductLattice(base, k, Poset(k * m, relations), labels)
