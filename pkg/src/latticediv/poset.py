"""Finite posets on dense integer elements, their ideals and closures.

Elements are the integers 0..n-1.  A poset is built from arbitrary
precedence pairs (a, b) meaning a precedes b; transitively implied pairs
are tolerated and the stored Hasse diagram is the transitive reduction.
Ideals (down-closed subsets) are plain frozensets.
"""
from __future__ import annotations

import heapq

from .errors import InputError, ResourceLimitError

Ideal = frozenset[int]

DEFAULT_IDEAL_CAP = 1_000_000


class Poset:
    """Partial order on 0..n-1 with reachability, Hasse edges and ideals."""

    __slots__ = ("n", "_below", "_parents", "_children", "_topo")

    def __init__(self, n: int, relations=()):
        if n < 0:
            raise InputError(f"element count must be nonnegative, got {n}")
        self.n = n
        succ: list[set[int]] = [set() for _ in range(n)]
        for pair in relations:
            a, b = pair
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"relation {pair!r} out of range for {n} elements")
            if a == b:
                continue
            succ[a].add(b)

        # Transitive closure by forward DFS from every element.
        above: list[set[int]] = []
        for a in range(n):
            seen: set[int] = set()
            stack = list(succ[a])
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(succ[v])
            if a in seen:
                raise InputError(f"precedence cycle through element {a}")
            above.append(seen)

        below: list[set[int]] = [set() for _ in range(n)]
        for a in range(n):
            for b in above[a]:
                below[b].add(a)
        self._below = tuple(frozenset(s) for s in below)

        # Hasse edge a -> b iff no intermediate c with a < c < b.
        parents: list[tuple[int, ...]] = []
        for b in range(n):
            strict = below[b]
            parents.append(tuple(sorted(
                a for a in strict if not any(a in below[c] for c in strict)
            )))
        self._parents = tuple(parents)
        children: list[list[int]] = [[] for _ in range(n)]
        for b in range(n):
            for a in self._parents[b]:
                children[a].append(b)
        self._children = tuple(tuple(sorted(c)) for c in children)
        self._topo: tuple[int, ...] | None = None

    def __repr__(self):
        return f"Poset(n={self.n}, hasse={list(self.hasse_edges)})"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self._below == other._below

    def __hash__(self):
        return hash((self.n, self._below))

    @property
    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for b in range(self.n) for a in self._parents[b])

    def leq(self, a: int, b: int) -> bool:
        self._check_element(a)
        self._check_element(b)
        return a == b or a in self._below[b]

    def strictly_below(self, e: int) -> frozenset[int]:
        self._check_element(e)
        return self._below[e]

    def parents(self, e: int) -> tuple[int, ...]:
        """Immediate predecessors (Hasse) of e."""
        self._check_element(e)
        return self._parents[e]

    def children(self, e: int) -> tuple[int, ...]:
        """Immediate successors (Hasse) of e."""
        self._check_element(e)
        return self._children[e]

    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n) if not self._parents[e])

    def topo_order(self) -> tuple[int, ...]:
        """Topological order of the elements, smallest id first among ready ones."""
        if self._topo is not None:
            return self._topo
        indeg = [len(self._parents[e]) for e in range(self.n)]
        ready = [e for e in range(self.n) if indeg[e] == 0]
        heapq.heapify(ready)
        order: list[int] = []
        while ready:
            e = heapq.heappop(ready)
            order.append(e)
            for c in self._children[e]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(ready, c)
        self._topo = tuple(order)
        return self._topo

    def _check_element(self, e: int):
        if not (0 <= e < self.n):
            raise InputError(f"element {e!r} out of range for {self.n} elements")

    def _check_members(self, members) -> set[int]:
        s = set(members)
        for e in s:
            self._check_element(e)
        return s

    def is_ideal(self, members) -> bool:
        """True iff members is down-closed."""
        s = self._check_members(members)
        return all(p in s for e in s for p in self._parents[e])

    def down_closure(self, members) -> Ideal:
        """Smallest ideal containing members."""
        s = self._check_members(members)
        closed = set(s)
        for e in s:
            closed.update(self._below[e])
        return frozenset(closed)

    def enumerate_ideals(self, cap: int = DEFAULT_IDEAL_CAP) -> list[Ideal]:
        """All ideals, sorted by (size, members).  Raises once more than cap exist."""
        topo = self.topo_order()
        out: list[Ideal] = []
        chosen: set[int] = set()

        def rec(idx: int):
            if idx == len(topo):
                out.append(frozenset(chosen))
                if len(out) > cap:
                    raise ResourceLimitError(
                        f"poset has more than {cap} ideals"
                    )
                return
            e = topo[idx]
            rec(idx + 1)
            if all(p in chosen for p in self._parents[e]):
                chosen.add(e)
                rec(idx + 1)
                chosen.remove(e)

        rec(0)
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def count_ideals(self, cap: int = DEFAULT_IDEAL_CAP) -> int:
        return len(self.enumerate_ideals(cap))

    def induced_subposet(self, keep) -> "Poset":
        """Restriction to keep, relabelled onto 0..len(keep)-1 in sorted order."""
        kept = sorted(self._check_members(keep))
        index = {e: i for i, e in enumerate(kept)}
        rels = [
            (index[a], index[b])
            for b in kept
            for a in self._below[b]
            if a in index
        ]
        return Poset(len(kept), rels)
