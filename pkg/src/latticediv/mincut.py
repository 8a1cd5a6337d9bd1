"""Minimum s-t cuts as a distributive lattice, unit capacities throughout.

Arcs are ground elements, identified by their index in the input order;
parallel arcs are distinct elements.  A maximum flow yields lambda
arc-disjoint s-t paths which become the chains (non-path arcs sit at the
bottom of chain 0 and are never selected).  Minimum cuts correspond to
residual-closed vertex sets; the strongly connected components of the
residual graph between the forced source and sink regions, ordered by
residual reachability, form the join-irreducible poset of the cut
lattice.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diversity import DiverseOutcome, Measure, maximize_diversity
from .errors import ContractViolationError, InfeasibleError, InputError
from .lattice import ChainDecomposition, CompactLattice, SolutionVector
from .poset import Ideal, Poset


@dataclass(frozen=True)
class FlowNetwork:
    """Directed graph with unit arc capacities and distinguished s, t."""

    vertex_count: int
    arcs: tuple[tuple[int, int], ...]
    source: int
    sink: int

    def __post_init__(self):
        object.__setattr__(
            self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs)
        )
        if self.vertex_count < 2:
            raise InputError("network needs at least two vertices")
        for w in (self.source, self.sink):
            if not (0 <= w < self.vertex_count):
                raise InputError(f"terminal {w} out of range")
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        for a, (u, v) in enumerate(self.arcs):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"arc {a} endpoint out of range")


@dataclass(frozen=True)
class MaxFlowResult:
    """Flow value, cycle-free 0/1 flow per arc, and its path decomposition."""

    value: int
    flow: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


def max_flow(net: FlowNetwork) -> MaxFlowResult:
    """Dinic-style blocking-flow maximum flow, then greedy path extraction.

    Paths are peeled from s choosing the smallest usable arc id at every
    step; flow cycles met on the way are cancelled, so the reported flow
    is exactly the union of the reported paths.
    """
    n, m = net.vertex_count, len(net.arcs)
    head = [0] * (2 * m)
    cap = [0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, (u, v) in enumerate(net.arcs):
        head[2 * a], cap[2 * a] = v, 1
        head[2 * a + 1], cap[2 * a + 1] = u, 0
        adj[u].append(2 * a)
        adj[v].append(2 * a + 1)

    s, t = net.source, net.sink
    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = [s]
        for u in queue:
            for e in adj[u]:
                v = head[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[t] < 0:
            break
        it = [0] * n

        def augment(u: int) -> bool:
            if u == t:
                return True
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = head[e]
                if cap[e] > 0 and level[v] == level[u] + 1 and augment(v):
                    cap[e] -= 1
                    cap[e ^ 1] += 1
                    return True
                it[u] += 1
            return False

        while augment(s):
            value += 1

    if value == 0:
        raise InfeasibleError("sink is unreachable from source")

    flowed: list[list[int]] = [[] for _ in range(n)]
    for a in range(m):
        if cap[2 * a + 1] == 1:
            flowed[net.arcs[a][0]].append(a)
    pointer = [0] * n

    paths: list[tuple[int, ...]] = []
    for _ in range(value):
        verts = [s]
        pos = {s: 0}
        path_arcs: list[int] = []
        while verts[-1] != t:
            u = verts[-1]
            if pointer[u] >= len(flowed[u]):
                raise ContractViolationError("flow conservation broken during peel")
            a = flowed[u][pointer[u]]
            pointer[u] += 1
            v = net.arcs[a][1]
            if v in pos:
                # cycle in the flow: drop its arcs and resume from v
                p = pos[v]
                for w in verts[p + 1:]:
                    del pos[w]
                del verts[p + 1:]
                del path_arcs[p:]
            else:
                verts.append(v)
                pos[v] = len(verts) - 1
                path_arcs.append(a)
        paths.append(tuple(path_arcs))

    final = [0] * m
    for path in paths:
        for a in path:
            final[a] = 1
    return MaxFlowResult(value, tuple(final), tuple(paths))


def chain_decomposition(net: FlowNetwork, flow: MaxFlowResult) -> ChainDecomposition:
    """One chain per flow path in traversal order; non-path arcs go to the
    bottom of chain 0 in arc-id order (no minimum cut contains them)."""
    on_path = {a for path in flow.paths for a in path}
    residual = sorted(set(range(len(net.arcs))) - on_path)
    chains = [list(path) for path in flow.paths]
    chains[0] = residual + chains[0]
    return ChainDecomposition(tuple(tuple(c) for c in chains))


def _residual_adjacency(net: FlowNetwork, flow: MaxFlowResult) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(net.vertex_count)]
    for a, (u, v) in enumerate(net.arcs):
        if flow.flow[a]:
            adj[v].append(u)
        else:
            adj[u].append(v)
    return adj


def _reachable(start: int, adj: list[list[int]]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _sccs(vertices: list[int], adj: list[list[int]]) -> list[list[int]]:
    """Strongly connected components of the induced subgraph, Kosaraju style."""
    inside = set(vertices)
    order: list[int] = []
    seen: set[int] = set()
    for start in vertices:
        if start in seen:
            continue
        stack = [(start, iter(adj[start]))]
        seen.add(start)
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if v in inside and v not in seen:
                    seen.add(v)
                    stack.append((v, iter(adj[v])))
                    advanced = True
                    break
            if not advanced:
                order.append(u)
                stack.pop()
    radj: dict[int, list[int]] = {v: [] for v in vertices}
    for u in vertices:
        for v in adj[u]:
            if v in inside:
                radj[v].append(u)
    comp: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in reversed(order):
        if start in comp:
            continue
        members = [start]
        comp[start] = len(comps)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in radj[u]:
                if v not in comp:
                    comp[v] = len(comps)
                    members.append(v)
                    stack.append(v)
        comps.append(sorted(members))
    return sorted(comps, key=min)


@dataclass(frozen=True)
class PQRepresentation:
    """Compact representation of all minimum cuts of one network.

    poset: join-irreducible poset; node p below q means every cut
    whose source side absorbs q's vertices absorbs p's as well.
    node_vertices: graph vertices of each poset node.
    pulled_vertices: cut-neutral vertices dragged along by each node to
    keep the source side residual-closed.
    source_vertices: the forced source region (the bottom cut's side).
    """

    network: FlowNetwork
    flow: MaxFlowResult
    decomposition: ChainDecomposition
    poset: Poset
    node_vertices: tuple[frozenset[int], ...]
    pulled_vertices: tuple[frozenset[int], ...]
    source_vertices: frozenset[int]

    @property
    def flow_value(self) -> int:
        return self.flow.value


def build_pq(net: FlowNetwork, flow: MaxFlowResult) -> PQRepresentation:
    """Condense the residual graph into the poset of free components.

    Vertices residually reachable from s are forced into every source
    side; vertices residually reaching t are forced out.  The remaining
    components are free, ordered by residual reachability.  Components
    touching no flow path cannot change any cut; they are folded into
    pulled_vertices of the components that reach them.
    """
    decomp = chain_decomposition(net, flow)
    adj = _residual_adjacency(net, flow)
    n = net.vertex_count
    source_side = _reachable(net.source, adj)
    radj: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in adj[u]:
            radj[v].append(u)
    sink_side = _reachable(net.sink, radj)
    if net.sink in source_side:
        raise ContractViolationError("residual path from source to sink remains")

    middle = [v for v in range(n) if v not in source_side and v not in sink_side]
    comps = _sccs(middle, adj)
    comp_of = {}
    for ci, members in enumerate(comps):
        for v in members:
            comp_of[v] = ci

    # reachability between middle components
    succ: list[set[int]] = [set() for _ in comps]
    for u in middle:
        for v in adj[u]:
            if v in comp_of and comp_of[v] != comp_of[u]:
                succ[comp_of[u]].add(comp_of[v])
    reach: list[set[int]] = [set() for _ in comps]
    for ci in range(len(comps)):
        stack = list(succ[ci])
        while stack:
            cj = stack.pop()
            if cj in reach[ci]:
                continue
            reach[ci].add(cj)
            stack.extend(succ[cj])

    path_vertices = {net.source, net.sink}
    for path in flow.paths:
        for a in path:
            u, v = net.arcs[a]
            path_vertices.add(u)
            path_vertices.add(v)

    relevant = [ci for ci in range(len(comps)) if any(v in path_vertices for v in comps[ci])]
    node_of = {ci: ni for ni, ci in enumerate(relevant)}
    relations = []
    for ci in relevant:
        for cj in reach[ci]:
            if cj in node_of:
                # choosing ci forces cj into the source side
                relations.append((node_of[cj], node_of[ci]))
    node_vertices = tuple(frozenset(comps[ci]) for ci in relevant)
    pulled = tuple(
        frozenset(
            v for cj in reach[ci] if cj not in node_of for v in comps[cj]
        )
        for ci in relevant
    )
    poset = Poset(len(relevant), relations)
    return PQRepresentation(
        network=net,
        flow=flow,
        decomposition=decomp,
        poset=poset,
        node_vertices=node_vertices,
        pulled_vertices=pulled,
        source_vertices=frozenset(source_side),
    )


def source_side(pq: PQRepresentation, ideal: Ideal) -> frozenset[int]:
    """Residual-closed source side selected by an ideal of free components."""
    side = set(pq.source_vertices)
    for node in ideal:
        side |= pq.node_vertices[node]
        side |= pq.pulled_vertices[node]
    return frozenset(side)


def decode_cut(pq: PQRepresentation, ideal: Ideal) -> SolutionVector:
    """Rank vector of the cut selected by an ideal: per chain, the unique
    arc leaving the chosen source side."""
    if not pq.poset.is_ideal(ideal):
        raise ContractViolationError(f"{set(ideal)!r} is not an ideal")
    side = source_side(pq, ideal)
    ranks = []
    for chain in pq.decomposition.chains:
        crossing = [
            a for a in chain
            if pq.network.arcs[a][0] in side and pq.network.arcs[a][1] not in side
        ]
        if len(crossing) != 1:
            raise ContractViolationError(
                f"{len(crossing)} crossing arcs on one chain, expected 1"
            )
        ranks.append(pq.decomposition.position(crossing[0])[1])
    return tuple(ranks)


def compact_lattice(pq: PQRepresentation) -> CompactLattice:
    sols = tuple(
        decode_cut(pq, pq.poset.down_closure({p})) for p in range(pq.poset.n)
    )
    return CompactLattice(
        decomposition=pq.decomposition,
        poset=pq.poset,
        irreducible_solution=sols,
        bottom=decode_cut(pq, frozenset()),
    )


@dataclass(frozen=True)
class MincutInstance:
    """Everything derived once per network: flow, chains, cut lattice."""

    network: FlowNetwork
    flow: MaxFlowResult
    pq: PQRepresentation
    lattice: CompactLattice

    @property
    def decomposition(self) -> ChainDecomposition:
        return self.pq.decomposition


def build_instance(net: FlowNetwork) -> MincutInstance:
    flow = max_flow(net)
    pq = build_pq(net, flow)
    return MincutInstance(net, flow, pq, compact_lattice(pq))


def cut_disconnects(net: FlowNetwork, arcs: frozenset[int]) -> bool:
    """Feasibility predicate: removing the arcs separates s from t."""
    adj: list[list[int]] = [[] for _ in range(net.vertex_count)]
    for a, (u, v) in enumerate(net.arcs):
        if a not in arcs:
            adj[u].append(v)
    return net.sink not in _reachable(net.source, adj)


@dataclass(frozen=True)
class DiverseCuts:
    instance: MincutInstance
    solutions: tuple[SolutionVector, ...]
    diversity: int
    solver: str
    oracle_calls: int
    num_irreducibles: int

    def arc_sets(self) -> list[frozenset[int]]:
        return [self.instance.decomposition.elements_of(v) for v in self.solutions]


def diverse_min_cuts(
    net: FlowNetwork, k: int, measure: Measure, solver: str = "auto"
) -> DiverseCuts:
    """Maximum-diversity multiset of k minimum cuts."""
    instance = build_instance(net)
    outcome: DiverseOutcome = maximize_diversity(instance.lattice, k, measure, solver)
    return DiverseCuts(
        instance=instance,
        solutions=outcome.solutions,
        diversity=outcome.diversity,
        solver=outcome.solver,
        oracle_calls=outcome.oracle_calls,
        num_irreducibles=outcome.num_irreducibles,
    )


def _contracted_min_cut(net: FlowNetwork, absorbed: set[int]) -> tuple[int, set[int]]:
    """Min cut value after welding absorbed into s, plus its minimal source side."""
    vmap = [0] * net.vertex_count
    nxt = 1
    for v in range(net.vertex_count):
        if v not in absorbed:
            vmap[v] = nxt
            nxt += 1
    arcs = [
        (vmap[u], vmap[v])
        for u, v in net.arcs
        if vmap[u] != vmap[v]
    ]
    shrunk = FlowNetwork(nxt, tuple(arcs), 0, vmap[net.sink])
    flow = max_flow(shrunk)
    adj = _residual_adjacency(shrunk, flow)
    reach = _reachable(0, adj)
    side = set(absorbed)
    for v in range(net.vertex_count):
        if vmap[v] in reach:
            side.add(v)
    return flow.value, side


def next_disjoint_cut(
    instance: MincutInstance, vec: SolutionVector
) -> SolutionVector | None:
    """Minimal min cut strictly beyond vec on every chain, or None.

    Welds the cut's source side plus the heads of its arcs into s and
    re-tests the cut value: unchanged value means the shrunken network's
    minimal cut is the wanted successor, a larger value means none exists.
    """
    net = instance.network
    decomp = instance.decomposition
    decomp.check_vector(vec)
    cut_arcs = decomp.elements_of(vec)
    heads = {net.arcs[a][1] for a in cut_arcs}
    if net.sink in heads:
        return None
    adj: list[list[int]] = [[] for _ in range(net.vertex_count)]
    for a, (u, v) in enumerate(net.arcs):
        if a not in cut_arcs:
            adj[u].append(v)
    absorbed = _reachable(net.source, adj) | heads
    if net.sink in absorbed:
        raise ContractViolationError("input vector is not a minimum cut")
    value, side = _contracted_min_cut(net, absorbed)
    if value > instance.flow.value:
        return None
    if value < instance.flow.value:
        raise ContractViolationError("contracted cut value dropped below lambda")
    ranks = []
    for ci, chain in enumerate(decomp.chains):
        crossing = [
            a for a in chain
            if net.arcs[a][0] in side and net.arcs[a][1] not in side
        ]
        if len(crossing) != 1:
            raise ContractViolationError("contracted cut does not cross once per chain")
        rank = decomp.position(crossing[0])[1]
        if rank <= vec[ci]:
            raise ContractViolationError("successor cut failed to advance a chain")
        ranks.append(rank)
    return tuple(ranks)


def oracles_from_instance(instance: MincutInstance):
    """Disjoint-solution oracle bundle over an already-built instance."""
    from .disjoint import DisjointOracles

    return DisjointOracles(
        decomposition=instance.decomposition,
        o_min=lambda: instance.lattice.bottom,
        o_max=lambda: instance.lattice.top,
        o_next_disjoint=lambda vec: next_disjoint_cut(instance, vec),
    )


def mincut_oracles(net: FlowNetwork):
    """Bottom, top and fused next-disjoint oracles over the cut lattice."""
    return oracles_from_instance(build_instance(net))
