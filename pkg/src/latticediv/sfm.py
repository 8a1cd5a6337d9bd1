"""Submodular function minimisation over ideals of a poset.

Two solvers share one contract: return a minimising ideal and its exact
integer value.  minimize_exhaustive enumerates ideals; minimize_mnp runs
the Fujishige-Wolfe minimum-norm-point algorithm on a penalised
extension of the objective to all subsets, whose minimisers coincide
with the minimising ideals.  The norm-point run is floating point, but
the answer is accepted only once an integer duality certificate closes,
and is then polished by exact local descent.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError, ResourceLimitError, SolverError
from .poset import Ideal, Poset

DEFAULT_EXHAUSTIVE_CAP = 1_000_000
AUTO_EXHAUSTIVE_LIMIT = 4096

# Numeric guards for the Wolfe iteration, in the spirit of the usual
# implementations: _Z_COEF for convex-coefficient pruning, _Z_GAP for the
# termination test on the duality-style gap.
_Z_COEF = 1e-11
_Z_GAP = 1e-9


@dataclass(frozen=True)
class SubmodularObjective:
    """Integer-valued submodular function on the ideals of a host poset.

    lower_bound and upper_bound bracket every value the oracle can take;
    they size the penalty of the subset extension.
    """

    poset: Poset
    evaluate: Callable[[Ideal], int]
    lower_bound: int
    upper_bound: int

    def __post_init__(self):
        if self.lower_bound > self.upper_bound:
            raise InputError("lower_bound exceeds upper_bound")


@dataclass(frozen=True)
class PenalizedObjective:
    """Subset extension g(S) = f(dcl(S)) + penalty * |dcl(S) \\ S|.

    With penalty > 2 * (upper - lower) every minimiser of g is an ideal
    and g stays submodular on the full subset lattice, so solvers for
    plain set functions apply unchanged.
    """

    base: SubmodularObjective
    penalty: int

    @classmethod
    def from_objective(cls, base: SubmodularObjective) -> "PenalizedObjective":
        return cls(base, 2 * (base.upper_bound - base.lower_bound) + 1)

    def evaluate_subset(self, subset: frozenset[int]) -> int:
        closed = self.base.poset.down_closure(subset)
        return self.base.evaluate(closed) + self.penalty * (len(closed) - len(subset))

    def as_subset_objective(self) -> SubmodularObjective:
        """The extension viewed as an objective over an antichain host.

        Every subset of an antichain is an ideal, which makes the
        sampling checks below applicable to g itself.
        """
        n = self.base.poset.n
        return SubmodularObjective(
            Poset(n, ()),
            self.evaluate_subset,
            self.base.lower_bound,
            self.base.upper_bound + self.penalty * n,
        )


def minimize_exhaustive(
    obj: SubmodularObjective, cap: int = DEFAULT_EXHAUSTIVE_CAP
) -> tuple[Ideal, int]:
    """Scan every ideal; ties go to the lexicographically smallest member set."""
    best: tuple[int, tuple[int, ...]] | None = None
    best_ideal: Ideal | None = None
    for ideal in obj.poset.enumerate_ideals(cap):
        key = (int(obj.evaluate(ideal)), tuple(sorted(ideal)))
        if best is None or key < best:
            best = key
            best_ideal = ideal
    return best_ideal, best[0]


def verify_submodular_sample(
    obj: SubmodularObjective, trials: int = 1000, seed: int = 0
) -> bool:
    """Check the submodular inequality on randomly sampled ideal pairs."""
    rng = random.Random(seed)
    n = obj.poset.n
    for _ in range(trials):
        density = rng.choice((0.2, 0.5, 0.8))
        a = obj.poset.down_closure(
            {e for e in range(n) if rng.random() < density}
        )
        b = obj.poset.down_closure(
            {e for e in range(n) if rng.random() < density}
        )
        if obj.evaluate(a | b) + obj.evaluate(a & b) > obj.evaluate(a) + obj.evaluate(b):
            return False
    return True


def _affine_minimizer(points: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Min-norm point of the affine hull of points, with its coefficients."""
    a = np.vstack(points)
    q = len(points)
    system = np.zeros((q + 1, q + 1))
    system[0, 1:] = 1.0
    system[1:, 0] = 1.0
    system[1:, 1:] = a @ a.T
    rhs = np.zeros(q + 1)
    rhs[0] = 1.0
    coef = np.linalg.lstsq(system, rhs, rcond=None)[0][1:]
    return coef, a.T @ coef


def _local_descent(obj: SubmodularObjective, ideal: Ideal, value: int) -> tuple[Ideal, int]:
    """Greedy single-element ideal moves, strict improvements only."""
    current = set(ideal)
    improved = True
    while improved:
        improved = False
        for e in sorted(set(range(obj.poset.n)) - current):
            if all(p in current for p in obj.poset.parents(e)):
                candidate = frozenset(current | {e})
                v = int(obj.evaluate(candidate))
                if v < value:
                    current, value, improved = set(candidate), v, True
                    break
        if improved:
            continue
        for e in sorted(current):
            if not any(c in current for c in obj.poset.children(e)):
                candidate = frozenset(current - {e})
                v = int(obj.evaluate(candidate))
                if v < value:
                    current, value, improved = set(candidate), v, True
                    break
    return frozenset(current), value


def minimize_mnp(
    obj: SubmodularObjective,
    max_major: int | None = None,
    tolerance: float = _Z_GAP,
) -> tuple[Ideal, int]:
    """Fujishige-Wolfe minimum-norm-point minimisation.

    Runs Wolfe's algorithm on the base polytope of the normalised
    penalised extension.  After every major cycle the current point is
    rounded: all prefixes of its sorted order are down-closed and
    evaluated exactly.  Because the objective is integral, the best
    rounded value is provably optimal as soon as it is within one unit
    of the negative-part lower bound, which is the stopping rule.
    """
    m = obj.poset.n
    if m == 0:
        empty = frozenset()
        return empty, int(obj.evaluate(empty))

    pen = PenalizedObjective.from_objective(obj)
    cache: dict[frozenset[int], int] = {}

    def g(subset: frozenset[int]) -> int:
        value = cache.get(subset)
        if value is None:
            value = pen.evaluate_subset(subset)
            cache[subset] = value
        return value

    g_empty = g(frozenset())

    def greedy_vertex(weights: np.ndarray) -> np.ndarray:
        order = np.argsort(weights, kind="stable")
        vertex = np.empty(m)
        members: set[int] = set()
        previous = g_empty
        for e in order:
            members.add(int(e))
            current = g(frozenset(members))
            vertex[int(e)] = current - previous
            previous = current
        return vertex

    best_value: int | None = None
    best_ideal: Ideal | None = None
    best_key: tuple[int, tuple[int, ...]] | None = None

    def consider(subset: frozenset[int]):
        nonlocal best_value, best_ideal, best_key
        ideal = obj.poset.down_closure(subset)
        key = (int(obj.evaluate(ideal)), tuple(sorted(ideal)))
        if best_key is None or key < best_key:
            best_key = key
            best_value = key[0]
            best_ideal = ideal

    def round_point(point: np.ndarray):
        consider(frozenset())
        members: list[int] = []
        for e in np.argsort(point, kind="stable"):
            members.append(int(e))
            consider(frozenset(members))

    x = greedy_vertex(np.zeros(m))
    body = [x.copy()]
    coef = np.array([1.0])
    if max_major is None:
        max_major = 50 * m + 200

    certified = False
    for _ in range(max_major):
        round_point(x)
        lower = float(np.minimum(x, 0.0).sum())
        if best_value - g_empty < lower + 1.0 - 1e-6:
            certified = True
            break
        vertex = greedy_vertex(x)
        scale = max(1.0, float(x @ x))
        if float(x @ vertex) >= float(x @ x) - tolerance * scale:
            # Wolfe converged; the certificate is re-checked below.
            break
        body.append(vertex)
        coef = np.append(coef, 0.0)
        while True:
            new_coef, y = _affine_minimizer(body)
            if new_coef.min() >= -_Z_COEF:
                x = y
                coef = np.maximum(new_coef, 0.0)
                break
            shrink = coef - new_coef
            mask = shrink > _Z_COEF
            theta = min(1.0, float(np.min(coef[mask] / shrink[mask])))
            coef = (1.0 - theta) * coef + theta * new_coef
            keep = coef > _Z_COEF
            if not keep.any():
                keep[int(np.argmax(coef))] = True
            body = [b for b, k in zip(body, keep) if k]
            coef = coef[keep]
            coef = coef / coef.sum()
            x = np.vstack(body).T @ coef

    if not certified:
        round_point(x)
        lower = float(np.minimum(x, 0.0).sum())
        if best_value - g_empty >= lower + 1.0 - 1e-6:
            raise SolverError(
                "minimum-norm-point solve did not certify an optimum",
                best_value=best_value,
            )

    best_ideal, best_value = _local_descent(obj, best_ideal, best_value)
    return best_ideal, best_value


def minimize(
    obj: SubmodularObjective,
    solver: str = "auto",
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> tuple[Ideal, int, str]:
    """Dispatch to a solver; 'auto' scans unless the ideal count tops 4096."""
    if solver == "exhaustive":
        ideal, value = minimize_exhaustive(obj, cap)
        return ideal, value, "exhaustive"
    if solver == "mnp":
        ideal, value = minimize_mnp(obj)
        return ideal, value, "mnp"
    if solver != "auto":
        raise InputError(f"unknown solver {solver!r}")
    try:
        ideal, value = minimize_exhaustive(obj, AUTO_EXHAUSTIVE_LIMIT)
        return ideal, value, "exhaustive"
    except ResourceLimitError:
        ideal, value = minimize_mnp(obj)
        return ideal, value, "mnp"
