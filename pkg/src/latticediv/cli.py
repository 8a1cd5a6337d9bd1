"""Command-line front end: parse instances, dispatch solvers, emit reports.

Grammar:

    latticediv <problem> <mode> --input FILE [--k K] [--measure M]
               [--solver S] [--output json|text] [--seed N] [--values FILE]

with problem in {mincut, matching} and mode in {diverse, disjoint,
enumerate}.  Reports are JSON by default and byte-identical across runs
with identical inputs.  Exit codes: 0 success, 1 malformed input,
2 infeasible instance, 3 resource guard exceeded, 4 internal error.

A hidden `selftest` subcommand reruns the seeded sampling checks.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bruteforce, diversity, sfm
from . import matching as matching_mod
from . import mincut as mincut_mod
from . import poset as poset_mod
from .disjoint import max_disjoint
from .errors import (
    ConfigurationError,
    ContractViolationError,
    InfeasibleError,
    InputError,
    ResourceLimitError,
    SolverError,
)
from .lattice import join as vector_join, lro, meet as vector_meet
from .matching import PreferenceProfile
from .mincut import FlowNetwork
from .poset import Poset

PROBLEMS = ("mincut", "matching")
MODES = ("diverse", "disjoint", "enumerate")
SOLVERS = ("auto", "exhaustive", "mnp")
OUTPUTS = ("json", "text")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, fully determined."""

    problem: str
    mode: str
    input_path: str
    k: int = 2
    measure: str = "sum"
    solver: str = "auto"
    output: str = "json"
    seed: int = 0
    values_path: str | None = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InputError(f"unknown problem {self.problem!r}")
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if self.measure not in diversity.MEASURE_KINDS:
            raise InputError(f"unknown measure {self.measure!r}")
        if self.solver not in SOLVERS:
            raise InputError(f"unknown solver {self.solver!r}")
        if self.output not in OUTPUTS:
            raise InputError(f"unknown output style {self.output!r}")


def _significant_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _int(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"expected an integer, got {token!r}") from None


def parse_network(text: str) -> FlowNetwork:
    """Graph format: `p <vertices> <arcs> <s> <t>`, then one `a <u> <v>`
    line per arc; 1-indexed; duplicate lines are parallel arcs and `#`
    starts a comment line."""
    rows = _significant_lines(text)
    if not rows:
        raise InputError("graph file holds no data lines")
    header = rows[0].split()
    if len(header) != 5 or header[0] != "p":
        raise InputError("graph header must read 'p <vertices> <arcs> <s> <t>'")
    nv, na, s, t = (_int(tok) for tok in header[1:])
    if nv < 1 or na < 0:
        raise InputError("vertex and arc counts must be positive")
    if len(rows) - 1 != na:
        raise InputError(f"header promises {na} arcs, file holds {len(rows) - 1}")
    arcs = []
    for row in rows[1:]:
        tok = row.split()
        if len(tok) != 3 or tok[0] != "a":
            raise InputError(f"arc lines must read 'a <u> <v>', got {row!r}")
        u, v = _int(tok[1]), _int(tok[2])
        for w in (u, v):
            if not 1 <= w <= nv:
                raise InputError(f"vertex {w} out of range 1..{nv}")
        arcs.append((u - 1, v - 1))
    for w in (s, t):
        if not 1 <= w <= nv:
            raise InputError(f"terminal {w} out of range 1..{nv}")
    return FlowNetwork(nv, tuple(arcs), s - 1, t - 1)


def parse_profile(text: str) -> PreferenceProfile:
    """Preference format: `n`, then n A-side rows and n B-side rows of n
    whitespace-separated 1-indexed entries; `#` starts a comment line."""
    rows = _significant_lines(text)
    if not rows:
        raise InputError("profile file holds no data lines")
    header = rows[0].split()
    if len(header) != 1:
        raise InputError("profile header must hold the single number n")
    n = _int(header[0])
    if n < 1:
        raise InputError(f"profile size must be positive, got {n}")
    if len(rows) - 1 != 2 * n:
        raise InputError(
            f"expected {2 * n} preference rows, file holds {len(rows) - 1}"
        )

    def read_side(raw_rows):
        side = []
        for row in raw_rows:
            entries = [_int(tok) for tok in row.split()]
            if len(entries) != n:
                raise InputError(f"preference row {row!r} must hold {n} entries")
            for e in entries:
                if not 1 <= e <= n:
                    raise InputError(f"preference entry {e} out of range 1..{n}")
            side.append(tuple(e - 1 for e in entries))
        return tuple(side)

    return PreferenceProfile(read_side(rows[1 : 1 + n]), read_side(rows[1 + n :]))


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_values(path: str) -> tuple[int, ...]:
    try:
        data = json.loads(_read_file(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"values file is not valid JSON: {exc}") from None
    if not isinstance(data, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in data
    ):
        raise InputError("values file must be a JSON array of integers")
    return tuple(data)


def _serialize_cuts(net: FlowNetwork, decomp, vecs) -> list:
    out = []
    for vec in vecs:
        arcs = sorted(decomp.elements_of(vec))
        out.append([[net.arcs[a][0] + 1, net.arcs[a][1] + 1, a + 1] for a in arcs])
    return out


def _serialize_matchings(profile: PreferenceProfile, vecs) -> list:
    return [
        [[a + 1, b + 1] for a, b in matching_mod.matching_pairs(profile, vec)]
        for vec in vecs
    ]


def _validate_cuts(instance, vecs):
    lam = instance.flow.value
    for vec in vecs:
        arcs = instance.decomposition.elements_of(vec)
        if len(arcs) != lam or not mincut_mod.cut_disconnects(instance.network, arcs):
            raise ContractViolationError("emitted cut fails re-validation")


def _validate_matchings(profile, vecs):
    for vec in vecs:
        if not matching_mod.is_stable(profile, vec):
            raise ContractViolationError("emitted matching fails re-validation")


def run(config: RunConfig) -> dict:
    """Solve one configured run and return the report dictionary."""
    text = _read_file(config.input_path)
    values = _load_values(config.values_path) if config.values_path else None
    measure = diversity.Measure(config.measure, values)

    if config.problem == "mincut":
        net = parse_network(text)
        instance = mincut_mod.build_instance(net)
        serialize = lambda vecs: _serialize_cuts(net, instance.decomposition, vecs)
        validate = lambda vecs: _validate_cuts(instance, vecs)
        oracles = lambda: mincut_mod.oracles_from_instance(instance)
    else:
        profile = parse_profile(text)
        instance = matching_mod.build_instance(profile)
        serialize = lambda vecs: _serialize_matchings(profile, vecs)
        validate = lambda vecs: _validate_matchings(profile, vecs)
        oracles = lambda: matching_mod.oracles_from_instance(instance)

    decomp = instance.decomposition
    if config.mode == "diverse":
        outcome = diversity.maximize_diversity(
            instance.lattice, config.k, measure, config.solver
        )
        vecs = outcome.solutions
        k, value = config.k, outcome.diversity
        stats = {
            "num_irreducibles": outcome.num_irreducibles,
            "oracle_calls": outcome.oracle_calls,
            "solver": outcome.solver,
        }
    elif config.mode == "disjoint":
        result = max_disjoint(oracles())
        vecs = result.solutions
        # for a disjoint family, report its size and its pairwise Hamming sum
        k, value = len(vecs), diversity.d_sum(decomp, vecs)
        stats = {
            "num_irreducibles": instance.lattice.num_irreducibles,
            "oracle_calls": result.oracle_calls,
            "solver": "oracle",
        }
    else:
        vecs = instance.lattice.solutions(cap=poset_mod.DEFAULT_IDEAL_CAP)
        k, value = len(vecs), 0
        stats = {
            "num_irreducibles": instance.lattice.num_irreducibles,
            "oracle_calls": 0,
            "solver": "none",
        }

    validate(vecs)
    return {
        "problem": config.problem,
        "k": k,
        "measure": config.measure,
        "diversity": value,
        "solutions": serialize(vecs),
        "stats": stats,
    }


def render(report: dict, style: str) -> str:
    if style == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [
        f"problem: {report['problem']}",
        f"k: {report['k']}",
        f"measure: {report['measure']}",
        f"diversity: {report['diversity']}",
    ]
    for i, sol in enumerate(report["solutions"], start=1):
        body = " ".join("-".join(str(x) for x in element) for element in sol)
        lines.append(f"solution {i}: {body}")
    stats = report["stats"]
    lines.append(
        "stats: irreducibles={num_irreducibles} oracle_calls={oracle_calls} "
        "solver={solver}".format(**stats)
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# seeded instance generators, shared by selftest and the test suite


def random_network(
    rng: random.Random,
    min_vertices: int = 4,
    max_vertices: int = 8,
    min_arcs: int = 6,
    max_arcs: int = 16,
) -> FlowNetwork:
    """Random digraph with a guaranteed s-t path; parallel arcs allowed."""
    nv = rng.randint(min_vertices, max_vertices)
    s, t = 0, nv - 1
    inner = list(range(1, nv - 1))
    rng.shuffle(inner)
    spine = [s] + inner[: rng.randint(0, min(len(inner), 3))] + [t]
    arcs = [(spine[i], spine[i + 1]) for i in range(len(spine) - 1)]
    target = rng.randint(max(min_arcs, len(arcs)), max_arcs)
    while len(arcs) < target:
        u, v = rng.randrange(nv), rng.randrange(nv)
        if u != v:
            arcs.append((u, v))
    return FlowNetwork(nv, tuple(arcs), s, t)


def random_profile(rng: random.Random, n: int) -> PreferenceProfile:
    def side():
        return tuple(tuple(rng.sample(range(n), n)) for _ in range(n))

    return PreferenceProfile(side(), side())


def random_poset(rng: random.Random, n: int, edge_probability: float = 0.3) -> Poset:
    relations = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_probability
    ]
    return Poset(n, relations)


def random_objective(rng: random.Random, poset: Poset) -> sfm.SubmodularObjective:
    """Random integer submodular objective: modular + coverage + concave."""
    n = poset.n
    weights = [rng.randint(-5, 5) for _ in range(n)]
    universe = max(2, n)
    cover = [
        frozenset(rng.sample(range(universe), rng.randint(0, universe // 2 + 1)))
        for _ in range(n)
    ]
    increments = sorted((rng.randint(0, 3) for _ in range(n)), reverse=True)
    prefix = [0]
    for inc in increments:
        prefix.append(prefix[-1] + inc)

    def evaluate(ideal):
        total = sum(weights[e] for e in ideal)
        covered = set()
        for e in ideal:
            covered |= cover[e]
        return total + 2 * len(covered) + prefix[len(ideal)]

    lower = sum(w for w in weights if w < 0)
    upper = sum(w for w in weights if w > 0) + 2 * universe + prefix[n]
    return sfm.SubmodularObjective(poset, evaluate, lower, upper)


def selftest(seed: int = 0, trials: int = 300) -> list[str]:
    """Seeded sampling checks across the whole stack; raises on violation."""
    rng = random.Random(seed)
    lines = []

    for case in range(4):
        poset = random_poset(rng, rng.randint(3, 7))
        objective = random_objective(rng, poset)
        penalized = sfm.PenalizedObjective.from_objective(objective)
        if not sfm.verify_submodular_sample(
            penalized.as_subset_objective(), trials=trials, seed=rng.randrange(1 << 30)
        ):
            raise ContractViolationError(f"penalised objective {case} not submodular")
        _, exact = sfm.minimize_exhaustive(objective)
        _, approx = sfm.minimize_mnp(objective)
        if exact != approx:
            raise ContractViolationError(
                f"solver disagreement on objective {case}: {exact} vs {approx}"
            )
    lines.append("selftest: submodular solver checks passed")

    for _ in range(3):
        net = random_network(rng)
        instance = mincut_mod.build_instance(net)
        sols = instance.lattice.solutions()
        decomp = instance.decomposition
        for _ in range(trials):
            pair = [rng.choice(sols), rng.choice(sols)]
            if vector_join(*pair) not in sols or vector_meet(*pair) not in sols:
                raise ContractViolationError("cut lattice not closed under join/meet")
            tup = tuple(rng.choice(sols) for _ in range(3))
            before = diversity.multiplicity(decomp, tup)
            after = diversity.multiplicity(decomp, lro(tup))
            if before != after:
                raise ContractViolationError("ordering changed multiplicities")
            if diversity.d_sum(decomp, tup) != diversity.d_sum_via_multiplicity(
                decomp, tup
            ):
                raise ContractViolationError("pairwise-distance identity failed")
    lines.append("selftest: mincut lattice checks passed")

    for _ in range(3):
        profile = random_profile(rng, rng.randint(3, 4))
        instance = matching_mod.build_instance(profile)
        enumerated = bruteforce.enumerate_stable_matchings(profile)
        if instance.lattice.poset.count_ideals() != len(enumerated.solutions):
            raise ContractViolationError("rotation ideals do not count the matchings")
        for vec in instance.lattice.solutions():
            if not matching_mod.is_stable(profile, vec):
                raise ContractViolationError("decoded matching unstable")
    lines.append("selftest: matching lattice checks passed")
    return lines


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="latticediv",
        description="Diverse and disjoint minimum s-t cuts and stable matchings.",
    )
    parser.add_argument("problem", choices=PROBLEMS, help="instance family")
    parser.add_argument(
        "mode", choices=MODES, help="diverse multiset, disjoint family, or listing"
    )
    parser.add_argument("--input", required=True, help="instance file")
    parser.add_argument("--k", type=int, default=2, help="multiset size (diverse mode)")
    parser.add_argument(
        "--measure", choices=diversity.MEASURE_KINDS, default="sum",
        help="diversity measure",
    )
    parser.add_argument("--solver", choices=SOLVERS, default="auto")
    parser.add_argument("--output", choices=OUTPUTS, default="json")
    parser.add_argument("--seed", type=int, default=0, help="rng seed")
    parser.add_argument(
        "--values", default=None, metavar="FILE",
        help="JSON array of per-element values for the abs measure",
    )
    return parser


def _selftest_parser() -> _Parser:
    parser = _Parser(prog="latticediv selftest")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=300)
    return parser


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        if args[:1] == ["selftest"]:
            opts = _selftest_parser().parse_args(args[1:])
            for line in selftest(opts.seed, opts.trials):
                print(line)
            return EXIT_OK
        opts = build_parser().parse_args(args)
        config = RunConfig(
            problem=opts.problem,
            mode=opts.mode,
            input_path=opts.input,
            k=opts.k,
            measure=opts.measure,
            solver=opts.solver,
            output=opts.output,
            seed=opts.seed,
            values_path=opts.values,
        )
        report = run(config)
    except (InputError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ContractViolationError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render(report, config.output))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
