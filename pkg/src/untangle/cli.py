"""Command-line front end.

Every command prints its result on stdout, one line per fact, with the
answer first. Diagnostics go to stderr. Exit status is 0 whenever an answer
was produced (YES and NO alike), 1 for usage or input errors, 2 when a solver
refuses an instance as too large and 3 if a produced witness fails its own
re-verification.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import fileio
from .branch import solve_max_branching
from .core import (
    Instance,
    MalformedTimelineError,
    Multicolored,
    Objective,
    ObjectiveKind,
    SolveOutcome,
    SolverRefusal,
    TemporalGraph,
    Uniform,
    verify_timeline,
)
from .dp import solve_max_dp, solve_sum_dp
from .layerzero import solve_zero
from .oracle import oracle_solve
from .patterns import solve_sum_patterns
from . import reductions as red

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_INTERNAL = 0, 1, 2, 3

ALGOS = ("auto", "oracle", "max-dp", "sum-dp", "branch", "zero", "patterns")
BRANCH_LIMIT = 24  # auto uses the search tree while the budgets sum to at most this


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _parse(path: str, parser, *extra):
    try:
        return parser(_read(path), *extra)
    except fileio.ParseError as exc:
        raise fileio.ParseError(f"{path}: {exc}") from None


def _load_graph(path: str) -> TemporalGraph:
    return _parse(path, fileio.parse_graph_file, path).graph


def _load_budget(args, n: int):
    if args.k is not None:
        return Uniform(args.k)
    if args.budgets is not None:
        return _parse(args.budgets, fileio.parse_budgets, n)
    budget = _parse(args.colors, fileio.parse_budgets, n)
    if not isinstance(budget, Multicolored):
        raise UsageError(f"{args.colors}: a color file needs 'class' and 'member' lines")
    return budget


def _add_budget_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--k", type=int, help="uniform interval budget per vertex")
    group.add_argument("--budgets", metavar="FILE", help="budget file (.bud)")
    group.add_argument("--colors", metavar="FILE", help="color class budget file (.bud)")


def _add_objective_flags(p: argparse.ArgumentParser, ell: bool = True) -> None:
    p.add_argument("--objective", choices=[k.value for k in ObjectiveKind], required=True)
    if ell:
        p.add_argument("--ell", type=int, required=True, help="bound on interval lengths")


# ---------------------------------------------------------------------------
# solver dispatch


def pick_algorithm(g: TemporalGraph, budget, objective: Objective) -> str:
    if objective.ell == 0:
        return "zero"
    if isinstance(budget, Multicolored):
        if objective.kind is ObjectiveKind.MAX and objective.ell == 1:
            return "per-vertex"
        return "oracle"
    if objective.kind is ObjectiveKind.MAX:
        return "branch" if sum(budget.vertex_limits(g.n)) <= BRANCH_LIMIT else "max-dp"
    return "sum-dp"


def _check_compatible(algo: str, budget, objective: Objective) -> None:
    kind = objective.kind
    if algo in ("max-dp", "branch") and kind is not ObjectiveKind.MAX:
        raise UsageError(f"--algo {algo} solves the max objective only")
    if algo in ("sum-dp", "patterns") and kind is not ObjectiveKind.SUM:
        raise UsageError(f"--algo {algo} solves the sum objective only")
    if algo == "zero" and objective.ell != 0:
        raise UsageError("--algo zero needs --ell 0")
    if algo in ("max-dp", "sum-dp", "branch", "patterns") and isinstance(budget, Multicolored):
        raise UsageError(f"--algo {algo} does not take color class budgets")


def run_solver(g: TemporalGraph, budget, objective: Objective, algo: str = "auto"):
    """Return ``(outcome, algorithm used)``; raises :class:`SolverRefusal` past size caps."""
    chosen = pick_algorithm(g, budget, objective) if algo == "auto" else algo
    _check_compatible(chosen, budget, objective)
    ell = objective.ell
    if chosen == "per-vertex":
        # class budgets become per-vertex ones through appended clique layers
        source = Instance(g, budget, objective)
        target = red.reduce_multicolored_to_nonuniform(source)
        # the clique layers make the table huge while the search tree stays small
        outcome = solve_max_branching(target.graph, target.budget, 1)
        if outcome:
            witness = red.nonuniform_to_multicolored_timeline(source, outcome.witness)
            outcome = SolveOutcome.yes(witness, **outcome.stats)
        return outcome, chosen
    if chosen == "oracle":
        return oracle_solve(g, budget, objective), chosen
    if chosen == "zero":
        return solve_zero(g, budget), chosen
    if chosen == "branch":
        return solve_max_branching(g, budget, ell), chosen
    if chosen == "max-dp":
        return solve_max_dp(g, budget, ell), chosen
    if chosen == "patterns":
        return solve_sum_patterns(g, budget, ell), chosen
    try:
        return solve_sum_dp(g, budget, ell), chosen
    except SolverRefusal as exc:
        if algo != "auto":
            raise
        print(f"sum-dp refused ({exc}); trying patterns", file=sys.stderr)
        return solve_sum_patterns(g, budget, ell), "patterns"


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    budget = _load_budget(args, g.n)
    objective = Objective(args.objective, args.ell)
    outcome, used = run_solver(g, budget, objective, args.algo)
    print("YES" if outcome else "NO")
    print(f"algorithm {used}; stats {outcome.stats}", file=sys.stderr)
    if outcome and args.witness:
        Path(args.witness).write_text(fileio.render_timeline(outcome.witness), encoding="utf-8")
        written = fileio.parse_timeline(_read(args.witness))
        verdict = verify_timeline(g, written, budget, objective)
        if not verdict:
            print(f"internal error: witness fails verification: {verdict}", file=sys.stderr)
            return EXIT_INTERNAL
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    budget = _load_budget(args, g.n)
    timeline = _parse(args.timeline, fileio.parse_timeline)
    print(verify_timeline(g, timeline, budget, Objective(args.objective, args.ell)))
    return EXIT_OK


def _min_ell_bound(g: TemporalGraph, kind: ObjectiveKind) -> int:
    # one interval [1, tau] per vertex dominates any other choice for that vertex
    per_vertex = max(g.tau - 1, 0)
    return per_vertex if kind is ObjectiveKind.MAX else g.n * per_vertex


def cmd_min_ell(args) -> int:
    g = _load_graph(args.graph)
    budget = _load_budget(args, g.n)
    kind = ObjectiveKind(args.objective)
    bound = _min_ell_bound(g, kind)
    if not run_solver(g, budget, Objective(kind, bound), args.algo)[0]:
        print("INF")
        return EXIT_OK
    for ell in range(bound + 1):
        if run_solver(g, budget, Objective(kind, ell), args.algo)[0]:
            print(ell)
            return EXIT_OK
    raise AssertionError("unreachable: the upper bound was feasible")


def _write_instance(prefix: str, inst: Instance) -> None:
    Path(f"{prefix}.tg").write_text(fileio.render_temporal_graph(inst.graph), encoding="utf-8")
    Path(f"{prefix}.bud").write_text(fileio.render_budgets(inst.budget), encoding="utf-8")
    print(f"n {inst.graph.n}")
    print(f"tau {inst.graph.tau}")
    print(f"objective {inst.objective.kind.value}")
    print(f"ell {inst.objective.ell}")
    print(f"wrote {prefix}.tg {prefix}.bud", file=sys.stderr)


def render_cnf(inst: red.TwoCnfInstance) -> str:
    """``s <budget>`` then one ``c`` line per clause; literals are ``[-]v.i``."""

    def lit(literal):
        (v, i), positive = literal
        return f"{'' if positive else '-'}{v}.{i}"

    lines = [f"s {inst.s}"] + [f"c {lit(a)} {lit(b)}" for a, b in inst.clauses]
    return "\n".join(lines) + "\n"


def cmd_reduce(args) -> int:
    kind = args.kind
    if kind == "binpacking":
        bp = _parse(args.input, fileio.parse_binpacking)
        _write_instance(args.out, red.reduce_binpacking_to_multicolored(bp.normalized()))
        return EXIT_OK

    g = _load_graph(args.input)
    if kind == "oct":
        if g.tau != 1:
            raise UsageError("an odd cycle transversal input is a single-layer graph")
        if args.s is None:
            raise UsageError("reduce oct needs --s")
        _write_instance(args.out, red.reduce_oct_to_sum(red.StaticGraphInstance(g.n, g.layer(1), args.s)))
    elif kind == "almost2sat":
        if args.ell is None:
            raise UsageError("reduce almost2sat needs --ell")
        cnf = red.reduce_sum_tau2_to_almost2sat(g, args.ell)
        Path(f"{args.out}.cnf").write_text(render_cnf(cnf), encoding="utf-8")
        print(f"variables {len(cnf.variables)}")
        print(f"clauses {len(cnf.clauses)}")
        print(f"s {cnf.s}")
    elif kind == "multicolored":
        if args.colors is None:
            raise UsageError("reduce multicolored needs --colors")
        budget = _load_budget(args, g.n)
        inst = Instance(g, budget, Objective(ObjectiveKind.MAX, 1))
        _write_instance(args.out, red.reduce_multicolored_to_nonuniform(inst))
    else:  # nonuniform
        if args.budgets is None and args.k is None:
            raise UsageError("reduce nonuniform needs --budgets or --k")
        budget = _load_budget(args, g.n)
        if isinstance(budget, Multicolored):
            raise UsageError("reduce nonuniform takes per-vertex budgets")
        inst = Instance(g, budget, Objective(ObjectiveKind.MAX, 1))
        _write_instance(args.out, red.reduce_nonuniform_to_uniform(inst))
    return EXIT_OK


def random_binpacking(beta: int, B: int, seed: int) -> red.BinPackingInstance:
    """Cut each bin of size ``B`` at random points, then shuffle the pieces."""
    rng = random.Random(seed)
    sizes: list[int] = []
    for _ in range(beta):
        cuts = sorted(rng.sample(range(1, B), rng.randint(0, B - 1)))
        bounds = [0, *cuts, B]
        sizes.extend(b - a for a, b in zip(bounds, bounds[1:]))
    rng.shuffle(sizes)
    return red.BinPackingInstance(tuple(sizes), beta, B)


def cmd_generate(args) -> int:
    if args.kind == "random":
        for name in ("n", "tau", "p"):
            if getattr(args, name) is None:
                raise UsageError(f"generate random needs --{name}")
        text = fileio.render_temporal_graph(red.generate_random(args.n, args.tau, args.p, args.seed))
    else:
        if args.beta is None or args.B is None:
            raise UsageError("generate binpacking needs --beta and --B")
        text = fileio.render_binpacking(random_binpacking(args.beta, args.B, args.seed))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="untangle", description="Cover temporal graphs with few, short activity intervals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("graph")
    _add_objective_flags(p)
    _add_budget_flags(p)
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--witness", metavar="OUT", help="write the timeline here on YES")
    p.add_argument(
        "--deterministic", action="store_true", help="accepted for compatibility; solvers are always sequential"
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a timeline against an instance")
    p.add_argument("graph")
    p.add_argument("timeline")
    _add_objective_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("min-ell", help="smallest feasible length bound")
    p.add_argument("graph")
    _add_objective_flags(p, ell=False)
    _add_budget_flags(p)
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.set_defaults(func=cmd_min_ell)

    p = sub.add_parser("reduce", help="build an instance from a source problem")
    p.add_argument("kind", choices=["oct", "almost2sat", "binpacking", "multicolored", "nonuniform"])
    p.add_argument("input")
    p.add_argument("--out", required=True, metavar="PREFIX", help="output path without extension")
    p.add_argument("--s", type=int, help="deletion budget (oct)")
    p.add_argument("--ell", type=int, help="sum bound of the two-layer instance (almost2sat)")
    _add_budget_flags(p, required=False)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("generate", help="random instances")
    p.add_argument("kind", choices=["random", "binpacking"])
    p.add_argument("--n", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--beta", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except fileio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, TypeError, MalformedTimelineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
