"""Exhaustive reference solver.

Edge-driven depth-first search: take the earliest uncovered time-edge and
branch on every admissible interval of either endpoint that contains its time
step. No memoization, no pruning beyond clipping interval ranges to the
length bound. Slow on purpose; it shares nothing with the other solvers.
"""

from __future__ import annotations

from .core import (
    Interval,
    Objective,
    ObjectiveKind,
    SolveOutcome,
    SolverRefusal,
    TemporalGraph,
    as_budget,
    state_cap,
)

DEFAULT_CAP = 20  # n * tau


def _check_cap(g: TemporalGraph, cap: int | None) -> None:
    limit = state_cap(DEFAULT_CAP) if cap is None else cap
    if g.n * g.tau > limit:
        raise SolverRefusal(
            f"oracle refuses n*tau = {g.n * g.tau} > {limit}", estimate=g.n * g.tau, cap=limit
        )


def oracle_solve(g: TemporalGraph, budget, obj: Objective, cap: int | None = None) -> SolveOutcome:
    _check_cap(g, cap)
    groups = as_budget(budget).groups(g.n)
    group_of = [None] * (g.n + 1)
    for gi, (members, _) in enumerate(groups):
        for v in members:
            group_of[v] = gi
    room = [k for _, k in groups]

    time_edges = list(g.time_edges())
    tau, ell = g.tau, obj.ell
    is_max = obj.kind is ObjectiveKind.MAX
    # active[t][v]: number of chosen intervals of v containing t
    active = [[0] * (g.n + 1) for _ in range(tau + 1)]
    chosen: list[Interval] = []
    nodes = 0

    def search(pos: int, budget_left: int) -> bool:
        nonlocal nodes
        nodes += 1
        while pos < len(time_edges):
            t, (u, v) = time_edges[pos]
            if active[t][u] or active[t][v]:
                pos += 1
                continue
            break
        else:
            return True

        for w in (u, v):
            gi = group_of[w]
            if room[gi] == 0:
                continue
            span = ell if is_max else budget_left
            for a in range(max(1, t - span), t + 1):
                for b in range(t, min(tau, t + span) + 1):
                    length = b - a
                    if length > span:
                        continue
                    room[gi] -= 1
                    for s in range(a, b + 1):
                        active[s][w] += 1
                    chosen.append(Interval(w, a, b))
                    if search(pos + 1, budget_left if is_max else budget_left - length):
                        return True
                    chosen.pop()
                    for s in range(a, b + 1):
                        active[s][w] -= 1
                    room[gi] += 1
        return False

    if search(0, ell):
        return SolveOutcome.yes(chosen, nodes=nodes)
    return SolveOutcome.no(nodes=nodes)


def oracle_min_ell(g: TemporalGraph, budget, kind, cap: int | None = None) -> int | None:
    """Smallest ``ell`` with a YES answer, or ``None`` if no bound up to ``tau*n*k`` works."""
    _check_cap(g, cap)
    kind = ObjectiveKind(kind)
    kmax = max(as_budget(budget).vertex_limits(g.n), default=0)
    bound = g.tau * g.n * kmax
    if kind is ObjectiveKind.MAX:
        # intervals are clipped to [1, tau]; larger bounds change nothing
        bound = min(bound, g.tau - 1)
    for ell in range(bound + 1):
        if oracle_solve(g, budget, Objective(kind, ell), cap=cap):
            return ell
    return None
