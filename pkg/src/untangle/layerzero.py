"""Exact solver for zero-length intervals, and the (a:b)-coloring bridge.

With ``ell = 0`` every interval covers a single layer, so only the multiset of
layer edge sets matters. For each distinct edge set ``E`` occurring ``a(E)``
times we pick how many of its occurrences each vertex cover handles; a
solution exists iff these counts respect the interval budgets. Only minimal
covers are used: swapping a cover for a minimal subset keeps every layer
covered and never uses more intervals.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .core import (
    Interval,
    SolveOutcome,
    TemporalGraph,
    as_budget,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class LayerProfile:
    """Distinct layer edge sets, their multiplicities and occurrence times."""

    edge_sets: tuple[frozenset[Edge], ...]
    multiplicity: tuple[int, ...]
    occurrences: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, g: TemporalGraph) -> "LayerProfile":
        where: dict[frozenset[Edge], list[int]] = {}
        for t, layer in enumerate(g.layers, start=1):
            where.setdefault(layer, []).append(t)
        # most frequent first; ties broken by the sorted edge list
        order = sorted(where, key=lambda E: (-len(where[E]), sorted(E)))
        return cls(
            tuple(order),
            tuple(len(where[E]) for E in order),
            tuple(tuple(where[E]) for E in order),
        )


@functools.lru_cache(maxsize=4096)
def _minimal_covers(edges: frozenset[Edge]) -> tuple[frozenset[int], ...]:
    touched = sorted({x for e in edges for x in e})
    found: list[frozenset[int]] = []
    for size in range(len(touched) + 1):
        for combo in itertools.combinations(touched, size):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if all(u in s or v in s for u, v in edges):
                found.append(s)
    return tuple(found)


def minimal_vertex_covers(edges) -> list[frozenset[int]]:
    """All inclusion-minimal vertex covers, by ascending size then content."""
    return list(_minimal_covers(frozenset(edges)))


CoverAssignment = dict  # frozenset[Edge] -> dict[frozenset[int], int]


def find_cover_assignment(profile: LayerProfile, n: int, budget) -> CoverAssignment | None:
    """Depth-first integer feasibility search over cover multiplicities.

    Within an edge set, covers are tried in ascending size and each gets the
    largest count the budgets allow first. A branch is cut when some budget
    group cannot pay even the cheapest way to cover the layers still open.
    """
    groups = as_budget(budget).groups(n)
    group_of = {}
    for gi, (members, _) in enumerate(groups):
        for v in members:
            group_of[v] = gi
    slack = [k for _, k in groups]
    ng = len(groups)

    covers = [minimal_vertex_covers(E) for E in profile.edge_sets]
    costs = []
    for cover_list in covers:
        row = []
        for s in cover_list:
            c = [0] * ng
            for v in s:
                c[group_of[v]] += 1
            row.append(c)
        costs.append(row)

    # per group, the cheapest possible spend of each edge set from cover c onward
    min_from = []
    for row in costs:
        suffix = [list(row[-1])]
        for c in range(len(row) - 2, -1, -1):
            suffix.append([min(x, y) for x, y in zip(row[c], suffix[-1])])
        min_from.append(suffix[::-1])
    m = len(profile.edge_sets)
    tail = [[0] * ng for _ in range(m + 1)]
    for p in range(m - 1, -1, -1):
        for gi in range(ng):
            tail[p][gi] = tail[p + 1][gi] + profile.multiplicity[p] * min_from[p][0][gi]

    counts = [[0] * len(row) for row in costs]

    def hopeless(p: int, c: int, remaining: int) -> bool:
        for gi in range(ng):
            if remaining * min_from[p][c][gi] + tail[p + 1][gi] > slack[gi]:
                return True
        return False

    def search(p: int, c: int, remaining: int) -> bool:
        if p == m:
            return True
        if remaining == 0:
            return search(p + 1, 0, profile.multiplicity[p + 1]) if p + 1 < m else True
        if hopeless(p, c, remaining):
            return False
        row = costs[p]
        cost = row[c]
        top = remaining
        for gi in range(ng):
            if cost[gi]:
                top = min(top, slack[gi] // cost[gi])
        last = c == len(row) - 1
        low = remaining if last else 0
        for x in range(top, low - 1, -1):
            for gi in range(ng):
                slack[gi] -= x * cost[gi]
            counts[p][c] = x
            if search(p, c + 1, remaining - x) if not last else search(p, c + 1, 0):
                return True
            counts[p][c] = 0
            for gi in range(ng):
                slack[gi] += x * cost[gi]
        return False

    if m == 0:
        return {}
    if not search(0, 0, profile.multiplicity[0]):
        return None
    return {
        E: {s: counts[p][c] for c, s in enumerate(covers[p]) if counts[p][c]}
        for p, E in enumerate(profile.edge_sets)
    }


def check_cover_assignment(profile: LayerProfile, n: int, budget, assignment: CoverAssignment) -> bool:
    """Both feasibility constraints: counts add up per edge set, budgets hold."""
    for E, a in zip(profile.edge_sets, profile.multiplicity):
        chosen = assignment.get(E, {})
        if sum(chosen.values()) != a:
            return False
        if any(x < 0 for x in chosen.values()):
            return False
        if any(not all(u in s or v in s for u, v in E) for s in chosen):
            return False
    for members, k in as_budget(budget).groups(n):
        used = sum(x * len(s & members) for chosen in assignment.values() for s, x in chosen.items())
        if used > k:
            return False
    return True


def expand_assignment(profile: LayerProfile, assignment: CoverAssignment) -> frozenset[Interval]:
    """Use the first cover on the first occurrences of its edge set, and so on."""
    out = set()
    for E, times in zip(profile.edge_sets, profile.occurrences):
        slots = iter(times)
        for s in sorted(assignment.get(E, {}), key=lambda s: (len(s), sorted(s))):
            for _ in range(assignment[E][s]):
                t = next(slots)
                out.update(Interval(v, t, t) for v in s)
    return frozenset(out)


def solve_zero(g: TemporalGraph, budget) -> SolveOutcome:
    """Decide the instance with all intervals of length zero.

    ``budget`` is an int, a per-vertex sequence, or any budget object
    (class budgets are summed over their members).
    """
    profile = LayerProfile.of(g)
    assignment = find_cover_assignment(profile, g.n, budget)
    if assignment is None:
        return SolveOutcome.no(distinct_layers=len(profile.edge_sets))
    return SolveOutcome.yes(expand_assignment(profile, assignment), distinct_layers=len(profile.edge_sets))


# ---------------------------------------------------------------------------
# (a:b)-coloring


def _pad(timeline, n: int, tau: int, k: int) -> dict[int, set[int]]:
    used: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for v, a, b in timeline:
        if a != b:
            raise ValueError("coloring bridge needs zero-length intervals")
        used[v].add(a)
    for v, times in used.items():
        if len(times) > k:
            raise ValueError(f"vertex {v} has more than {k} intervals")
        for t in range(1, tau + 1):
            if len(times) == k:
                break
            times.add(t)
    return used


def timeline_to_coloring(timeline, n: int, tau: int, k: int) -> dict[int, frozenset[int]]:
    """Colors of ``v`` are the time steps where ``v`` is idle, after padding
    every vertex to exactly ``k`` intervals."""
    if tau < k:
        raise ValueError("need tau >= k")
    used = _pad(timeline, n, tau, k)
    return {v: frozenset(range(1, tau + 1)) - times for v, times in used.items()}


def coloring_to_timeline(coloring: dict[int, frozenset[int]], tau: int, k: int) -> frozenset[Interval]:
    if tau < k:
        raise ValueError("need tau >= k")
    out = set()
    for v, colors in coloring.items():
        if len(colors) != tau - k or not set(colors) <= set(range(1, tau + 1)):
            raise ValueError(f"vertex {v} needs {tau - k} colors from 1..{tau}")
        out.update(Interval(v, t, t) for t in range(1, tau + 1) if t not in colors)
    return frozenset(out)


def solve_ab_coloring(graph, a: int, b: int):
    """Return ``(True, coloring)`` or ``(False, None)``.

    ``graph`` is a single-layer :class:`TemporalGraph` or an ``(n, edges)`` pair.
    """
    if not a >= b >= 1:
        raise ValueError("need a >= b >= 1")
    if isinstance(graph, TemporalGraph):
        n, edges = graph.n, graph.layer(1)
    else:
        n, edges = graph
    g = TemporalGraph.static(n, edges, tau=a)
    k = a - b
    outcome = solve_zero(g, k)
    if not outcome:
        return False, None
    return True, timeline_to_coloring(outcome.witness, n, a, k)
