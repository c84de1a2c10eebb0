"""Bounded search tree for the maximum-length objective.

Take the earliest nonempty layer ``i`` and its lexicographically smallest edge
``{u, v}``; one endpoint must be active at ``i``, and with lengths bounded by
``ell`` the interval ``[i, min(i + ell, tau)]`` dominates every other choice
containing ``i``. Branch on ``u`` then ``v``. Edge deletions are undone on
backtrack instead of copying layers.
"""

from __future__ import annotations

from .core import Interval, NonUniform, SolveOutcome, TemporalGraph, Uniform, as_budget


def solve_max_branching(g: TemporalGraph, k, ell: int) -> SolveOutcome:
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    budget = as_budget(k)
    if not isinstance(budget, (Uniform, NonUniform)):
        raise TypeError("branching takes a uniform or per-vertex budget")
    limits = (0,) + budget.vertex_limits(g.n)
    tau = g.tau

    layers = [None] + [set(layer) for layer in g.layers]
    used = [0] * (g.n + 1)
    chosen: list[Interval] = []
    undo: list[tuple[int, tuple[int, int]]] = []
    nodes = 0  # branching nodes; at most 2**(sum of budgets) - 1

    def search(start: int) -> bool:
        nonlocal nodes
        i = start
        while i <= tau and not layers[i]:
            i += 1
        if i > tau:
            return True
        u, v = min(layers[i])
        end = min(i + ell, tau)
        branched = False
        for w in (u, v):
            if used[w] >= limits[w]:
                continue
            if not branched:
                nodes += 1
                branched = True
            mark = len(undo)
            for t in range(i, end + 1):
                for e in [e for e in layers[t] if w in e]:
                    layers[t].discard(e)
                    undo.append((t, e))
            used[w] += 1
            chosen.append(Interval(w, i, end))
            if search(i):
                return True
            chosen.pop()
            used[w] -= 1
            while len(undo) > mark:
                t, e = undo.pop()
                layers[t].add(e)
        return False

    if search(1):
        return SolveOutcome.yes(chosen, nodes=nodes)
    return SolveOutcome.no(nodes=nodes)
