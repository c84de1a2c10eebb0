"""Table-filling exact solvers, one per objective.

Both tables are boolean numpy arrays with one axis per vertex counter and
one per vertex status, filled layer by layer. Moving from layer ``i-1`` to
``i`` is done forward: every true state stamps all of its successors. Since
successor choices are independent across vertices, the stamping factorizes
into one array operation per vertex, followed by a vertex-cover mask for the
edges of layer ``i``. All layer tables are kept so a witness can be rebuilt
by walking predecessors back from a final true entry.

Counter semantics follow the table definition: ``k_j`` is an upper bound on
the number of intervals vertex ``j`` has used so far, so the instance is a
YES exactly when some final entry with ``k_j = k`` for all ``j`` is true.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import (
    Interval,
    NonUniform,
    SolveOutcome,
    SolverRefusal,
    TemporalGraph,
    Uniform,
    as_budget,
    state_cap,
)

DEFAULT_CELL_CAP = 2**32


def _vertex_budgets(g: TemporalGraph, k) -> tuple[int, ...]:
    budget = as_budget(k)
    if not isinstance(budget, (Uniform, NonUniform)):
        raise TypeError("dynamic programs take a uniform or per-vertex budget")
    return budget.vertex_limits(g.n)


def _index(ndim: int, picks: dict[int, object]) -> tuple:
    idx = [slice(None)] * ndim
    for axis, sel in picks.items():
        idx[axis] = sel
    return tuple(idx)


def _check_cells(tau: int, shape: tuple[int, ...], cap: int | None) -> int:
    cells = tau * math.prod(shape)
    limit = state_cap(DEFAULT_CELL_CAP) if cap is None else cap
    if cells > limit:
        raise SolverRefusal(f"table needs {cells} cells > cap {limit}", estimate=cells, cap=limit)
    return cells


def _cover_mask(n: int, edges, status_axes: list[int], ndim: int, shape: tuple[int, ...]) -> np.ndarray:
    """Boolean array, broadcastable to ``shape``: true where the active vertices cover ``edges``.

    A vertex counts as active when its status index along its axis is >= 1.
    """
    mask = np.ones([1] * ndim, dtype=bool)
    active = []
    for j in range(n):
        axis = status_axes[j]
        view = [1] * ndim
        view[axis] = shape[axis]
        col = np.zeros(shape[axis], dtype=bool)
        col[1:] = True
        active.append(col.reshape(view))
    for u, v in edges:
        mask = mask & (active[u - 1] | active[v - 1])
    return mask


# ---------------------------------------------------------------------------
# maximum interval length


def solve_max_dp(g: TemporalGraph, k, ell: int, cap: int | None = None) -> SolveOutcome:
    """Decide whether ``g`` has a covering timeline with at most ``k`` intervals
    per vertex and every interval of length at most ``ell``.

    ``k`` may be an int or a per-vertex budget sequence.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    ks = _vertex_budgets(g, k)
    n, tau = g.n, g.tau
    # status index = l_j + 1, so 0 means "no interval of v_j ends here"
    shape = tuple(kj + 1 for kj in ks) + (ell + 2,) * n
    cells = _check_cells(tau, shape, cap)
    ndim = 2 * n
    kax = list(range(n))
    lax = list(range(n, 2 * n))

    def cover(t: int) -> np.ndarray:
        return _cover_mask(n, g.layer(t), lax, ndim, shape)

    # layer 1: l_j in {-1, 0}; l_j = 0 needs k_j > 0
    table = np.ones(shape, dtype=bool)
    for j in range(n):
        table[_index(ndim, {lax[j]: slice(2, None)})] = False
        table[_index(ndim, {kax[j]: 0, lax[j]: 1})] = False
    table &= cover(1)
    tables = [table]

    for i in range(2, tau + 1):
        closed_at = min(ell, i - 2) + 1  # status index of a predecessor allowed to stop
        cur = table
        for j in range(n):
            K, L = kax[j], lax[j]
            nxt = np.zeros_like(cur)
            # continue an open interval: l_j' -> l_j' + 1
            if ell >= 1:
                nxt[_index(ndim, {L: slice(2, ell + 2)})] = cur[_index(ndim, {L: slice(1, ell + 1)})]
            stopped = cur[_index(ndim, {L: 0})] | cur[_index(ndim, {L: closed_at})]
            # stay idle
            nxt[_index(ndim, {L: 0})] |= stopped
            # open a new interval at i, consuming one count
            if shape[K] > 1:
                nxt[_index(ndim, {K: slice(1, None), L: 1})] |= stopped[
                    _index(ndim - 1, {K: slice(0, -1)})
                ]
            cur = nxt
        table = cur & cover(i)
        tables.append(table)

    final = table[tuple(ks)]
    if not final.any():
        return SolveOutcome.no(cells=cells)

    status = tuple(int(x) for x in np.argwhere(final)[0])
    state = tuple(ks) + status
    states = [state]
    for i in range(tau, 1, -1):
        state = _max_predecessor(tables[i - 2], state, n, ell, i)
        states.append(state)
    states.reverse()

    witness = []
    for j in range(n):
        for i in range(1, tau + 1):
            lj = states[i - 1][n + j] - 1
            if lj < 0:
                continue
            if i == tau or states[i][n + j] - 1 != lj + 1:
                witness.append(Interval(j + 1, i - lj, i))
    return SolveOutcome.yes(witness, cells=cells)


def _max_predecessor(prev: np.ndarray, state: tuple[int, ...], n: int, ell: int, i: int) -> tuple[int, ...]:
    closed_at = min(ell, i - 2) + 1
    options = []
    for j in range(n):
        kj, sj = state[j], state[n + j]
        if sj >= 2:
            options.append([(kj, sj - 1)])
        elif sj == 1:
            options.append([(kj - 1, 0), (kj - 1, closed_at)])
        else:
            options.append([(kj, 0), (kj, closed_at)])
    for combo in itertools.product(*options):
        cand = tuple(c[0] for c in combo) + tuple(c[1] for c in combo)
        if prev[cand]:
            return cand
    raise AssertionError(f"no predecessor for state {state} at layer {i}")


# ---------------------------------------------------------------------------
# sum of interval lengths


def solve_sum_dp(g: TemporalGraph, k, ell: int, cap: int | None = None) -> SolveOutcome:
    """Decide whether ``g`` has a covering timeline with at most ``k`` intervals
    per vertex and total interval length at most ``ell``."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    ks = _vertex_budgets(g, k)
    n, tau = g.n, g.tau
    shape = tuple(kj + 1 for kj in ks) + (2,) * n + (ell + 1,)
    cells = _check_cells(tau, shape, cap)
    ndim = 2 * n + 1
    kax = list(range(n))
    sax = list(range(n, 2 * n))
    LAX = 2 * n

    def cover(t: int) -> np.ndarray:
        return _cover_mask(n, g.layer(t), sax, ndim, shape)

    table = np.ones(shape, dtype=bool)
    for j in range(n):
        table[_index(ndim, {kax[j]: 0, sax[j]: 1})] = False
    table &= cover(1)
    tables = [table]

    for i in range(2, tau + 1):
        cur = table
        for j in range(n):
            K, S = kax[j], sax[j]
            nxt = np.zeros_like(cur)
            either = cur[_index(ndim, {S: 0})] | cur[_index(ndim, {S: 1})]
            # v_j not in S: k_j' = k_j
            nxt[_index(ndim, {S: 0})] = either
            # v_j in S, freshly opened at i (k_j' = k_j - 1, any S' membership)
            if shape[K] > 1:
                nxt[_index(ndim, {K: slice(1, None), S: 1})] |= either[_index(ndim - 1, {K: slice(0, -1)})]
            # v_j in S and S', interval continued: k_j' = k_j, costs one unit
            if ell >= 1:
                nxt[_index(ndim, {S: 1, LAX: slice(1, None)})] |= cur[_index(ndim, {S: 1, LAX: slice(0, -1)})]
            cur = nxt
        table = cur & cover(i)
        tables.append(table)

    final = table[tuple(ks)][..., ell]
    if not final.any():
        return SolveOutcome.no(cells=cells)

    sbits = tuple(int(x) for x in np.argwhere(final)[0])
    state = tuple(ks) + sbits + (ell,)
    # walk back, tracking where the currently open interval of each vertex ends
    open_end: list[int | None] = [tau if sbits[j] else None for j in range(n)]
    witness = []
    for i in range(tau, 1, -1):
        state, moves = _sum_predecessor(tables[i - 2], state, n)
        for j, move in enumerate(moves):
            if move in ("fresh", "reopen"):
                witness.append(Interval(j + 1, i, open_end[j]))
                open_end[j] = i - 1 if move == "reopen" else None
            elif move == "close":
                open_end[j] = i - 1
    for j in range(n):
        if open_end[j] is not None:
            witness.append(Interval(j + 1, 1, open_end[j]))
    return SolveOutcome.yes(witness, cells=cells)


_SUM_MOVES_OUT = [(0, 0, 0, "idle"), (0, 1, 0, "close")]
_SUM_MOVES_IN = [(1, 0, 0, "fresh"), (1, 1, 0, "reopen"), (0, 1, 1, "continue")]


def _sum_predecessor(prev: np.ndarray, state: tuple[int, ...], n: int):
    l = state[-1]
    options = []
    for j in range(n):
        kj, sj = state[j], state[n + j]
        moves = _SUM_MOVES_IN if sj else _SUM_MOVES_OUT
        options.append([(kj - dk, sp, cost, name) for dk, sp, cost, name in moves if kj - dk >= 0])
    for combo in itertools.product(*options):
        cost = sum(c[2] for c in combo)
        if cost > l:
            continue
        cand = tuple(c[0] for c in combo) + tuple(c[1] for c in combo) + (l - cost,)
        if prev[cand]:
            return cand, [c[3] for c in combo]
    raise AssertionError(f"no predecessor for state {state}")
