"""Instance constructions from known hard problems, with certificate maps.

Each construction comes with the maps that translate solutions across it in
both directions, plus a small brute-force solver for the source problem so
that answers can be compared on both sides.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Instance,
    Interval,
    Multicolored,
    NonUniform,
    Objective,
    ObjectiveKind,
    SolverRefusal,
    TemporalGraph,
    Uniform,
    normalize_edge,
    per_vertex_counts,
)

SIZE_CAP = 20
SAT_VAR_CAP = 12
SAT_BUDGET_CAP = 3


# ---------------------------------------------------------------------------
# odd cycle transversal


@dataclass(frozen=True)
class StaticGraphInstance:
    n: int
    edges: frozenset[tuple[int, int]]
    s: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(normalize_edge(u, v) for u, v in self.edges))
        for u, v in self.edges:
            if not (1 <= u and v <= self.n):
                raise ValueError(f"edge {u} {v} out of range")
        if self.s < 0:
            raise ValueError("s must be nonnegative")


def two_coloring(n: int, edges, removed=frozenset()):
    """Sides ``(V1, V2)`` of a proper 2-coloring of the graph minus ``removed``, or None."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        if u in removed or v in removed:
            continue
        adj[u].append(v)
        adj[v].append(u)
    side: dict[int, int] = {}
    for root in range(1, n + 1):
        if root in removed or root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return (
        frozenset(v for v, s in side.items() if s == 0),
        frozenset(v for v, s in side.items() if s == 1),
    )


def brute_force_oct(inst: StaticGraphInstance):
    """Smallest-first search for ``X`` with ``|X| <= s`` and ``G - X`` bipartite.

    Returns ``(X, V1, V2)`` or None.
    """
    for size in range(inst.s + 1):
        for combo in itertools.combinations(range(1, inst.n + 1), size):
            X = frozenset(combo)
            sides = two_coloring(inst.n, inst.edges, X)
            if sides is not None:
                return (X, *sides)
    return None


def reduce_oct_to_sum(inst: StaticGraphInstance) -> Instance:
    """Two copies of the graph, one interval per vertex, total length ``s``."""
    g = TemporalGraph(inst.n, 2, (inst.edges, inst.edges))
    return Instance(g, Uniform(1), Objective(ObjectiveKind.SUM, inst.s))


def oct_to_timeline(X, V1, V2) -> frozenset[Interval]:
    return frozenset(
        [Interval(v, 1, 2) for v in X] + [Interval(v, 1, 1) for v in V1] + [Interval(v, 2, 2) for v in V2]
    )


def timeline_to_oct(timeline) -> frozenset[int]:
    return frozenset(v for v, a, b in timeline if (a, b) == (1, 2))


# ---------------------------------------------------------------------------
# two layers and Almost 2-SAT

Literal = tuple[tuple[int, int], bool]  # ((vertex, layer), positive)
Clause = tuple[Literal, Literal]


@dataclass(frozen=True)
class TwoCnfInstance:
    """Variables ``(v, i)`` for vertex ``v`` and layer ``i``; duplicate clauses allowed."""

    variables: tuple[tuple[int, int], ...]
    clauses: tuple[Clause, ...]
    s: int

    def __post_init__(self) -> None:
        known = set(self.variables)
        for clause in self.clauses:
            if len(clause) != 2:
                raise ValueError("every clause has exactly two literals")
            for var, _ in clause:
                if var not in known:
                    raise ValueError(f"unknown variable {var}")


def reduce_sum_tau2_to_almost2sat(g: TemporalGraph, ell: int) -> TwoCnfInstance:
    """``ell + 1`` copies of ``(x^u_i or x^v_i)`` per time-edge and one
    ``(not x^v_1 or not x^v_2)`` per vertex; deletion budget ``ell``."""
    if g.tau != 2:
        raise ValueError("the Almost 2-SAT construction needs exactly two layers")
    variables = tuple((v, i) for v in range(1, g.n + 1) for i in (1, 2))
    clauses: list[Clause] = []
    for i, layer in enumerate(g.layers, start=1):
        for u, v in sorted(layer):
            clauses.extend([(((u, i), True), ((v, i), True))] * (ell + 1))
    for v in range(1, g.n + 1):
        clauses.append((((v, 1), False), ((v, 2), False)))
    return TwoCnfInstance(variables, tuple(clauses), ell)


def _satisfied(clause: Clause, alpha: dict) -> bool:
    return any(alpha[var] == positive for var, positive in clause)


def brute_force_almost2sat(inst: TwoCnfInstance):
    """Try every assignment; deleting exactly the clauses it violates is optimal for it.

    Returns ``(deleted clause indices, assignment)`` or None.
    """
    if len(inst.variables) > SAT_VAR_CAP or inst.s > SAT_BUDGET_CAP:
        raise SolverRefusal(
            f"brute-force Almost 2-SAT limited to {SAT_VAR_CAP} variables and budget {SAT_BUDGET_CAP}"
        )
    for bits in itertools.product((False, True), repeat=len(inst.variables)):
        alpha = dict(zip(inst.variables, bits))
        violated = []
        for idx, clause in enumerate(inst.clauses):
            if not _satisfied(clause, alpha):
                violated.append(idx)
                if len(violated) > inst.s:
                    break
        if len(violated) <= inst.s:
            return tuple(violated), alpha
    return None


def almost2sat_to_timeline(inst: TwoCnfInstance, deleted: Iterable[int], alpha: dict) -> frozenset[Interval]:
    gone = {inst.clauses[idx] for idx in deleted}
    out = set()
    for v in sorted({v for v, _ in inst.variables}):
        if (((v, 1), False), ((v, 2), False)) in gone:
            out.add(Interval(v, 1, 2))
        else:
            out.update(Interval(v, i, i) for i in (1, 2) if alpha[(v, i)])
    return frozenset(out)


def timeline_to_almost2sat(inst: TwoCnfInstance, timeline):
    """Deleted clause indices and an assignment satisfying the rest."""
    long = {v for v, a, b in timeline if (a, b) == (1, 2)}
    alpha = {(v, i): (v in long) for v, i in inst.variables}
    for v, a, b in timeline:
        if a == b:
            alpha[(v, a)] = True
    wanted = {(((v, 1), False), ((v, 2), False)) for v in long}
    deleted = tuple(idx for idx, clause in enumerate(inst.clauses) if clause in wanted)
    return deleted, alpha


def decide_sum_two_layers(g: TemporalGraph, k: int, ell: int) -> bool:
    """Two-layer sum instance via Almost 2-SAT; budgets other than 1 are trivial."""
    if g.tau != 2:
        raise ValueError("needs exactly two layers")
    if k == 0:
        return not any(g.layers)
    if k >= 2:
        return True
    return brute_force_almost2sat(reduce_sum_tau2_to_almost2sat(g, ell)) is not None


# ---------------------------------------------------------------------------
# unary bin packing


@dataclass(frozen=True)
class BinPackingInstance:
    sizes: tuple[int, ...]
    beta: int
    B: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ValueError("need at least one item")
        if any(s < 1 for s in self.sizes) or self.beta < 1 or self.B < 1:
            raise ValueError("sizes, beta and B must be positive")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def is_normalized(self) -> bool:
        return self.total == self.beta * self.B

    def normalized(self, size_cap: int = SIZE_CAP) -> "BinPackingInstance":
        """Pad with unit items up to ``beta * B``; evident no-instances are rejected."""
        if any(s > size_cap for s in self.sizes):
            raise ValueError(f"item sizes above the unary cap {size_cap}")
        if self.total > self.beta * self.B:
            raise ValueError("total size exceeds beta * B: no packing exists")
        if max(self.sizes) > self.B:
            raise ValueError("an item is larger than a bin: no packing exists")
        pad = self.beta * self.B - self.total
        return BinPackingInstance(self.sizes + (1,) * pad, self.beta, self.B)


def brute_force_packing(bp: BinPackingInstance):
    """An assignment item -> bin (1-based, as a tuple) respecting capacity, or None."""
    loads = [0] * (bp.beta + 1)
    order = sorted(range(len(bp.sizes)), key=lambda i: -bp.sizes[i])
    assign = [0] * len(bp.sizes)

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        item = order[pos]
        for b in range(1, bp.beta + 1):
            if loads[b] + bp.sizes[item] <= bp.B:
                loads[b] += bp.sizes[item]
                assign[item] = b
                if place(pos + 1):
                    return True
                loads[b] -= bp.sizes[item]
        return False

    return tuple(assign) if place(0) else None


def is_perfect_packing(bp: BinPackingInstance, assignment: Sequence[int]) -> bool:
    if len(assignment) != len(bp.sizes) or any(not 1 <= b <= bp.beta for b in assignment):
        return False
    loads = [0] * (bp.beta + 1)
    for s, b in zip(bp.sizes, assignment):
        loads[b] += s
    return all(load == bp.B for load in loads[1:])


def _item_starts(bp: BinPackingInstance) -> list[int]:
    starts, t = [], 1
    for s in bp.sizes:
        starts.append(t)
        t += 2 * s
    return starts


def reduce_binpacking_to_multicolored(bp: BinPackingInstance) -> Instance:
    """Vertices ``u_1..u_beta`` are ``1..beta``, ``v_1..v_beta`` are ``beta+1..2beta``.

    Item ``i`` occupies ``2 s_i`` layers; the u-vertices form a clique in each,
    and the inner layers add the matching edges ``{u_j, v_j}``.
    """
    if not bp.is_normalized:
        raise ValueError("bin packing instance must satisfy sum of sizes == beta * B")
    beta, S, m = bp.beta, bp.total, len(bp.sizes)
    clique = frozenset(itertools.combinations(range(1, beta + 1), 2))
    matching = frozenset((j, beta + j) for j in range(1, beta + 1))
    layers = []
    for s in bp.sizes:
        layers.append(clique)
        layers.extend([clique | matching] * (2 * s - 2))
        layers.append(clique)
    g = TemporalGraph(2 * beta, 2 * S, tuple(layers))
    classes = tuple(frozenset({j}) for j in range(1, beta + 1)) + (frozenset(range(beta + 1, 2 * beta + 1)),)
    ks = (S - bp.B,) * beta + (S - m,)
    return Instance(g, Multicolored(classes, ks), Objective(ObjectiveKind.MAX, 1))


def packing_to_timeline(bp: BinPackingInstance, assignment: Sequence[int]) -> frozenset[Interval]:
    beta = bp.beta
    out = set()
    for t, s, b in zip(_item_starts(bp), bp.sizes, assignment):
        for j in range(1, beta + 1):
            if j != b:
                out.update(Interval(j, t + 2 * a, t + 2 * a + 1) for a in range(s))
        out.update(Interval(beta + b, t + 2 * a + 1, t + 2 * a + 2) for a in range(s - 1))
    return frozenset(out)


def timeline_to_packing(bp: BinPackingInstance, timeline) -> tuple[int, ...] | None:
    """Bin of each item: the u-vertex idle at the item's first layer.

    Returns None when that vertex is not unique.
    """
    active_at: dict[int, set[int]] = {}
    for v, a, b in timeline:
        if v <= bp.beta:
            for t in range(a, b + 1):
                active_at.setdefault(t, set()).add(v)
    out = []
    for t in _item_starts(bp):
        idle = set(range(1, bp.beta + 1)) - active_at.get(t, set())
        if len(idle) != 1:
            return None
        out.append(idle.pop())
    return tuple(out)


# ---------------------------------------------------------------------------
# multicolored -> nonuniform -> uniform (maximum length 1)


def _clip(timeline, tau: int, keep) -> frozenset[Interval]:
    return frozenset(Interval(v, a, min(b, tau)) for v, a, b in timeline if a <= tau and keep(v))


def reduce_multicolored_to_nonuniform(inst: Instance) -> Instance:
    """Append ``2 k_i`` layers per class in which the class forms a clique."""
    budget = inst.budget
    if not isinstance(budget, Multicolored):
        raise TypeError("source instance must carry class budgets")
    if inst.objective.kind is not ObjectiveKind.MAX or inst.objective.ell != 1:
        raise ValueError("construction is for the maximum-length objective with ell = 1")
    g = inst.graph
    budget.validate(g.n)
    layers = list(g.layers)
    for members, k in zip(budget.classes, budget.ks):
        clique = frozenset(itertools.combinations(sorted(members), 2))
        layers.extend([clique] * (2 * k))
    g2 = TemporalGraph(g.n, len(layers), tuple(layers))
    return Instance(g2, NonUniform(budget.vertex_limits(g.n)), inst.objective)


def multicolored_to_nonuniform_timeline(inst: Instance, timeline) -> frozenset[Interval]:
    """Extend a source solution over the appended clique layers."""
    budget: Multicolored = inst.budget
    tau = inst.graph.tau
    counts = per_vertex_counts(timeline)
    out = set(Interval(*iv) for iv in timeline)
    t_i = tau + 1
    for members, k in zip(budget.classes, budget.ks):
        # f maps slot a in 1..k to a vertex that may skip that slot
        slots = [v for v in sorted(members) for _ in range(counts[v])]
        slots += [min(members)] * (k - len(slots)) if members else []
        for a, skip in enumerate(slots[:k], start=1):
            out.update(Interval(v, t_i + 2 * a - 2, t_i + 2 * a - 1) for v in members if v != skip)
        t_i += 2 * k
    return frozenset(out)


def nonuniform_to_multicolored_timeline(source: Instance, timeline) -> frozenset[Interval]:
    """Keep intervals starting in the original layers, clipped to them."""
    return _clip(timeline, source.graph.tau, lambda v: True)


def reduce_nonuniform_to_uniform(inst: Instance) -> Instance:
    """Add ``u_1 = n+1`` and ``u_2 = n+2`` and force budgets up to ``k = max k_v``.

    After the original layers: ``4k`` layers holding only ``{u_1, u_2}``, then
    one block of ``2k`` layers per vertex ``v_i`` whose first ``2(k - k_i)``
    layers hold only ``{v_i, u_1}`` and whose rest is empty.
    """
    budget = inst.budget
    if not isinstance(budget, (NonUniform, Uniform)):
        raise TypeError("source instance must carry per-vertex budgets")
    if inst.objective.kind is not ObjectiveKind.MAX or inst.objective.ell != 1:
        raise ValueError("construction is for the maximum-length objective with ell = 1")
    g = inst.graph
    ks = budget.vertex_limits(g.n)
    k = max(ks)
    u1, u2 = g.n + 1, g.n + 2
    layers = list(g.layers)
    layers.extend([frozenset({(u1, u2)})] * (4 * k))
    for v, kv in enumerate(ks, start=1):
        forced = 2 * (k - kv)
        layers.extend([frozenset({(v, u1)})] * forced)
        layers.extend([frozenset()] * (2 * k - forced))
    g2 = TemporalGraph(g.n + 2, len(layers), tuple(layers))
    assert g2.tau == g.tau + 2 * k * (g.n + 2)
    return Instance(g2, Uniform(k), inst.objective)


def nonuniform_to_uniform_timeline(inst: Instance, timeline) -> frozenset[Interval]:
    """Extend a source solution to the gadget layers."""
    g, ks = inst.graph, inst.budget.vertex_limits(inst.graph.n)
    k, tau = max(ks), g.tau
    u1, u2 = g.n + 1, g.n + 2
    out = set(Interval(*iv) for iv in timeline)
    for a in range(1, k + 1):
        out.add(Interval(u1, tau + 2 * a - 1, tau + 2 * a))
        out.add(Interval(u2, tau + 2 * k + 2 * a - 1, tau + 2 * k + 2 * a))
    for i, kv in enumerate(ks, start=1):
        base = tau + 2 * k * (i + 1)
        out.update(Interval(i, base + 2 * a - 1, base + 2 * a) for a in range(1, k - kv + 1))
    return frozenset(out)


def uniform_to_nonuniform_timeline(source: Instance, timeline) -> frozenset[Interval]:
    n = source.graph.n
    return _clip(timeline, source.graph.tau, lambda v: v <= n)


# ---------------------------------------------------------------------------
# random instances


def generate_random(n: int, tau: int, p: float, seed: int) -> TemporalGraph:
    """Each vertex pair in each layer independently with probability ``p``.

    Uses Python's Mersenne Twister (``random.Random(seed)``), whose output
    for a given integer seed is the same on every platform. Pairs are drawn
    layer by layer in lexicographic order.
    """
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    layers = []
    for _ in range(tau):
        layers.append(frozenset(e for e in pairs if rng.random() < p))
    return TemporalGraph(n, tau, tuple(layers))
