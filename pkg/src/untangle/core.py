"""Domain types for temporal graphs and activity timelines, plus verification.

Vertices are 1-based throughout. A timeline is a ``frozenset`` of
:class:`Interval` triples; the helpers in this module are the semantic ground
truth every solver is checked against.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Sequence, Union

Edge = tuple[int, int]
Timeline = frozenset  # frozenset[Interval]

STATE_CAP_ENV = "UNTANGLE_STATE_CAP"


class MalformedTimelineError(ValueError):
    """An interval references a vertex or time step outside the instance."""


class SolverRefusal(RuntimeError):
    """Raised when an instance exceeds a solver's configured size cap."""

    def __init__(self, message: str, estimate: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.cap = cap


def state_cap(default: int) -> int:
    """Size cap, overridable through the ``UNTANGLE_STATE_CAP`` variable."""
    raw = os.environ.get(STATE_CAP_ENV)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TemporalGraph:
    """Vertex set ``1..n`` with one edge set per time step ``1..tau``.

    ``layers[t - 1]`` is the edge set of time step ``t``. Edges are stored as
    normalized pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    tau: int
    layers: tuple[frozenset[Edge], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.tau < 1:
            raise ValueError("tau must be positive")
        if len(self.layers) != self.tau:
            raise ValueError(f"expected {self.tau} layers, got {len(self.layers)}")
        normalized = []
        for t, layer in enumerate(self.layers, start=1):
            edges = set()
            for u, v in layer:
                e = normalize_edge(u, v)
                if not (1 <= e[0] and e[1] <= self.n):
                    raise ValueError(f"edge {e} in layer {t} out of range 1..{self.n}")
                edges.add(e)
            normalized.append(frozenset(edges))
        object.__setattr__(self, "layers", tuple(normalized))

    @classmethod
    def from_layers(cls, n: int, layers: Iterable[Iterable[Edge]]) -> "TemporalGraph":
        layers = tuple(frozenset(normalize_edge(u, v) for u, v in layer) for layer in layers)
        return cls(n, len(layers), layers)

    @classmethod
    def static(cls, n: int, edges: Iterable[Edge], tau: int = 1) -> "TemporalGraph":
        """``tau`` identical copies of one edge set."""
        layer = frozenset(normalize_edge(u, v) for u, v in edges)
        return cls(n, tau, (layer,) * tau)

    def layer(self, t: int) -> frozenset[Edge]:
        return self.layers[t - 1]

    def time_edges(self):
        """Time-edges ``(t, (u, v))`` ordered by time step, then edge."""
        for t, layer in enumerate(self.layers, start=1):
            for e in sorted(layer):
                yield t, e

    @property
    def size(self) -> int:
        return self.n + sum(max(1, len(layer)) for layer in self.layers)


class Interval(NamedTuple):
    """Vertex ``v`` active during time steps ``a..b`` (inclusive)."""

    v: int
    a: int
    b: int

    @property
    def length(self) -> int:
        return self.b - self.a


def make_timeline(entries: Iterable[Sequence[int]]) -> frozenset[Interval]:
    out = set()
    for v, a, b in entries:
        if a > b:
            raise MalformedTimelineError(f"interval ({v},{a},{b}) has a > b")
        out.add(Interval(v, a, b))
    return frozenset(out)


def per_vertex_counts(timeline: Iterable[Interval]) -> Counter:
    return Counter(iv.v for iv in timeline)


# ---------------------------------------------------------------------------
# budgets


@dataclass(frozen=True)
class Uniform:
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("budget must be nonnegative")

    def groups(self, n: int) -> list[tuple[frozenset[int], int]]:
        return [(frozenset({v}), self.k) for v in range(1, n + 1)]

    def vertex_limits(self, n: int) -> tuple[int, ...]:
        return (self.k,) * n

    def validate(self, n: int) -> None:
        pass


@dataclass(frozen=True)
class NonUniform:
    """Per-vertex budgets; ``ks[v - 1]`` bounds the intervals of vertex ``v``."""

    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ks", tuple(self.ks))
        if any(k < 0 for k in self.ks):
            raise ValueError("budgets must be nonnegative")

    def groups(self, n: int) -> list[tuple[frozenset[int], int]]:
        self.validate(n)
        return [(frozenset({v}), k) for v, k in enumerate(self.ks, start=1)]

    def vertex_limits(self, n: int) -> tuple[int, ...]:
        self.validate(n)
        return self.ks

    def validate(self, n: int) -> None:
        if len(self.ks) != n:
            raise ValueError(f"expected {n} per-vertex budgets, got {len(self.ks)}")


@dataclass(frozen=True)
class Multicolored:
    """Vertex classes ``classes[i]`` sharing a joint interval budget ``ks[i]``."""

    classes: tuple[frozenset[int], ...]
    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in self.classes))
        object.__setattr__(self, "ks", tuple(self.ks))
        if len(self.classes) != len(self.ks):
            raise ValueError("one budget per class required")
        if any(k < 0 for k in self.ks):
            raise ValueError("budgets must be nonnegative")
        seen: set[int] = set()
        for c in self.classes:
            if seen & c:
                raise ValueError("color classes overlap")
            seen |= c

    def groups(self, n: int) -> list[tuple[frozenset[int], int]]:
        self.validate(n)
        return list(zip(self.classes, self.ks))

    def vertex_limits(self, n: int) -> tuple[int, ...]:
        """Loosest per-vertex bound implied by the class budgets."""
        self.validate(n)
        limits = [0] * n
        for members, k in zip(self.classes, self.ks):
            for v in members:
                limits[v - 1] = k
        return tuple(limits)

    def class_of(self, v: int) -> int:
        for i, members in enumerate(self.classes, start=1):
            if v in members:
                return i
        raise KeyError(v)

    def validate(self, n: int) -> None:
        covered = set().union(*self.classes) if self.classes else set()
        if covered != set(range(1, n + 1)):
            raise ValueError(f"color classes must partition 1..{n}")


BudgetSpec = Union[Uniform, NonUniform, Multicolored]


def as_budget(budget) -> BudgetSpec:
    """Accept an int (uniform), a sequence (per-vertex) or a budget object."""
    if isinstance(budget, (Uniform, NonUniform, Multicolored)):
        return budget
    if isinstance(budget, int):
        return Uniform(budget)
    return NonUniform(tuple(budget))


# ---------------------------------------------------------------------------
# objectives and outcomes


class ObjectiveKind(str, Enum):
    MAX = "max"
    SUM = "sum"


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind
    ell: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ObjectiveKind(self.kind))
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")


def objective_value(timeline: Iterable[Interval], kind) -> int:
    lengths = [b - a for _, a, b in timeline]
    if ObjectiveKind(kind) is ObjectiveKind.MAX:
        return max(lengths, default=0)
    return sum(lengths)


@dataclass(frozen=True)
class SolveOutcome:
    answer: bool
    witness: frozenset[Interval] | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.answer and self.witness is None:
            raise ValueError("a YES outcome needs a witness")
        if not self.answer and self.witness is not None:
            raise ValueError("a NO outcome carries no witness")

    def __bool__(self) -> bool:
        return self.answer

    @classmethod
    def yes(cls, witness: Iterable[Interval], **stats) -> "SolveOutcome":
        return cls(True, frozenset(Interval(*iv) for iv in witness), stats)

    @classmethod
    def no(cls, **stats) -> "SolveOutcome":
        return cls(False, None, stats)


@dataclass(frozen=True)
class Instance:
    """A decision instance: graph, budgets and objective bound."""

    graph: TemporalGraph
    budget: BudgetSpec
    objective: Objective


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Verdict:
    valid: bool
    kind: str | None = None  # "uncovered", "budget" or "objective"
    detail: tuple = ()

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "VALID"
        if self.kind == "uncovered":
            t, (u, v) = self.detail
            return f"UNCOVERED time {t} edge {u} {v}"
        if self.kind == "budget":
            scope, ident, used, limit = self.detail
            return f"BUDGET {scope} {ident} uses {used} > {limit}"
        value, ell, kind = self.detail
        return f"OBJECTIVE {kind} {value} > {ell}"


def check_timeline_range(g: TemporalGraph, timeline: Iterable[Interval]) -> None:
    for v, a, b in timeline:
        if not 1 <= v <= g.n:
            raise MalformedTimelineError(f"vertex {v} outside 1..{g.n}")
        if not (1 <= a <= b <= g.tau):
            raise MalformedTimelineError(f"interval ({v},{a},{b}) outside time steps 1..{g.tau}")


def active_sets(g: TemporalGraph, timeline: Iterable[Interval]) -> list[set[int]]:
    """``active[t]`` is the set of vertices active at time step ``t`` (index 0 unused)."""
    active: list[set[int]] = [set() for _ in range(g.tau + 1)]
    for v, a, b in timeline:
        for t in range(a, b + 1):
            active[t].add(v)
    return active


def covers(g: TemporalGraph, timeline: Iterable[Interval]) -> bool:
    return first_uncovered(g, timeline) is None


def first_uncovered(g: TemporalGraph, timeline: Iterable[Interval]):
    active = active_sets(g, timeline)
    for t, (u, v) in g.time_edges():
        if u not in active[t] and v not in active[t]:
            return t, (u, v)
    return None


def verify_timeline(g: TemporalGraph, timeline: Iterable[Interval], budget, obj: Objective) -> Verdict:
    """Check coverage, interval budgets and the length bound, in that order.

    Raises :class:`MalformedTimelineError` for out-of-range entries, which is
    distinct from a (reported) violation.
    """
    timeline = frozenset(Interval(*iv) for iv in timeline)
    check_timeline_range(g, timeline)
    budget = as_budget(budget)

    miss = first_uncovered(g, timeline)
    if miss is not None:
        return Verdict(False, "uncovered", miss)

    counts = per_vertex_counts(timeline)
    if isinstance(budget, Multicolored):
        for i, (members, k) in enumerate(budget.groups(g.n), start=1):
            used = sum(counts[v] for v in members)
            if used > k:
                return Verdict(False, "budget", ("class", i, used, k))
    else:
        for v, k in enumerate(budget.vertex_limits(g.n), start=1):
            if counts[v] > k:
                return Verdict(False, "budget", ("vertex", v, counts[v], k))

    value = objective_value(timeline, obj.kind)
    if value > obj.ell:
        return Verdict(False, "objective", (value, obj.ell, obj.kind.value))
    return Verdict(True)


def permute_layers(g: TemporalGraph, pi: Sequence[int]) -> TemporalGraph:
    """Layer ``i`` of the result is layer ``pi[i - 1]`` of ``g`` (1-based ``pi``)."""
    if sorted(pi) != list(range(1, g.tau + 1)):
        raise ValueError("pi must be a permutation of 1..tau")
    return TemporalGraph(g.n, g.tau, tuple(g.layer(p) for p in pi))
