"""Sum-objective solver that guesses the positive-length intervals.

A solution splits into zero-length intervals and positive-length ones whose
total length is at most ``ell``. The positive-length intervals form
overlapping groups; each group occupies a window of at most ``ell + 1``
consecutive layers. We enumerate ordered sequences of such windows together
with the intervals placed inside them, delete the incidences they cover, and
hand the remaining graph to the zero-length solver with reduced budgets.

Each window is enumerated in canonical form only: its intervals start at the
window's first layer, end at its last layer, and are connected by overlap.
Every set of positive-length intervals then corresponds to exactly one
sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import Interval, NonUniform, SolveOutcome, TemporalGraph, Uniform, as_budget
from .layerzero import solve_zero


@dataclass(frozen=True)
class SolutionPattern:
    """Intervals ``(v, a, b)`` relative to a window of layers ``start..end``."""

    start: int
    end: int
    intervals: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.start < self.end:
            raise ValueError("a pattern window spans at least two layers")
        if not self.intervals:
            raise ValueError("a solution pattern needs at least one interval")
        span = self.end - self.start
        for v, a, b in self.intervals:
            if not 0 <= a < b <= span:
                raise ValueError(f"interval ({v},{a},{b}) does not fit window of length {span}")

    @property
    def weight(self) -> int:
        return sum(b - a for _, a, b in self.intervals)

    def absolute(self) -> list[Interval]:
        return [Interval(v, self.start + a, self.start + b) for v, a, b in self.intervals]


def _vertex_limits(g: TemporalGraph, budget) -> tuple[int, ...]:
    budget = as_budget(budget)
    if not isinstance(budget, (Uniform, NonUniform)):
        raise TypeError("pattern enumeration takes a uniform or per-vertex budget")
    return budget.vertex_limits(g.n)


def _connected(intervals) -> bool:
    reach = None
    for _, a, b in sorted(intervals, key=lambda iv: (iv[1], iv[2])):
        if reach is not None and a > reach:
            return False
        reach = b if reach is None else max(reach, b)
    return True


def _window_sets(n: int, span: int, max_weight: int, room: list[int], useful=None) -> Iterator[tuple]:
    """Canonical interval sets for a window of length ``span``, sorted by (v, a, b).

    ``useful(v, a, b)``, when given, filters the candidate intervals.
    """
    candidates = [
        (v, a, b)
        for v in range(1, n + 1)
        if room[v] > 0
        for a in range(span)
        for b in range(a + 1, span + 1)
        if b - a <= max_weight and (useful is None or useful(v, a, b))
    ]
    chosen: list[tuple[int, int, int]] = []
    taken = [0] * (n + 1)

    def rec(pos: int, weight: int):
        if chosen:
            if (
                min(a for _, a, _ in chosen) == 0
                and max(b for _, _, b in chosen) == span
                and _connected(chosen)
            ):
                yield tuple(chosen)
        for q in range(pos, len(candidates)):
            v, a, b = candidates[q]
            w = b - a
            if weight + w > max_weight or taken[v] >= room[v]:
                continue
            chosen.append(candidates[q])
            taken[v] += 1
            yield from rec(q + 1, weight + w)
            taken[v] -= 1
            chosen.pop()

    yield from rec(0, 0)


def enumerate_pattern_sequences(
    g: TemporalGraph, k, ell: int, *, trim: bool = False
) -> Iterator[tuple[SolutionPattern, ...]]:
    """Stream every ordered sequence of disjoint pattern windows.

    Total weight stays within ``ell`` and each vertex gets at most its budget
    of positive-length intervals. The empty sequence comes first.

    With ``trim``, only intervals whose vertex has an edge in both the first
    and the last layer of the interval are used. Any other interval can be
    shortened without uncovering anything, so answers are unchanged.
    """
    limits = _vertex_limits(g, k)
    room = [0, *limits]
    tau = g.tau
    busy = [set()] + [{x for e in layer for x in e} for layer in g.layers]

    def extend(prefix: tuple, next_start: int, left: int):
        yield prefix
        for i in range(next_start, tau):
            for span in range(1, min(left, tau - i) + 1):
                useful = (lambda v, a, b, i=i: v in busy[i + a] and v in busy[i + b]) if trim else None
                for ivs in _window_sets(g.n, span, left, room, useful):
                    pattern = SolutionPattern(i, i + span, ivs)
                    for v, _, _ in ivs:
                        room[v] -= 1
                    yield from extend(prefix + (pattern,), i + span + 1, left - pattern.weight)
                    for v, _, _ in ivs:
                        room[v] += 1

    yield from extend((), 1, ell)


def apply_patterns(g: TemporalGraph, budget, sequence: Sequence[SolutionPattern]):
    """Residual graph after the pattern intervals, and the leftover per-vertex budgets."""
    limits = list(_vertex_limits(g, budget))
    layers = [set(layer) for layer in g.layers]
    for pattern in sequence:
        for v, a, b in pattern.absolute():
            limits[v - 1] -= 1
            for t in range(a, b + 1):
                layers[t - 1] = {e for e in layers[t - 1] if v not in e}
    if any(k < 0 for k in limits):
        raise ValueError("sequence exceeds the interval budget")
    residual = TemporalGraph(g.n, g.tau, tuple(frozenset(layer) for layer in layers))
    return residual, tuple(limits)


def solve_sum_patterns(g: TemporalGraph, k, ell: int) -> SolveOutcome:
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    tried = 0
    for sequence in enumerate_pattern_sequences(g, k, ell, trim=True):
        tried += 1
        residual, leftover = apply_patterns(g, k, sequence)
        outcome = solve_zero(residual, NonUniform(leftover))
        if outcome:
            long_part = itertools.chain.from_iterable(p.absolute() for p in sequence)
            return SolveOutcome.yes(set(long_part) | outcome.witness, sequences=tried)
    return SolveOutcome.no(sequences=tried)
