"""Line-oriented text formats.

``.tg`` temporal graph::

    tg 1
    n 5
    tau 9
    layer 1
    e 2 5

``.tl`` timeline: one ``v a b`` triple per line.

``.bud`` budgets: a single ``k K`` line, or ``v <id> <k_v>`` lines, or
``class <i> <k_i>`` plus ``member <i> <v>`` lines.

``.bp`` bin packing: ``bp 1``, ``sizes s_1 .. s_m``, ``beta b``, ``B c``.

``#`` starts a comment everywhere; LF and CRLF are both accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BudgetSpec,
    Interval,
    Multicolored,
    NonUniform,
    TemporalGraph,
    Uniform,
    as_budget,
    make_timeline,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UnknownDirectiveError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class DuplicateLayerError(ParseError):
    pass


class LayerOrderError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class MissingHeaderError(ParseError):
    pass


def _lines(text: str):
    """Yield ``(line_number, tokens)`` for non-blank, comment-stripped lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _int(token: str, line: int) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def _ints(tokens: list[str], count: int, line: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} values, got {len(tokens)}", line)
    return [_int(tok, line) for tok in tokens]


# ---------------------------------------------------------------------------
# temporal graphs


@dataclass(frozen=True)
class GraphFile:
    graph: TemporalGraph
    source: str = "<string>"
    layer_lines: tuple[tuple[int, int], ...] = ()  # (layer, header line)


def parse_graph_file(text: str, source: str = "<string>") -> GraphFile:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["tg", "1"]:
        raise MissingHeaderError("first line must be 'tg 1'", lines[0][0] if lines else None)

    n = tau = None
    layers: dict[int, set[tuple[int, int]]] = {}
    headers: list[tuple[int, int]] = []
    current = None
    for number, tokens in lines[1:]:
        word, args = tokens[0], tokens[1:]
        if word == "n":
            if n is not None or layers:
                raise ParseError("misplaced 'n' directive", number)
            (n,) = _ints(args, 1, number)
            if n < 1:
                raise ParseError("n must be positive", number)
        elif word == "tau":
            if tau is not None or layers:
                raise ParseError("misplaced 'tau' directive", number)
            (tau,) = _ints(args, 1, number)
            if tau < 1:
                raise ParseError("tau must be positive", number)
        elif word == "layer":
            if n is None or tau is None:
                raise MissingHeaderError("'n' and 'tau' must precede layers", number)
            (t,) = _ints(args, 1, number)
            if not 1 <= t <= tau:
                raise ParseError(f"layer {t} outside 1..{tau}", number)
            if t in layers:
                raise DuplicateLayerError(f"layer {t} declared twice", number)
            if headers and t < headers[-1][0]:
                raise LayerOrderError(f"layer {t} after layer {headers[-1][0]}", number)
            layers[t] = set()
            headers.append((t, number))
            current = t
        elif word == "e":
            if current is None:
                raise ParseError("edge outside a layer block", number)
            u, v = _ints(args, 2, number)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise VertexRangeError(f"vertex {x} outside 1..{n}", number)
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}", number)
            edge = (min(u, v), max(u, v))
            if edge in layers[current]:
                raise DuplicateEdgeError(f"edge {edge[0]} {edge[1]} repeated in layer {current}", number)
            layers[current].add(edge)
        else:
            raise UnknownDirectiveError(f"unknown directive {word!r}", number)

    if n is None or tau is None:
        raise MissingHeaderError("missing 'n' or 'tau'")
    graph = TemporalGraph(n, tau, tuple(frozenset(layers.get(t, ())) for t in range(1, tau + 1)))
    return GraphFile(graph, source, tuple(headers))


def parse_temporal_graph(text: str) -> TemporalGraph:
    return parse_graph_file(text).graph


def render_temporal_graph(g: TemporalGraph) -> str:
    out = ["tg 1", f"n {g.n}", f"tau {g.tau}"]
    for t, layer in enumerate(g.layers, start=1):
        if layer:
            out.append(f"layer {t}")
            out.extend(f"e {u} {v}" for u, v in sorted(layer))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# timelines


def parse_timeline(text: str) -> frozenset[Interval]:
    entries = []
    seen = set()
    for number, tokens in _lines(text):
        v, a, b = _ints(tokens, 3, number)
        if a > b:
            raise ParseError(f"interval ({v},{a},{b}) has a > b", number)
        if (v, a, b) in seen:
            raise ParseError(f"interval ({v},{a},{b}) repeated", number)
        seen.add((v, a, b))
        entries.append((v, a, b))
    return make_timeline(entries)


def render_timeline(timeline) -> str:
    return "".join(f"{v} {a} {b}\n" for v, a, b in sorted(timeline))


# ---------------------------------------------------------------------------
# budgets


def parse_budgets(text: str, n: int | None = None) -> BudgetSpec:
    uniform = None
    per_vertex: dict[int, int] = {}
    class_budget: dict[int, int] = {}
    members: dict[int, set[int]] = {}
    member_line: dict[int, int] = {}
    for number, tokens in _lines(text):
        word, args = tokens[0], tokens[1:]
        if word == "k":
            if uniform is not None or per_vertex or class_budget or members:
                raise ParseError("'k' cannot be combined with other budget lines", number)
            (uniform,) = _ints(args, 1, number)
        elif word == "v":
            if uniform is not None or class_budget or members:
                raise ParseError("mixed budget styles", number)
            v, k = _ints(args, 2, number)
            if v < 1 or (n is not None and v > n):
                raise VertexRangeError(f"vertex {v} out of range", number)
            if v in per_vertex:
                raise ParseError(f"vertex {v} listed twice", number)
            per_vertex[v] = k
        elif word == "class":
            if uniform is not None or per_vertex:
                raise ParseError("mixed budget styles", number)
            i, k = _ints(args, 2, number)
            if i in class_budget:
                raise ParseError(f"class {i} listed twice", number)
            class_budget[i] = k
        elif word == "member":
            if uniform is not None or per_vertex:
                raise ParseError("mixed budget styles", number)
            i, v = _ints(args, 2, number)
            if v < 1 or (n is not None and v > n):
                raise VertexRangeError(f"vertex {v} out of range", number)
            if v in member_line:
                raise ParseError(f"vertex {v} assigned to two classes", number)
            member_line[v] = number
            members.setdefault(i, set()).add(v)
        else:
            raise UnknownDirectiveError(f"unknown directive {word!r}", number)
        if any(x < 0 for x in (uniform or 0, *per_vertex.values(), *class_budget.values())):
            raise ParseError("budgets must be nonnegative", number)

    if uniform is not None:
        return Uniform(uniform)
    if per_vertex:
        size = n if n is not None else max(per_vertex)
        missing = [v for v in range(1, size + 1) if v not in per_vertex]
        if missing:
            raise ParseError(f"no budget for vertex {missing[0]}")
        return NonUniform(tuple(per_vertex[v] for v in range(1, size + 1)))
    if class_budget:
        ids = sorted(class_budget)
        if ids != list(range(1, len(ids) + 1)):
            raise ParseError("classes must be numbered 1..r")
        for i in members:
            if i not in class_budget:
                raise ParseError(f"member of undeclared class {i}", member_line[min(members[i])])
        spec = Multicolored(tuple(frozenset(members.get(i, ())) for i in ids), tuple(class_budget[i] for i in ids))
        if n is not None:
            try:
                spec.validate(n)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        return spec
    raise ParseError("empty budget file")


def render_budgets(budget) -> str:
    budget = as_budget(budget)
    if isinstance(budget, Uniform):
        return f"k {budget.k}\n"
    if isinstance(budget, NonUniform):
        return "".join(f"v {v} {k}\n" for v, k in enumerate(budget.ks, start=1))
    out = [f"class {i} {k}" for i, k in enumerate(budget.ks, start=1)]
    for i, cls in enumerate(budget.classes, start=1):
        out.extend(f"member {i} {v}" for v in sorted(cls))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# bin packing source instances


def parse_binpacking(text: str):
    from .reductions import BinPackingInstance

    lines = list(_lines(text))
    if not lines or lines[0][1] != ["bp", "1"]:
        raise MissingHeaderError("first line must be 'bp 1'", lines[0][0] if lines else None)
    fields: dict[str, object] = {}
    for number, tokens in lines[1:]:
        word, args = tokens[0], tokens[1:]
        if word not in ("sizes", "beta", "B"):
            raise UnknownDirectiveError(f"unknown directive {word!r}", number)
        if word in fields:
            raise ParseError(f"{word!r} given twice", number)
        if word == "sizes":
            fields[word] = tuple(_int(tok, number) for tok in args)
        else:
            (fields[word],) = _ints(args, 1, number)
    for word in ("sizes", "beta", "B"):
        if word not in fields:
            raise MissingHeaderError(f"missing {word!r}")
    try:
        return BinPackingInstance(fields["sizes"], fields["beta"], fields["B"])
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render_binpacking(bp) -> str:
    return f"bp 1\nsizes {' '.join(map(str, bp.sizes))}\nbeta {bp.beta}\nB {bp.B}\n"
