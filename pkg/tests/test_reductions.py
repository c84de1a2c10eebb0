import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from untangle.branch import solve_max_branching
from untangle.core import (
    Instance,
    Multicolored,
    NonUniform,
    Objective,
    SolverRefusal,
    TemporalGraph,
    Uniform,
    per_vertex_counts,
    verify_timeline,
)
from untangle.dp import solve_max_dp
from untangle.fileio import parse_binpacking, render_temporal_graph
from untangle.oracle import oracle_solve
from untangle import reductions as red

from conftest import CORPUS, DATA, random_graph, repeat_layer

TRIANGLE = {(1, 2), (1, 3), (2, 3)}
C5 = {(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)}
MAX1 = Objective("max", 1)


# ---------------------------------------------------------------------------
# odd cycle transversal


def oct_answer_both_sides(n, edges, s):
    src = red.StaticGraphInstance(n, edges, s)
    inst = red.reduce_oct_to_sum(src)
    target = oracle_solve(inst.graph, inst.budget, inst.objective, cap=2 * n)
    return red.brute_force_oct(src), target, inst


@pytest.mark.parametrize(
    "n, edges, s, expected",
    [(2, {(1, 2)}, 0, True), (3, TRIANGLE, 0, False), (3, TRIANGLE, 1, True), (5, C5, 1, True), (5, C5, 0, False)],
)
def test_oct_examples(n, edges, s, expected):
    source, target, inst = oct_answer_both_sides(n, edges, s)
    assert inst.graph.tau == 2 and inst.graph.layer(1) == inst.graph.layer(2) == frozenset(edges)
    assert inst.budget == Uniform(1) and inst.objective == Objective("sum", s)
    assert (source is not None) == target.answer == expected


def test_oct_certificate_maps():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 6)
        edges = {e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5}
        s = rng.randint(0, 2)
        source, target, inst = oct_answer_both_sides(n, edges, s)
        assert (source is not None) == target.answer
        if source is not None:
            timeline = red.oct_to_timeline(*source)
            assert verify_timeline(inst.graph, timeline, inst.budget, inst.objective)
        if target:
            X = red.timeline_to_oct(target.witness)
            assert len(X) <= s and red.two_coloring(n, edges, X) is not None


# ---------------------------------------------------------------------------
# Almost 2-SAT


def test_almost2sat_construction():
    g = TemporalGraph(2, 2, (frozenset({(1, 2)}), frozenset()))
    cnf = red.reduce_sum_tau2_to_almost2sat(g, 0)
    assert cnf.s == 0
    assert cnf.clauses == (
        (((1, 1), True), ((2, 1), True)),
        (((1, 1), False), ((1, 2), False)),
        (((2, 1), False), ((2, 2), False)),
    )


def test_almost2sat_copies():
    g = repeat_layer(2, {(1, 2)}, 2)
    cnf = red.reduce_sum_tau2_to_almost2sat(g, 2)
    assert cnf.clauses.count((((1, 1), True), ((2, 1), True))) == 3


def test_almost2sat_needs_two_layers():
    with pytest.raises(ValueError):
        red.reduce_sum_tau2_to_almost2sat(repeat_layer(2, {(1, 2)}, 3), 0)


def test_identical_single_edge_layers():
    cnf = red.reduce_sum_tau2_to_almost2sat(repeat_layer(2, {(1, 2)}, 2), 0)
    assert red.brute_force_almost2sat(cnf) is not None


def test_triangle_two_layers():
    g = repeat_layer(3, TRIANGLE, 2)
    for ell in range(3):
        cnf = red.reduce_sum_tau2_to_almost2sat(g, ell)
        expected = oracle_solve(g, 1, Objective("sum", ell)).answer
        assert (red.brute_force_almost2sat(cnf) is not None) == expected
    assert red.decide_sum_two_layers(g, 1, 1) and not red.decide_sum_two_layers(g, 1, 0)


def test_almost2sat_certificate_maps():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(1, 5)
        g = random_graph(rng, n, 2)
        ell = rng.randint(0, 3)
        cnf = red.reduce_sum_tau2_to_almost2sat(g, ell)
        sat = red.brute_force_almost2sat(cnf)
        target = oracle_solve(g, 1, Objective("sum", ell))
        assert (sat is not None) == target.answer
        if sat is not None:
            timeline = red.almost2sat_to_timeline(cnf, *sat)
            assert verify_timeline(g, timeline, 1, Objective("sum", ell))
        if target:
            deleted, alpha = red.timeline_to_almost2sat(cnf, target.witness)
            assert len(deleted) <= ell
            kept = [c for i, c in enumerate(cnf.clauses) if i not in set(deleted)]
            assert all(any(alpha[var] == pos for var, pos in c) for c in kept)


def test_almost2sat_brute_force_cap():
    cnf = red.reduce_sum_tau2_to_almost2sat(repeat_layer(7, set(), 2), 0)
    with pytest.raises(SolverRefusal):
        red.brute_force_almost2sat(cnf)


def test_trivial_budgets():
    g = repeat_layer(3, TRIANGLE, 2)
    assert red.decide_sum_two_layers(g, 2, 0)
    assert not red.decide_sum_two_layers(g, 0, 5)
    assert red.decide_sum_two_layers(repeat_layer(3, set(), 2), 0, 0)


# ---------------------------------------------------------------------------
# bin packing


def fig3():
    return parse_binpacking((CORPUS / "fig3.bp").read_text())


def test_fig3_reduction_shape():
    inst = red.reduce_binpacking_to_multicolored(fig3())
    assert (inst.graph.n, inst.graph.tau) == (6, 18)
    assert inst.budget.ks == (6, 6, 6, 5)
    assert inst.objective == MAX1


def test_fig3_is_yes_and_packing_extracts():
    bp = fig3()
    src = red.reduce_binpacking_to_multicolored(bp)
    # constructive direction from a packing
    packing = red.brute_force_packing(bp)
    timeline = red.packing_to_timeline(bp, packing)
    assert verify_timeline(src.graph, timeline, src.budget, src.objective)
    assert red.timeline_to_packing(bp, timeline) == packing
    # solver direction: class budgets become per-vertex budgets, then branching
    target = red.reduce_multicolored_to_nonuniform(src)
    out = solve_max_branching(target.graph, target.budget, 1)
    assert out
    back = red.nonuniform_to_multicolored_timeline(src, out.witness)
    assert verify_timeline(src.graph, back, src.budget, src.objective)
    assert red.is_perfect_packing(bp, red.timeline_to_packing(bp, back))


def test_two_unit_items():
    bp = red.BinPackingInstance((1, 1), 2, 1)
    inst = red.reduce_binpacking_to_multicolored(bp)
    out = oracle_solve(inst.graph, inst.budget, inst.objective, cap=16)
    assert out
    assignment = red.timeline_to_packing(bp, out.witness)
    assert sorted(assignment) == [1, 2] and red.is_perfect_packing(bp, assignment)


def test_overfull_rejected():
    with pytest.raises(ValueError, match="larger than a bin"):
        red.BinPackingInstance((2,), 2, 1).normalized()
    with pytest.raises(ValueError, match="exceeds"):
        red.BinPackingInstance((1, 1, 1), 2, 1).normalized()
    with pytest.raises(ValueError):
        red.reduce_binpacking_to_multicolored(red.BinPackingInstance((1,), 2, 1))


def test_padding_and_unary_cap():
    assert red.BinPackingInstance((2,), 2, 2).normalized().sizes == (2, 1, 1)
    with pytest.raises(ValueError):
        red.BinPackingInstance((21,), 2, 20).normalized()
    assert red.BinPackingInstance((21,), 2, 21).normalized(size_cap=30).is_normalized


@settings(max_examples=60)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=5), st.integers(1, 3))
def test_binpacking_layer_structure(sizes, beta):
    B = max(-(-sum(sizes) // beta), max(sizes))
    bp = red.BinPackingInstance(tuple(sizes), beta, B).normalized()
    g = red.reduce_binpacking_to_multicolored(bp).graph
    u_clique = set(itertools.combinations(range(1, beta + 1), 2))
    for layer in g.layers:
        assert u_clique <= layer
        assert not any(u > beta and v > beta for u, v in layer)


def test_binpacking_both_sides_small():
    cases = [((1, 1), 2, 1), ((1, 2, 1), 2, 2), ((1, 1, 1), 3, 1), ((2, 2), 2, 2), ((2, 1, 1), 2, 2), ((1,), 1, 3)]
    for sizes, beta, B in cases:
        bp = red.BinPackingInstance(sizes, beta, B).normalized()
        inst = red.reduce_binpacking_to_multicolored(bp)
        out = oracle_solve(inst.graph, inst.budget, inst.objective, cap=40)
        assert out.answer == (red.brute_force_packing(bp) is not None)
        if out:
            assert red.is_perfect_packing(bp, red.timeline_to_packing(bp, out.witness))


# ---------------------------------------------------------------------------
# class budgets -> per-vertex budgets -> uniform budget


def test_degenerate_clique():
    g = TemporalGraph(1, 1, (frozenset(),))
    src = Instance(g, Multicolored((frozenset({1}),), (1,)), MAX1)
    target = red.reduce_multicolored_to_nonuniform(src)
    assert target.graph.tau == 3
    assert target.graph.layers[1:] == (frozenset(), frozenset())
    assert target.budget == NonUniform((1,))


def test_clique_layers_stay_in_class():
    g = TemporalGraph(4, 1, (frozenset(),))
    budget = Multicolored((frozenset({1, 3}), frozenset({2, 4})), (1, 2))
    target = red.reduce_multicolored_to_nonuniform(Instance(g, budget, MAX1))
    assert target.graph.tau == 1 + 2 * 3
    assert target.graph.layers[1:3] == (frozenset({(1, 3)}),) * 2
    assert target.graph.layers[3:] == (frozenset({(2, 4)}),) * 4
    assert target.budget == NonUniform((1, 2, 1, 2))


def random_multicolored(rng):
    n = rng.randint(2, 4)
    g = random_graph(rng, n, rng.randint(1, 3))
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    cut = rng.randint(1, n - 1)
    classes = (frozenset(verts[:cut]), frozenset(verts[cut:]))
    return Instance(g, Multicolored(classes, (rng.randint(0, 2), rng.randint(0, 2))), MAX1)


def test_multicolored_both_sides():
    rng = random.Random(31)
    for _ in range(60):
        src = random_multicolored(rng)
        target = red.reduce_multicolored_to_nonuniform(src)
        a = oracle_solve(src.graph, src.budget, MAX1, cap=20)
        b = solve_max_dp(target.graph, target.budget, 1)
        assert a.answer == b.answer
        if a:
            fw = red.multicolored_to_nonuniform_timeline(src, a.witness)
            assert verify_timeline(target.graph, fw, target.budget, MAX1)
        if b:
            back = red.nonuniform_to_multicolored_timeline(src, b.witness)
            assert verify_timeline(src.graph, back, src.budget, MAX1)


def test_uniform_gadget_arithmetic():
    g = repeat_layer(2, {(1, 2)}, 1)
    target = red.reduce_nonuniform_to_uniform(Instance(g, NonUniform((1, 2)), MAX1))
    assert target.budget == Uniform(2)
    assert target.graph.n == 4 and target.graph.tau == 1 + 2 * 2 * 4
    layers = target.graph.layers
    assert layers[1:9] == (frozenset({(3, 4)}),) * 8
    assert layers[9:11] == (frozenset({(1, 3)}),) * 2 and layers[11:13] == (frozenset(),) * 2
    assert layers[13:17] == (frozenset(),) * 4


def test_uniform_input_has_no_forcing_layers():
    g = repeat_layer(2, {(1, 2)}, 2)
    target = red.reduce_nonuniform_to_uniform(Instance(g, NonUniform((2, 2)), MAX1))
    gadget = target.graph.layers[2 + 8 :]
    assert not any(gadget)


def test_nonuniform_both_sides_and_gadget_counts():
    rng = random.Random(32)
    for _ in range(60):
        n = rng.randint(1, 3)
        g = random_graph(rng, n, rng.randint(1, 4))
        ks = tuple(rng.randint(0, 2) for _ in range(n))
        src = Instance(g, NonUniform(ks), MAX1)
        target = red.reduce_nonuniform_to_uniform(src)
        a = solve_max_dp(g, ks, 1)
        b = solve_max_branching(target.graph, target.budget, 1)
        assert a.answer == b.answer
        k = max(ks)
        if a:
            fw = red.nonuniform_to_uniform_timeline(src, a.witness)
            assert verify_timeline(target.graph, fw, target.budget, MAX1)
        if b:
            counts = per_vertex_counts(b.witness)
            assert counts[n + 1] == counts[n + 2] == k
            back = red.uniform_to_nonuniform_timeline(src, b.witness)
            assert verify_timeline(g, back, src.budget, MAX1)


def test_reductions_need_unit_max_bound():
    g = repeat_layer(2, {(1, 2)}, 1)
    with pytest.raises(ValueError):
        red.reduce_nonuniform_to_uniform(Instance(g, NonUniform((1, 1)), Objective("max", 2)))
    with pytest.raises(TypeError):
        red.reduce_multicolored_to_nonuniform(Instance(g, NonUniform((1, 1)), MAX1))


# ---------------------------------------------------------------------------
# random generator


def test_generator_extremes():
    assert not any(red.generate_random(4, 3, 0.0, 1).layers)
    full = frozenset(itertools.combinations(range(1, 5), 2))
    assert red.generate_random(4, 3, 1.0, 1).layers == (full,) * 3
    with pytest.raises(ValueError):
        red.generate_random(2, 2, 1.5, 0)


def test_generator_golden_file():
    text = render_temporal_graph(red.generate_random(3, 3, 0.5, 42))
    assert text == (DATA / "random_n3_tau3_p05_seed42.tg").read_text()
    assert text == render_temporal_graph(red.generate_random(3, 3, 0.5, 42))
