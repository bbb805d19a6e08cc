import random

import pytest

from atcert.certify.at_core import DegreeBudget, diff_enum
from atcert.certify.witness_ops import (
    WitnessedGraph,
    add_arc_no_euler,
    forced_edge_removal,
    remove_arc_no_euler,
    remove_deg2_vertex_keep_AT,
    remove_edge_keep_AT,
    restrict_witness,
    union_one_way,
)
from atcert.exceptions import CertificateViolation, PreconditionError

from conftest import (
    complete_graph,
    directed,
    directed_cycle,
    graph_of,
    random_orientation,
    random_subgraph,
    tight_budget,
)


def witnessed(arcs, budget) -> WitnessedGraph:
    d = directed(arcs, budget)
    return WitnessedGraph(d.base, budget, d)


def random_witness(base, rng) -> WitnessedGraph:
    while True:
        g = random_subgraph(base, rng.randint(1, len(base.edges)), rng)
        d = random_orientation(g, rng)
        if diff_enum(d).diff != 0:
            return WitnessedGraph(g, tight_budget(d), d)


class TestWitnessedGraph:
    def test_rejects_zero_diff(self):
        d = directed_cycle(3)
        with pytest.raises(CertificateViolation):
            WitnessedGraph(d.base, {1: 2, 2: 2, 3: 2}, d)

    def test_rejects_out_degree_over_budget(self):
        with pytest.raises(CertificateViolation):
            witnessed([(1, 2), (1, 3)], {1: 2, 2: 1, 3: 1})

    def test_rejects_missing_budget(self):
        d = directed([(1, 2)])
        with pytest.raises(CertificateViolation):
            WitnessedGraph(d.base, {1: 2}, d)

    def test_expected_diff_is_enforced(self):
        d = directed_cycle(4)
        with pytest.raises(CertificateViolation):
            WitnessedGraph(d.base, DegreeBudget.constant(d.vertices, 2), d, expected_diff=1)

    def test_diff_of_directed_square(self):
        d = directed_cycle(4)
        w = WitnessedGraph(d.base, DegreeBudget.constant(d.vertices, 2), d)
        assert w.diff_value == 2
        assert w.out_degree(1) == 1


class TestEdgeRemoval:
    def test_tail_branch(self):
        w = witnessed([(1, 2), (1, 3), (2, 3)], {1: 3, 2: 2, 3: 1})
        trace = []
        result, reduced = remove_edge_keep_AT(w, (1, 3), trace)
        assert reduced == 1
        assert result.budget == {1: 2, 2: 2, 3: 1}
        assert (1, 3) not in result.graph.edges
        assert trace == [{"step": "edge-removal", "edge": [1, 3], "branch": "tail", "reduced": 1}]

    def test_head_branch(self):
        w = witnessed([(1, 2), (2, 3), (3, 1), (3, 4), (4, 1)], {1: 2, 2: 2, 3: 3, 4: 2})
        assert w.diff_value == 1
        trace = []
        result, reduced = remove_edge_keep_AT(w, (1, 4), trace)
        assert reduced == 1
        assert result.budget == {1: 1, 2: 2, 3: 3, 4: 2}
        assert result.out_degree(1) == 0
        assert trace[0]["branch"] == "head"

    def test_missing_edge(self):
        w = witnessed([(1, 2)], {1: 2, 2: 1})
        with pytest.raises(PreconditionError):
            remove_edge_keep_AT(w, (1, 3))

    def test_one_endpoint_always_absorbs(self):
        rng = random.Random(7)
        base = complete_graph(5)
        checked = 0
        while checked < 200:
            g = random_subgraph(base, rng.randint(1, 10), rng)
            d = random_orientation(g, rng)
            if diff_enum(d).diff == 0:
                continue
            f = tight_budget(d)
            w = WitnessedGraph(g, f, d)
            edge = rng.choice(g.sorted_edges)
            result, reduced = remove_edge_keep_AT(w, edge)
            assert reduced in edge
            assert result.budget == f.reduce(reduced)
            assert result.diff_value != 0
            checked += 1


class TestForcedRemoval:
    def test_budget_one_endpoint(self):
        w = witnessed([(1, 2), (1, 3)], {1: 3, 2: 1, 3: 1})
        result = forced_edge_removal(w, (1, 2))
        assert result.budget == {1: 2, 2: 1, 3: 1}

    def test_budget_two_with_sink_neighbour(self):
        w = witnessed([(1, 2), (2, 3)], {1: 2, 2: 2, 3: 1})
        result = forced_edge_removal(w, (1, 2))
        assert result.budget == {1: 1, 2: 2, 3: 1}

    def test_precondition(self):
        w = witnessed([(1, 2), (2, 3)], {1: 2, 2: 2, 3: 1})
        with pytest.raises(PreconditionError):
            forced_edge_removal(w, (3, 2))


class TestArcOperations:
    def test_add_then_remove(self):
        w = witnessed([(1, 2)], {1: 2, 2: 1})
        grown = add_arc_no_euler(w, (2, 3))
        assert grown.budget == {1: 2, 2: 2, 3: 1}
        assert grown.diff_value == w.diff_value
        back = remove_arc_no_euler(grown, (2, 3)).without_isolated([3])
        assert back.graph == w.graph
        assert back.witness.arcs == w.witness.arcs

    def test_head_must_be_sink(self):
        w = witnessed([(1, 2), (2, 3)], {1: 2, 2: 2, 3: 1})
        with pytest.raises(PreconditionError):
            add_arc_no_euler(w, (3, 1))

    def test_existing_edge(self):
        w = witnessed([(1, 2)], {1: 2, 2: 1})
        with pytest.raises(PreconditionError):
            add_arc_no_euler(w, (2, 1))

    def test_removing_cycle_arc_changes_diff(self):
        d = directed_cycle(4)
        w = WitnessedGraph(d.base, DegreeBudget.constant(d.vertices, 2), d)
        with pytest.raises(CertificateViolation):
            remove_arc_no_euler(w, (1, 2))


class TestDegreeTwoRemoval:
    def test_reduction_passed_to_other_neighbour(self):
        w = witnessed([(2, 4), (4, 1), (2, 1), (1, 3), (2, 3)], {1: 2, 2: 4, 3: 1, 4: 2})
        result, absorbed = remove_deg2_vertex_keep_AT(w, 4, first=1)
        assert absorbed == 2
        assert result.budget == {1: 2, 2: 3, 3: 1}
        assert 4 not in result.graph.vertices

    def test_pendant_drop(self):
        w = witnessed([(1, 4), (4, 2), (1, 2), (1, 3), (2, 3)], {1: 4, 2: 2, 3: 1, 4: 2})
        trace = []
        result, absorbed = remove_deg2_vertex_keep_AT(w, 4, trace=trace)
        assert absorbed == 1
        assert result.budget == {1: 3, 2: 2, 3: 1}
        assert "pendant-drop" in [r["step"] for r in trace]
        assert trace[-1] == {"step": "degree2-removal", "vertex": 4, "reduced": 1}

    def test_needs_degree_two(self):
        w = witnessed([(1, 4), (4, 2), (1, 2), (1, 3), (2, 3)], {1: 4, 2: 2, 3: 1, 4: 2})
        with pytest.raises(PreconditionError):
            remove_deg2_vertex_keep_AT(w, 1)

    def test_needs_budget_two(self):
        w = witnessed([(1, 4), (4, 2), (1, 2), (1, 3), (2, 3)], {1: 4, 2: 2, 3: 1, 4: 3})
        with pytest.raises(PreconditionError):
            remove_deg2_vertex_keep_AT(w, 4)


class TestOneWayUnion:
    def test_cross_arcs(self):
        wx = witnessed([(1, 2)], {1: 2, 2: 1})
        wy = witnessed([(3, 4)], {3: 2, 4: 1})
        result = union_one_way(wx, wy, cross_arcs=[(1, 3), (2, 4)])
        assert result.diff_value == 1
        assert result.budget == {1: 3, 2: 2, 3: 2, 4: 1}

    def test_diff_multiplies(self):
        wx = witnessed([(5, 6)], {5: 2, 6: 1})
        d = directed_cycle(4)
        wy = WitnessedGraph(d.base, DegreeBudget.constant(d.vertices, 2), d)
        result = union_one_way(wx, wy, cross_arcs=[(5, 1)])
        assert result.diff_value == 2

    def test_shared_sink(self):
        wx = witnessed([(1, 2)], {1: 2, 2: 1})
        wy = witnessed([(2, 3)], {2: 2, 3: 1})
        result = union_one_way(wx, wy, shared=[2])
        assert result.budget == {1: 2, 2: 2, 3: 1}

    def test_shared_vertex_must_be_sink(self):
        wx = witnessed([(2, 1)], {1: 1, 2: 2})
        wy = witnessed([(2, 3)], {2: 2, 3: 1})
        with pytest.raises(PreconditionError):
            union_one_way(wx, wy, shared=[2])

    def test_cross_arcs_point_one_way(self):
        wx = witnessed([(1, 2)], {1: 2, 2: 1})
        wy = witnessed([(3, 4)], {3: 2, 4: 1})
        with pytest.raises(PreconditionError):
            union_one_way(wx, wy, cross_arcs=[(3, 1)])

    def test_diff_is_product_on_random_cuts(self):
        rng = random.Random(31)
        source_base = complete_graph(4)
        target_base = graph_of([(u + 4, v + 4) for u, v in complete_graph(5).sorted_edges])
        for _ in range(50):
            wx = random_witness(source_base, rng)
            wy = random_witness(target_base, rng)
            pairs = [(t, h) for t in sorted(wx.graph.vertices) for h in sorted(wy.graph.vertices)]
            cross = rng.sample(pairs, rng.randint(0, min(4, len(pairs))))
            result = union_one_way(wx, wy, cross_arcs=cross)
            assert result.diff_value == wx.diff_value * wy.diff_value
            assert diff_enum(result.witness).diff == wx.diff_value * wy.diff_value


def test_restrict_transitive_k4_to_triangle():
    arcs = [(u, v) for u in range(1, 5) for v in range(u + 1, 5)]
    w = witnessed(arcs, {1: 4, 2: 3, 3: 2, 4: 1})
    result = restrict_witness(w, complete_graph(3))
    assert result.graph == complete_graph(3)
    assert result.budget == {1: 3, 2: 2, 3: 1}


def test_restrict_needs_subgraph():
    w = witnessed([(1, 2)], {1: 2, 2: 1})
    with pytest.raises(PreconditionError):
        restrict_witness(w, complete_graph(3))
