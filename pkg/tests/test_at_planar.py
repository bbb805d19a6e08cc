import pytest

from atcert.certify.at_core import Orientation
from atcert.certify.at_planar import (
    AT4M,
    AT5,
    BoundaryBudget,
    GadgetRecord,
    InductionRun,
    Matching,
    at4_matching_certificate,
    at5_certificate,
    budget_check,
    build_certificate,
    case2_gadget_build,
    certificate_budget,
    prepare,
    thm_main_at,
    thm_main_matching,
)
from atcert.certify.coloring import sampled_choosability_check
from atcert.certify.verify import check_certificate
from atcert.certify.witness_ops import WitnessedGraph
from atcert.exceptions import InvalidInputError, PreconditionError
from atcert.graph.generators import cycle, fan, named, stacked_triangulation, wheel
from atcert.graph.plane_graph import PlaneGraph, boundary, delete_boundary_vertex
from atcert.schemas import dump_json

from conftest import CORPUS, corpus_certificate, out_degrees


def path3() -> PlaneGraph:
    return PlaneGraph({1: [2], 2: [1, 3], 3: [2]}, [1, 2, 3, 2])


class TestMatching:
    def test_rejects_shared_vertex(self):
        with pytest.raises(InvalidInputError):
            Matching([(1, 2), (2, 3)])

    def test_updates(self):
        m = Matching([(2, 1)])
        assert (1, 2) in m
        assert m.covers(1) == 1 and m.covers(3) == 0
        assert m.add((4, 3)).sorted_edges == [(1, 2), (3, 4)]
        assert len(m.add((3, 4)).without((1, 2))) == 1
        assert m.union(Matching([(5, 6)])).restricted_to([(5, 6)]) == Matching([(5, 6)])


class TestBoundaryBudget:
    def test_plain(self):
        g = wheel(5)
        f = BoundaryBudget(g, boundary(g))
        assert f == {1: 1, 2: 1, 3: 3, 4: 3, 5: 3, 6: 5}

    def test_with_matching(self):
        g = wheel(5)
        f = BoundaryBudget(g, boundary(g), Matching([(1, 2), (3, 4)]))
        assert f == {1: 1, 2: 1, 3: 2, 4: 2, 5: 3, 6: 4}


class TestBaseCase:
    def test_triangle(self, triangle):
        w = thm_main_at(triangle, (1, 2))
        assert w.witness.arcs == frozenset({(3, 1), (3, 2)})
        assert w.budget == {1: 1, 2: 1, 3: 3}
        assert w.diff_value == 1

    def test_triangle_matching(self, triangle):
        m, w = thm_main_matching(triangle, (1, 2))
        assert m == Matching([(1, 2)])
        assert w.budget == {1: 1, 2: 1, 3: 3}

    def test_needs_near_triangulation(self):
        with pytest.raises(PreconditionError):
            thm_main_at(cycle(4), (1, 2))


class TestGadget:
    def test_peel_record_of_wheel(self):
        g = wheel(4)
        b = boundary(g)
        reduced, peel = InductionRun()._peel_record(g, b)
        assert reduced == delete_boundary_vertex(g, 4)[0]
        assert peel == GadgetRecord(4, 1, 3, (5,), (6,))
        assert peel.arcs == ((5, 4), (5, 6), (6, 4), (4, 3), (4, 1))

    def test_gadget_keeps_diff(self):
        g = wheel(4)
        b = boundary(g)
        reduced, peel = InductionRun()._peel_record(g, b)
        w1 = thm_main_at(reduced, b.e1)
        trace = []
        extended = case2_gadget_build(w1, peel, trace)
        assert extended.diff_value == w1.diff_value
        assert all(extended.budget[v] == extended.out_degree(v) + 1 for v in extended.graph.vertices)
        assert trace[0]["step"] == "gadget"

    def test_empty_gadget(self, triangle):
        w = thm_main_at(triangle, (1, 2))
        extended = case2_gadget_build(w, GadgetRecord(4, 1, 3, (), ()))
        assert extended.witness.arcs == frozenset({(3, 1), (3, 2), (4, 3), (4, 1)})
        assert extended.budget == {1: 1, 2: 1, 3: 3, 4: 3}

    def test_gadget_vertices_must_be_fresh(self, triangle):
        w = thm_main_at(triangle, (1, 2))
        with pytest.raises(PreconditionError):
            case2_gadget_build(w, GadgetRecord(3, 1, 2, (), ()))


def test_budget_check_reports_offenders():
    d = Orientation.from_arcs([(1, 2), (1, 3)])
    w = WitnessedGraph(d.base, {1: 3, 2: 1, 3: 1}, d)
    assert budget_check(w, {1: 3, 2: 1, 3: 1})
    check = budget_check(w, {1: 2, 2: 1, 3: 1})
    assert not check
    assert check.offending == (1,)


class TestInduction:
    @pytest.mark.parametrize("g", [named("tetrahedron"), named("octahedron"), wheel(6), fan(6)], ids=["K4", "octahedron", "W6", "F6"])
    def test_endpoints_of_e1_are_sinks(self, g):
        prepared = prepare(g)
        w = thm_main_at(prepared.triangulation, prepared.e1)
        v1, v2 = prepared.e1
        assert w.out_degree(v1) == 0
        assert w.out_degree(v2) == 0
        assert w.budget == BoundaryBudget(prepared.triangulation, boundary(prepared.triangulation, prepared.e1))

    @pytest.mark.parametrize("g", [named("octahedron"), wheel(7), stacked_triangulation(9, 7)], ids=["octahedron", "W7", "stacked-9"])
    def test_matching_budget(self, g):
        prepared = prepare(g)
        run = InductionRun()
        m, w = thm_main_matching(prepared.triangulation, prepared.e1, run)
        b = boundary(prepared.triangulation, prepared.e1)
        assert prepared.e1 in m
        for v in b.vertices[2:]:
            assert w.out_degree(v) <= 2 - m.covers(v)
        assert run.stats.vn_reductions <= run.stats.peels
        assert run.stats.matching_extensions <= run.stats.vn_reductions

    def test_chord_split_is_traced(self):
        run = InductionRun()
        thm_main_at(fan(5), (1, 2), run)
        assert run.stats.chord_splits >= 1
        assert "one-way-union" in [r["step"] for r in run.trace]


class TestPrepare:
    def test_two_connected_keeps_outer_face(self):
        g = named("cube")
        prepared = prepare(g)
        assert prepared.two_connected
        assert prepared.triangulation.outer_face == g.outer_face
        assert prepared.e1 == boundary(g).e1

    def test_path_is_fully_triangulated(self):
        prepared = prepare(path3())
        assert not prepared.two_connected
        assert prepared.e1 == (1, 2)
        assert len(prepared.triangulation.edges) == 3


@pytest.mark.slow
@pytest.mark.parametrize("label", sorted(CORPUS))
def test_at5_certificates_verify(label):
    c = corpus_certificate(label, AT5)
    verdict = check_certificate(c, CORPUS[label])
    assert verdict.ok, verdict.failures
    assert max(out_degrees(c).values()) <= 4
    assert c.diff != 0


@pytest.mark.slow
@pytest.mark.parametrize("label", sorted(CORPUS))
def test_at4m_certificates_verify(label):
    g = CORPUS[label]
    c = corpus_certificate(label, AT4M)
    verdict = check_certificate(c, g)
    assert verdict.ok, verdict.failures
    assert max(out_degrees(c).values()) <= 3
    assert tuple(c.e1) in c.matching
    assert set(c.matching) <= g.edges
    assert len(c.arcs) == len(g.edges) - len(c.matching)


@pytest.mark.parametrize("g", [path3(), cycle(5)], ids=["path", "C5"])
@pytest.mark.parametrize("kind", [AT5, AT4M])
def test_small_inputs(g, kind):
    c = build_certificate(g, kind)
    assert check_certificate(c, g).ok


def test_unknown_kind():
    with pytest.raises(InvalidInputError):
        build_certificate(cycle(3), "AT3")


def test_certificate_budget_of_path_is_constant():
    assert certificate_budget(path3(), AT5, (1, 2), None) == {1: 5, 2: 5, 3: 5}
    assert certificate_budget(path3(), AT4M, (1, 2), Matching([(1, 2)])) == {1: 4, 2: 4, 3: 4}


def test_trace_ends_with_final_step():
    c = at5_certificate(wheel(5))
    assert c.trace[-1].step == "final"
    assert c.trace[0].step in ("base", "peel", "chord-split")


@pytest.mark.parametrize("label", ["tetrahedron", "octahedron", "wheel-5", "fan-6"])
def test_certified_budgets_are_choosable(label):
    g = CORPUS[label]
    c = at4_matching_certificate(g)
    matching = Matching(c.matching)
    budget = certificate_budget(g, AT4M, c.e1, matching)
    report = sampled_choosability_check(g.graph.remove_edges(matching.edges), budget, samples=50, seed=3)
    assert report.ok


@pytest.mark.slow
@pytest.mark.parametrize("label", sorted(label for label, g in CORPUS.items() if len(g.vertices) <= 16))
@pytest.mark.parametrize("kind", [AT5, AT4M])
def test_every_certified_budget_is_choosable(label, kind):
    g = CORPUS[label]
    c = corpus_certificate(label, kind)
    matching = Matching(c.matching) if kind == AT4M else None
    budget = certificate_budget(g, kind, c.e1, matching)
    target = g.graph.remove_edges(matching.edges) if matching is not None else g.graph
    report = sampled_choosability_check(target, budget, samples=200, seed=9)
    assert report.ok, report.reason


@pytest.mark.parametrize("kind", [AT5, AT4M])
@pytest.mark.parametrize("g", [stacked_triangulation(12, 5), named("icosahedron"), cycle(7)], ids=["stacked", "icosahedron", "C7"])
def test_certificates_are_deterministic(g, kind):
    assert dump_json(build_certificate(g, kind)) == dump_json(build_certificate(g, kind))


@pytest.mark.parametrize("label", ["octahedron", "icosahedron", "fan-7", "stacked-12-s2", "cycle-6"])
def test_trace_sizes_strictly_decrease(label):
    for kind in (AT5, AT4M):
        sized = [step for step in corpus_certificate(label, kind).trace if getattr(step, "sizes", None)]
        assert sized
        for step in sized:
            whole, *parts = step.sizes
            assert parts and all(part < whole for part in parts)
