import pytest

from atcert.exceptions import InvalidInputError
from atcert.graph.generators import corpus, cycle, fan, generate, named, stacked_triangulation, wheel
from atcert.graph.plane_graph import is_near_triangulation


def test_corpus_size_and_labels():
    graphs = corpus()
    labels = [label for label, _ in graphs]
    assert len(graphs) >= 40
    assert len(labels) == len(set(labels))


@pytest.mark.parametrize(
    "name, vertices, edges",
    [
        ("tetrahedron", 4, 6),
        ("octahedron", 6, 12),
        ("icosahedron", 12, 30),
        ("cube", 8, 12),
    ],
)
def test_named_graph_sizes(name, vertices, edges):
    g = named(name)
    assert len(g.vertices) == vertices
    assert len(g.edges) == edges


@pytest.mark.parametrize("n", [4, 6, 9])
def test_parametric_sizes(n):
    assert len(wheel(n).edges) == 2 * n
    assert len(fan(n).edges) == 2 * n - 3
    assert len(cycle(n).edges) == n


@pytest.mark.parametrize("seed", [1, 2, 7])
def test_stacked_triangulation_is_maximal_planar(seed):
    g = stacked_triangulation(12, seed)
    assert len(g.vertices) == 12
    assert len(g.edges) == 3 * 12 - 6
    assert is_near_triangulation(g)


def test_stacked_triangulation_is_deterministic():
    assert stacked_triangulation(10, 5) == stacked_triangulation(10, 5)


def test_generate_dispatch():
    assert generate("wheel", n=5) == wheel(5)
    assert generate("named", name="cube") == named("cube")
    assert generate("stacked", n=8, seed=3) == stacked_triangulation(8, 3)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "hypercube", "n": 4},
        {"kind": "cycle", "n": 2},
        {"kind": "wheel"},
        {"kind": "named", "name": "dodecahedron"},
    ],
)
def test_generate_rejects_bad_arguments(kwargs):
    with pytest.raises(InvalidInputError):
        generate(**kwargs)
