import json

import pytest
from pydantic import ValidationError

from atcert.certify.at_planar import AT4M
from atcert.graph.generators import wheel
from atcert.schemas import Certificate, GraphFile, dump_json

from conftest import corpus_certificate

TRIANGLE = {
    "vertices": [1, 2, 3],
    "rotations": {"1": [2, 3], "2": [3, 1], "3": [1, 2]},
    "outer_face": [1, 3, 2],
}


class TestGraphFile:
    def test_reads_documented_format(self):
        g = GraphFile.model_validate_json(json.dumps(TRIANGLE)).to_plane_graph()
        assert g.vertices == frozenset({1, 2, 3})
        assert len(g.edges) == 3

    def test_isolated_vertex_listed_in_both(self):
        data = {"vertices": [4], "rotations": {"4": []}, "outer_face": [4]}
        g = GraphFile.model_validate(data).to_plane_graph()
        assert g.vertices == frozenset({4})

    @pytest.mark.parametrize(
        "vertices",
        [[1, 2], [1, 2, 3, 4], [1, 2, 3, 3]],
        ids=["missing", "extra", "repeated"],
    )
    def test_vertices_must_match_rotations(self, vertices):
        with pytest.raises(ValidationError):
            GraphFile.model_validate({**TRIANGLE, "vertices": vertices})

    def test_written_keys(self):
        data = json.loads(dump_json(GraphFile.from_plane_graph(wheel(4))))
        assert list(data) == ["vertices", "rotations", "outer_face", "metadata"]
        assert data["vertices"] == [1, 2, 3, 4, 5]


class TestCertificateKind:
    def test_long_form_name(self):
        data = corpus_certificate("wheel-5", AT4M).model_dump()
        data["kind"] = "AT4-with-matching"
        assert Certificate.model_validate(data).kind == AT4M

    def test_unknown_kind(self):
        data = corpus_certificate("wheel-5", AT4M).model_dump()
        data["kind"] = "AT3"
        with pytest.raises(ValidationError):
            Certificate.model_validate(data)
