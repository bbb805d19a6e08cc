"""
Schemas Module
Pydantic models for every JSON file the toolkit reads or writes.
"""

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .graph.plane_graph import PlaneGraph

CertificateKind = Literal["AT5", "AT4M"]

# Long-form kind names accepted on input
KIND_ALIASES = {"AT4-with-matching": "AT4M"}


def graph_digest(g: PlaneGraph) -> str:
    """SHA-256 of the canonical compact JSON of the embedding (metadata excluded)."""
    payload = {
        "rotations": [[v, list(g.rotation[v])] for v in sorted(g.rotation)],
        "outer_face": list(g.outer_face),
    }
    text = json.dumps(payload, separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class GraphFile(BaseModel):
    """A plane graph on disk: vertex list, rotation system and outer face walk."""

    vertices: List[int]
    rotations: Dict[int, List[int]]
    outer_face: List[int]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _vertices_match_rotations(self) -> "GraphFile":
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertices lists a vertex twice")
        if set(self.vertices) != set(self.rotations):
            missing = sorted(set(self.vertices) ^ set(self.rotations))
            raise ValueError(f"vertices and rotations disagree on {missing}")
        return self

    @classmethod
    def from_plane_graph(cls, g: PlaneGraph, metadata: Optional[Dict[str, Any]] = None) -> "GraphFile":
        return cls(
            vertices=sorted(g.rotation),
            rotations={v: list(g.rotation[v]) for v in sorted(g.rotation)},
            outer_face=list(g.outer_face),
            metadata=metadata or {},
        )

    def to_plane_graph(self) -> PlaneGraph:
        return PlaneGraph(self.rotations, self.outer_face)


class OrientationFile(BaseModel):
    arcs: List[Tuple[int, int]]


class EulerianCountFile(BaseModel):
    even: int
    odd: int
    diff: int


class TraceStep(BaseModel):
    """One record of the induction replay trace; payload fields depend on ``step``."""

    model_config = ConfigDict(extra="allow")

    step: str


class Certificate(BaseModel):
    """
    A checkable claim that ``g`` (or ``g - M``) is AT under the budget stored here.

    The verifier recomputes the budget from the graph, ``kind``, ``e1`` and the
    matching; the stored budget and the trace are informational. ``graph`` optionally
    embeds the input so a certificate can be checked on its own.
    """

    kind: CertificateKind
    graph_sha256: str
    e1: Tuple[int, int]
    arcs: List[Tuple[int, int]]
    budget: Dict[int, int]
    matching: List[Tuple[int, int]] = Field(default_factory=list)
    diff: int
    trace: List[TraceStep] = Field(default_factory=list)
    graph: Optional[GraphFile] = None

    @field_validator("kind", mode="before")
    @classmethod
    def _canonical_kind(cls, value: Any) -> Any:
        return KIND_ALIASES.get(value, value) if isinstance(value, str) else value

    @field_validator("arcs", "matching")
    @classmethod
    def _sorted_pairs(cls, value: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        return sorted(value)

    @field_validator("budget")
    @classmethod
    def _sorted_budget(cls, value: Dict[int, int]) -> Dict[int, int]:
        return {v: value[v] for v in sorted(value)}


class Verdict(BaseModel):
    """Result of checking a certificate; ``clauses`` maps each check to pass/fail."""

    ok: bool
    kind: Optional[str] = None
    clauses: Dict[str, bool]
    failures: List[str] = Field(default_factory=list)
    diff: Optional[int] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class ChoosabilityReport(BaseModel):
    """Outcome of sampling list assignments against a degree budget."""

    ok: bool
    samples: int
    seed: int
    universe: int
    counterexample: Optional[Dict[int, List[int]]] = None
    reason: Optional[str] = None


def dump_json(model: BaseModel) -> str:
    """Canonical pretty JSON with a trailing newline."""
    return model.model_dump_json(indent=2) + "\n"
