"""
Export Service Module
Reading and writing JSON files (``-`` for standard streams) and Graphviz DOT rendering.
"""

import logging
import sys
from pathlib import Path
from typing import Mapping, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel

from ..exceptions import InvalidInputError
from ..graph.plane_graph import PlaneGraph, normalize_edge
from ..schemas import Certificate, GraphFile, dump_json

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

STDIO = "-"


class ExportService:
    """File and stream I/O for every wire model, plus DOT export."""

    def read_text(self, path: str) -> str:
        if path == STDIO:
            return sys.stdin.read()
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidInputError(f"Cannot read {path}: {exc}") from exc

    def write_text(self, text: str, path: Optional[str] = None) -> None:
        if path is None or path == STDIO:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InvalidInputError(f"Cannot write {path}: {exc}") from exc
        logger.info(f"Wrote {path}")

    def load_model(self, path: str, model: Type[ModelT]) -> ModelT:
        """Parse ``path`` as ``model``; pydantic ``ValidationError`` propagates."""
        return model.model_validate_json(self.read_text(path))

    def save_model(self, model: BaseModel, path: Optional[str] = None) -> None:
        self.write_text(dump_json(model), path)

    def load_graph(self, path: str) -> Tuple[PlaneGraph, GraphFile]:
        graph_file = self.load_model(path, GraphFile)
        return graph_file.to_plane_graph(), graph_file

    def load_certificate(self, path: str) -> Certificate:
        return self.load_model(path, Certificate)

    def graph_to_dot(self, g: PlaneGraph, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in sorted(g.vertices):
            style = ' [style=bold]' if v in g.outer_face else ""
            lines.append(f"  {v}{style};")
        for u, v in sorted(g.edges):
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def certificate_to_dot(self, c: Certificate, g: PlaneGraph, budget: Optional[Mapping[int, int]] = None) -> str:
        """
        Directed rendering of a certificate: arcs as drawn, matching edges dashed and
        undirected, outer vertices labelled with their budget.
        """
        budget = budget if budget is not None else c.budget
        outer = set(g.outer_face)
        lines = [f"digraph {c.kind} {{"]
        for v in sorted(g.vertices):
            if v in outer:
                lines.append(f'  {v} [label="{v}\\nf={budget.get(v, "?")}", shape=box];')
            else:
                lines.append(f"  {v};")
        for t, h in sorted(c.arcs):
            lines.append(f"  {t} -> {h};")
        for u, v in sorted(normalize_edge(a, b) for a, b in c.matching):
            lines.append(f"  {u} -> {v} [dir=none, style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# Global instance for reuse across modules
export_service = None


def get_export_service() -> ExportService:
    """
    Get or create a global export service instance.

    Returns:
        ExportService instance
    """
    global export_service
    if export_service is None:
        export_service = ExportService()
    return export_service
