"""Structured basis reports and polyline export.

Reports are JSON documents; the field layout is described in docs/schema.md.
Serialization is deterministic (fixed key order, ``repr`` floats), so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .build import AugmentedComplex
from .complex import BasisResult, SimplicialComplex2

SCHEMA = "shortloop.report/1"


def loop_entry(complex: SimplicialComplex2, loop) -> dict[str, Any]:
    lab = complex.labels
    edges = [complex.edges[i] for i in loop.edge_ordinals()]
    entry = {
        "length": loop.length,
        "traversal": [lab[v] for v in loop.traversal],
        "edges": [[lab[e.u], lab[e.v]] for e in edges],
        "root": None if loop.root is None else lab[loop.root],
        "defining_edge": None,
    }
    if loop.edge is not None:
        e = complex.edges[loop.edge]
        entry["defining_edge"] = [lab[e.u], lab[e.v]]
    return entry


def build_report(
    command: str,
    complex: SimplicialComplex2,
    basis: BasisResult,
    config: dict[str, Any],
    augmented: AugmentedComplex | None = None,
    points: np.ndarray | None = None,
) -> dict[str, Any]:
    stats: dict[str, Any] = {
        "n_vertices": complex.n_vertices,
        "n_edges": complex.n_edges,
        "n_triangles": complex.n_triangles,
    }
    if augmented is not None:
        stats["small_edge_count"] = augmented.small_edge_count
        stats["sentinel_weight"] = augmented.sentinel
    report: dict[str, Any] = {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "stats": stats,
        "rank": basis.rank,
        "total_length": basis.total_length,
        "loops": [loop_entry(complex, g) for g in basis.loops],
    }
    if points is not None:
        report["points"] = [[float(x) for x in row] for row in np.asarray(points)]
    return report


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def loads(text: str) -> dict[str, Any]:
    report = json.loads(text)
    if report.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {report.get('schema')!r}")
    return report


def to_obj(report: dict[str, Any]) -> str:
    """Vertices as ``v x y z`` and each loop as a closed ``l`` polyline (1-based)."""
    points = report.get("points")
    if points is None:
        raise ValueError("report has no point coordinates; export needs a point-mode report")
    lines = []
    for p in points:
        xyz = (list(p) + [0.0, 0.0, 0.0])[:3]
        lines.append("v " + " ".join(repr(float(x)) for x in xyz))
    for loop in report["loops"]:
        idx = [v + 1 for v in loop["traversal"]]
        if idx:
            lines.append("l " + " ".join(str(i) for i in idx + idx[:1]))
    return "\n".join(lines) + "\n"
