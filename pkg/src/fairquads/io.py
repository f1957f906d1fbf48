"""JSON file formats for matrices and quadruple systems.

Matrix:       {"k": int, "rows": int, "cols": int, "entries": [int, ...]}   (row-major)
Quad system:  {"n": int, "m": int, "quads": [[i, j, p, q], ...]}          (sorted)

Output is written with sorted keys and a trailing newline so identical objects
give byte-identical files.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from fairquads.errors import FairquadsError
from fairquads.zk import QuadSystem, ZkMatrix

SCHEMA_VERSION = 1


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def matrix_to_dict(M: ZkMatrix) -> dict:
    return {"k": M.k, "rows": M.n_rows, "cols": M.n_cols, "entries": list(M.entries)}


def matrix_from_dict(d: dict) -> ZkMatrix:
    try:
        return ZkMatrix(int(d["k"]), int(d["rows"]), int(d["cols"]), tuple(d["entries"]))
    except (KeyError, TypeError) as exc:
        raise FairquadsError(f"malformed matrix JSON: {exc}") from exc


def quads_to_dict(Q: QuadSystem) -> dict:
    return {"n": Q.n, "m": Q.m, "quads": [list(q) for q in Q.quads]}


def quads_from_dict(d: dict) -> QuadSystem:
    try:
        quads = [tuple(q) for q in d["quads"]]
        if any(len(q) != 4 for q in quads):
            raise FairquadsError("each quad needs 4 indices")
        return QuadSystem(int(d["n"]), int(d["m"]), tuple(quads))
    except (KeyError, TypeError) as exc:
        raise FairquadsError(f"malformed quad system JSON: {exc}") from exc


def write_json(path, obj) -> None:
    """Atomic write via a sibling temp file."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps(obj))
    os.replace(tmp, path)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FairquadsError(f"{path}: not valid JSON ({exc})") from exc


def load_matrix(path) -> ZkMatrix:
    return matrix_from_dict(read_json(path))


def load_quads(path) -> QuadSystem:
    return quads_from_dict(read_json(path))
