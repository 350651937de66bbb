"""JSON file formats and canonical serialization.

All documents are plain JSON with exact integers and no floats.  Parsing
is strict: unknown fields, wrong types (including booleans where integers
are expected), out-of-order ids, unsorted or duplicate tensor indices,
explicit zero entries, and integers outside the signed 64-bit range are
all rejected with :class:`SchemaError`.  The 64-bit bound exists purely to
catch corrupted files; in-memory arithmetic is arbitrary precision.

``canonical_json`` fixes the byte-level encoding used everywhere output
must be deterministic: UTF-8, keys sorted, separators ``","`` and ``":"``,
no whitespace.
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .contraction import ContractionStep, ContractionTrace
from .errors import SchemaError
from .forest import MarkedPartition, Point, ProximityForest, ValidationReport
from .tensor import IntersectionTensor

__all__ = [
    "canonical_json",
    "load_document",
    "forest_to_dict",
    "forest_from_dict",
    "partition_to_dict",
    "partition_from_dict",
    "tensor_to_dict",
    "tensor_from_dict",
    "trace_to_dict",
    "trace_from_dict",
    "report_to_dict",
    "witness_to_dict",
]

INT64_MAX = 2**63 - 1


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def load_document(path: str) -> Any:
    """Parse a JSON document from a file path, or stdin for ``-``."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON: {exc}") from exc


def _require_object(obj: Any, keys: set[str], what: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    unknown = set(obj) - keys
    if unknown:
        raise SchemaError(f"{what} has unknown fields: {sorted(unknown)}")
    missing = keys - set(obj)
    if missing:
        raise SchemaError(f"{what} is missing fields: {sorted(missing)}")
    return obj


def _require_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer")
    if not -INT64_MAX <= value <= INT64_MAX:
        raise SchemaError(f"{what} outside 64-bit range")
    return value


def _require_list(value: Any, what: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{what} must be an array")
    return value


def forest_to_dict(forest: ProximityForest) -> dict:
    return {
        "dimension": forest.dimension,
        "points": [
            {"id": i, "degree": p.degree, "proximate_to": sorted(p.proximate_to)}
            for i, p in enumerate(forest.points, 1)
        ],
    }


def forest_from_dict(obj: Any) -> ProximityForest:
    _require_object(obj, {"dimension", "points"}, "forest")
    dimension = _require_int(obj["dimension"], "dimension")
    points = []
    for pos, raw in enumerate(_require_list(obj["points"], "points"), 1):
        _require_object(raw, {"id", "degree", "proximate_to"}, f"point {pos}")
        if _require_int(raw["id"], f"point {pos} id") != pos:
            raise SchemaError(f"point ids must be 1..m in order, got {raw['id']} at position {pos}")
        degree = _require_int(raw["degree"], f"point {pos} degree")
        targets = []
        for j in _require_list(raw["proximate_to"], f"point {pos} proximate_to"):
            j = _require_int(j, f"point {pos} proximity target")
            if not 1 <= j < pos:
                raise SchemaError(f"point {pos} proximate to {j}, targets must lie in 1..{pos - 1}")
            targets.append(j)
        if len(set(targets)) != len(targets):
            raise SchemaError(f"point {pos} has duplicate proximity targets")
        points.append(Point(degree, frozenset(targets)))
    return ProximityForest(dimension, tuple(points))


def partition_to_dict(partition: MarkedPartition) -> dict:
    return {"blocks": [sorted(block) for block in partition.blocks]}


def partition_from_dict(obj: Any) -> MarkedPartition:
    _require_object(obj, {"blocks"}, "partition")
    blocks = []
    seen: set[int] = set()
    for pos, raw in enumerate(_require_list(obj["blocks"], "blocks"), 1):
        block = []
        for i in _require_list(raw, f"block {pos}"):
            i = _require_int(i, f"block {pos} member")
            if i < 1:
                raise SchemaError(f"block {pos} member {i} must be >= 1")
            block.append(i)
        if not block:
            raise SchemaError(f"block {pos} is empty")
        if len(set(block)) != len(block):
            raise SchemaError(f"block {pos} has duplicate members")
        if seen & set(block):
            raise SchemaError(f"block {pos} overlaps an earlier block")
        seen |= set(block)
        blocks.append(frozenset(block))
    return MarkedPartition(tuple(blocks))


def tensor_to_dict(tensor: IntersectionTensor) -> dict:
    return {
        "dimension": tensor.dimension,
        "size": tensor.size,
        "entries": [
            {"index": list(key), "value": value}
            for key, value in sorted(tensor.entries.items())
        ],
    }


def tensor_from_dict(obj: Any) -> IntersectionTensor:
    _require_object(obj, {"dimension", "size", "entries"}, "tensor")
    dimension = _require_int(obj["dimension"], "dimension")
    if dimension < 2:
        raise SchemaError(f"tensor dimension must be >= 2, got {dimension}")
    size = _require_int(obj["size"], "size")
    if size < 0:
        raise SchemaError(f"tensor size must be >= 0, got {size}")
    entries: dict[tuple[int, ...], int] = {}
    for pos, raw in enumerate(_require_list(obj["entries"], "entries"), 1):
        _require_object(raw, {"index", "value"}, f"entry {pos}")
        index = tuple(_require_int(i, f"entry {pos} index") for i in _require_list(raw["index"], f"entry {pos} index"))
        if len(index) != dimension:
            raise SchemaError(f"entry {pos} index must have length {dimension}")
        if any(not 1 <= i <= size for i in index):
            raise SchemaError(f"entry {pos} index out of range 1..{size}")
        if any(a > b for a, b in zip(index, index[1:])):
            raise SchemaError(f"entry {pos} index must be sorted nondecreasing")
        if index in entries:
            raise SchemaError(f"entry {pos} duplicates index {list(index)}")
        value = _require_int(raw["value"], f"entry {pos} value")
        if value == 0:
            raise SchemaError(f"entry {pos} has value 0; zero entries must be omitted")
        entries[index] = value
    return IntersectionTensor(dimension, size, entries)


def trace_to_dict(trace: ContractionTrace) -> dict:
    return {
        "steps": [
            {
                "contracted": step.contracted,
                "degree": step.degree,
                "proximate_to_current": list(step.proximate_to_current),
            }
            for step in trace.steps
        ],
        "index_maps": [list(alive) for alive in trace.index_maps],
    }


def trace_from_dict(obj: Any) -> ContractionTrace:
    _require_object(obj, {"steps", "index_maps"}, "trace")
    raw_steps = _require_list(obj["steps"], "steps")
    raw_maps = _require_list(obj["index_maps"], "index_maps")
    if len(raw_steps) != len(raw_maps):
        raise SchemaError("steps and index_maps must have equal length")
    steps = []
    maps = []
    size = len(raw_steps)
    for pos, (raw, alive) in enumerate(zip(raw_steps, raw_maps), 1):
        _require_object(raw, {"contracted", "degree", "proximate_to_current"}, f"step {pos}")
        stage = size - pos + 1
        contracted = _require_int(raw["contracted"], f"step {pos} contracted")
        if not 1 <= contracted <= stage:
            raise SchemaError(f"step {pos} contracts index {contracted}, stage has 1..{stage}")
        proximities = tuple(
            _require_int(j, f"step {pos} proximity") for j in _require_list(raw["proximate_to_current"], f"step {pos}")
        )
        renumber = {a: a if a < contracted else a - 1 for a in range(1, stage + 1) if a != contracted}
        steps.append(
            ContractionStep(
                contracted=contracted,
                degree=_require_int(raw["degree"], f"step {pos} degree"),
                proximate_to_current=proximities,
                index_map=tuple(renumber.get(a) for a in range(1, stage + 1)),
            )
        )
        survivors = tuple(_require_int(i, f"index map {pos}") for i in _require_list(alive, f"index map {pos}"))
        if len(survivors) != stage - 1:
            raise SchemaError(f"index map {pos} must list {stage - 1} survivors")
        maps.append(survivors)
    return ContractionTrace(tuple(steps), tuple(maps))


def report_to_dict(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"rule": v.rule, "indices": list(v.indices), "message": v.message}
            for v in report.violations
        ],
    }


def witness_to_dict(permutation: tuple[int, ...] | None) -> dict:
    if permutation is None:
        return {"equivalent": False}
    return {"equivalent": True, "permutation": list(permutation)}
