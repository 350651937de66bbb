"""Command-line interface.

Every subcommand reads JSON documents (a file path or ``-`` for stdin),
writes one canonical JSON document to stdout, and is byte-deterministic:
the same inputs always produce the same bytes.  Exit codes: 0 success,
1 negative decision under ``--exit-status``, 2 malformed input or failed
precondition, 3 internal search or enumeration limit.  Data errors are
reported as ``{"error": {"code": ..., "message": ...}}`` on stdout.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from . import io
from .contraction import contract, final_set, recover_all_orders, recover_sequence
from .equivalence import (
    canonical_form,
    automorphism_orbits,
    forest_isomorphic,
    marked_forest_equivalent,
    marked_tensor_equivalent,
    partition_compatible_morphism,
    partition_compatible_sequence,
    tensor_equivalent,
)
from .errors import NotContractibleError, SchemaError, SearchLimitError
from .forest import random_forest, validate_forest
from .tensor import diagonal, quotient_tensor, tensor_from_forest

__all__ = ["main", "build_parser"]

DEFAULT_ORDER_LIMIT = 1000


def _load_forest(path: str, require_valid: bool = True):
    forest = io.forest_from_dict(io.load_document(path))
    if require_valid:
        report = validate_forest(forest)
        if not report.ok:
            detail = "; ".join(v.message for v in report.violations)
            raise ValueError(f"{path}: invalid forest: {detail}")
    return forest


def _load_tensor(path: str):
    return io.tensor_from_dict(io.load_document(path))


def _load_partition(path: str):
    return io.partition_from_dict(io.load_document(path))


def _cmd_tensor(args) -> tuple[dict, bool | None]:
    return io.tensor_to_dict(tensor_from_forest(_load_forest(args.forest))), None


def _cmd_finals(args) -> tuple[dict, bool | None]:
    return {"finals": sorted(final_set(_load_tensor(args.tensor)))}, None


def _cmd_contract(args) -> tuple[dict, bool | None]:
    contracted, _ = contract(_load_tensor(args.tensor), args.index)
    return io.tensor_to_dict(contracted), None


def _cmd_recover(args) -> tuple[dict, bool | None]:
    forest, trace = recover_sequence(_load_tensor(args.tensor))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as handle:
            handle.write(io.canonical_json(io.trace_to_dict(trace)) + "\n")
    return io.forest_to_dict(forest), None


def _cmd_recover_all(args) -> tuple[dict, bool | None]:
    results = recover_all_orders(_load_tensor(args.tensor), args.limit)
    return {
        "count": len(results),
        "results": [
            {"forest": io.forest_to_dict(forest), "trace": io.trace_to_dict(trace)}
            for forest, trace in results
        ],
    }, None


def _cmd_equiv(args) -> tuple[dict, bool | None]:
    files = args.files
    if len(files) not in (2, 4):
        raise ValueError("equiv expects two inputs, or two inputs plus two partitions")
    if args.kind == "forest":
        a = _load_forest(files[0])
        b = _load_forest(files[1])
        if len(files) == 2:
            witness = forest_isomorphic(a, b)
        else:
            witness = marked_forest_equivalent(a, _load_partition(files[2]), b, _load_partition(files[3]))
    else:
        a = _load_tensor(files[0])
        b = _load_tensor(files[1])
        if len(files) == 2:
            witness = tensor_equivalent(a, b)
        else:
            witness = marked_tensor_equivalent(a, _load_partition(files[2]), b, _load_partition(files[3]))
    return io.witness_to_dict(witness), witness is not None


def _cmd_canon(args) -> tuple[dict, bool | None]:
    if args.kind == "forest":
        obj = _load_forest(args.input)
        form = canonical_form(obj)
        payload = io.forest_to_dict(form.relabeled)
    else:
        obj = _load_tensor(args.input)
        form = canonical_form(obj)
        payload = io.tensor_to_dict(form.relabeled)
    return {
        "kind": args.kind,
        "hash": form.hash,
        "permutation": list(form.relabeling),
        "canonical": payload,
    }, None


def _cmd_orbits(args) -> tuple[dict, bool | None]:
    obj = _load_forest(args.input) if args.kind == "forest" else _load_tensor(args.input)
    return {"orbits": [list(orbit) for orbit in automorphism_orbits(obj)]}, None


def _cmd_compat(args) -> tuple[dict, bool | None]:
    partition = _load_partition(args.partition)
    if args.kind == "forest":
        compatible = partition_compatible_sequence(_load_forest(args.input), partition)
    else:
        compatible = partition_compatible_morphism(_load_tensor(args.input), partition)
    return {"compatible": compatible}, compatible


def _cmd_quotient(args) -> tuple[dict, bool | None]:
    quotient = quotient_tensor(_load_tensor(args.tensor), _load_partition(args.partition))
    return io.tensor_to_dict(quotient), None


def _cmd_diag(args) -> tuple[dict, bool | None]:
    return {"diagonal": diagonal(_load_tensor(args.tensor))}, None


def _cmd_validate(args) -> tuple[dict, bool | None]:
    forest = _load_forest(args.forest, require_valid=False)
    report = validate_forest(forest, strict=args.strict)
    return io.report_to_dict(report), report.ok


def _cmd_gen(args) -> tuple[dict, bool | None]:
    forest = random_forest(args.seed, args.dim, args.points, args.max_degree)
    return io.forest_to_dict(forest), None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowups",
        description="Intersection tensors of blow-up sequences: compute, contract, recover, compare.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("tensor", _cmd_tensor, "intersection tensor of a forest")
    p.add_argument("forest")

    p = add("finals", _cmd_finals, "indices of final components")
    p.add_argument("tensor")

    p = add("contract", _cmd_contract, "blow down one final component")
    p.add_argument("tensor")
    p.add_argument("index", type=int)

    p = add("recover", _cmd_recover, "recover the blow-up sequence of a tensor")
    p.add_argument("tensor")
    p.add_argument("--trace", metavar="PATH", help="also write the contraction trace to PATH")

    p = add("recover-all", _cmd_recover_all, "recover along every contraction order")
    p.add_argument("tensor")
    p.add_argument("--limit", type=int, default=DEFAULT_ORDER_LIMIT, metavar="N")

    p = add("equiv", _cmd_equiv, "decide equivalence (optionally marked)")
    p.add_argument("--kind", choices=("forest", "tensor"), required=True)
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--exit-status", action="store_true", dest="exit_status")

    p = add("canon", _cmd_canon, "canonical form and hash")
    p.add_argument("--kind", choices=("forest", "tensor"), required=True)
    p.add_argument("input")

    p = add("orbits", _cmd_orbits, "automorphism orbits")
    p.add_argument("--kind", choices=("forest", "tensor"), default="tensor")
    p.add_argument("input")

    p = add("compat", _cmd_compat, "is a partition compatible?")
    p.add_argument("--kind", choices=("forest", "tensor"), required=True)
    p.add_argument("input")
    p.add_argument("partition")
    p.add_argument("--exit-status", action="store_true", dest="exit_status")

    p = add("quotient", _cmd_quotient, "form induced on the blocks of a partition")
    p.add_argument("tensor")
    p.add_argument("partition")

    p = add("diag", _cmd_diag, "diagonal of a tensor")
    p.add_argument("tensor")

    p = add("validate", _cmd_validate, "validate a forest")
    p.add_argument("forest")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--exit-status", action="store_true", dest="exit_status")

    p = add("gen", _cmd_gen, "generate a pseudo-random forest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=3)

    return parser


def _emit(payload: Any) -> None:
    sys.stdout.write(io.canonical_json(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, decision = args.handler(args)
    except SchemaError as exc:
        _emit({"error": {"code": "schema", "message": str(exc)}})
        return 2
    except NotContractibleError as exc:
        _emit({"error": {"code": "not-contractible", "message": str(exc)}})
        return 2
    except SearchLimitError as exc:
        _emit({"error": {"code": "limit", "message": str(exc)}})
        return 3
    except (ValueError, IndexError) as exc:
        _emit({"error": {"code": "invalid-input", "message": str(exc)}})
        return 2
    except OSError as exc:
        _emit({"error": {"code": "io", "message": str(exc)}})
        return 2
    _emit(payload)
    if decision is False and getattr(args, "exit_status", False):
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
