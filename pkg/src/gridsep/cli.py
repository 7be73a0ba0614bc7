"""Command-line interface.

Exit codes: 0 success, 1 domain failure (verification failed, empty
family, search budget), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from gridsep.construct import (
    BuildChoices,
    DefectKind,
    DefectLine,
    Infeasible,
    Side,
    build_exceptional,
    build_optimal,
    family_status,
    is_exceptional,
    max_value,
    verify_optimal,
)
from gridsep.disks import greedy_disk, layer_count, layer_size, min_weight
from gridsep.grid import (
    GridDims,
    InvalidPermutation,
    OddDimensions,
    Topology,
    decompose,
    dumps,
    loads,
    score,
)
from gridsep.render import ascii_grid, plot_grid, plot_layers, svg_grid
from gridsep.solver import AnnealSchedule, BudgetExceeded, anneal, bnb_max, exhaustive_max
from gridsep.structure import defects, structure_report
from gridsep.torus import torus_build, torus_g, torus_max_value, torus_verify


class UsageError(Exception):
    pass


def emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _dims(args) -> GridDims:
    try:
        return GridDims(args.n1, args.n2)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _even(dims: GridDims) -> GridDims:
    if not dims.even:
        raise UsageError(f"{dims}: grids with an odd side are an open problem")
    return dims


def _read_grid(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, InvalidPermutation) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _topology(args) -> Topology:
    return Topology.TORUS if args.torus else Topology.PLANAR


def cmd_max(args) -> int:
    dims = _even(_dims(args))
    if args.torus:
        emit({"exceptional": False, "max": torus_max_value(dims), "topology": "torus"})
    else:
        emit({"exceptional": is_exceptional(dims), "max": max_value(dims), "topology": "planar"})
    return 0


def _render(pi, topology, fmt) -> str:
    if fmt == "ascii":
        return ascii_grid(pi)
    if fmt == "svg":
        return svg_grid(pi).rstrip("\n")
    return dumps(pi, topology)


def cmd_construct(args) -> int:
    dims = _even(_dims(args))
    choices = BuildChoices(
        defect_line=DefectLine(args.line),
        heterogeneous_side=Side(args.side),
        defect_kind=DefectKind(args.defects),
        seed=None if args.canonical or args.seed is None else args.seed,
    )
    if args.torus:
        try:
            pi = torus_build(dims, BuildChoices(choices.defect_line, choices.heterogeneous_side,
                                                choices.defect_kind), offset=args.offset)
        except Infeasible as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        topology = Topology.TORUS
        assert torus_verify(pi)
    else:
        topology = Topology.PLANAR
        oriented = dims if dims.n1 <= dims.n2 else dims.transposed()
        if family_status(oriented).empty:
            if not args.exceptional:
                print(f"error: the optimal family on {dims} is empty; the maximum "
                      f"{max_value(dims)} is reached only outside it. "
                      "Rerun with --exceptional to search for it.", file=sys.stderr)
                return 1
            pi = build_exceptional(oriented, seed=args.seed or 0)
            if oriented != dims:
                pi = pi.transpose()
        else:
            try:
                pi = build_optimal(dims, choices)
            except Infeasible as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1
            assert verify_optimal(pi)
    print(_render(pi, topology, args.format))
    if args.figure:
        plot_grid(pi, args.figure, title=f"{dims} {topology.value}, f = {score(pi, topology)}")
    return 0


def _report(pi, topology) -> dict:
    dims = pi.dims
    dec = decompose(pi, topology)
    out = {
        "n1": dims.n1,
        "n2": dims.n2,
        "topology": topology.value,
        "f": score(pi, topology),
        "decomposition_sizes": {k: len(v) for k, v in dec.to_dict().items()},
        "g": None,
        "defects": None,
    }
    if not dims.even:
        return out
    if topology is Topology.TORUS:
        d = defects(pi, topology)
        out["g"] = torus_g(pi)
        out["defects"] = {"d1_small": list(d.d1_small), "d1_large": list(d.d1_large),
                          "d2_small": list(d.d2_small), "d2_large": list(d.d2_large)}
        return out
    rep = structure_report(pi).to_dict()
    out["g"] = rep["g"]
    out["defects"] = {k: rep[k] for k in ("d1_small", "d1_large", "d2_small", "d2_large")}
    out["structure"] = {k: rep[k] for k in ("corners", "boundary", "h", "x1", "x2")}
    return out


def cmd_score(args) -> int:
    pi, topology = _read_grid(args.file)
    emit(_report(pi, topology))
    if args.figure:
        plot_grid(pi, args.figure, title=f"{pi.dims} {topology.value}, f = {score(pi, topology)}")
    return 0


def cmd_verify(args) -> int:
    pi, topology = _read_grid(args.file)
    _even(pi.dims)
    cert = torus_verify(pi) if topology is Topology.TORUS else verify_optimal(pi)
    out = cert.to_dict()
    out["f"] = score(pi, topology)
    emit(out)
    return 0 if cert.passed else 1


def cmd_search(args) -> int:
    dims = _dims(args)
    topology = _topology(args)
    try:
        if args.mode == "exhaustive":
            result = exhaustive_max(dims, topology, budget=args.budget)
        elif args.mode == "bnb":
            result = bnb_max(dims, topology, node_budget=args.budget)
        else:
            schedule = AnnealSchedule(steps=args.steps) if args.steps else AnnealSchedule()
            result = anneal(dims, topology, target=args.target, seed=args.seed, schedule=schedule)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    emit(result.to_dict())
    if args.figure:
        plot_grid(result.witness, args.figure,
                  title=f"{dims} {topology.value} {args.mode}, f = {result.max_score}")
    return 0


def cmd_layers(args) -> int:
    dims = _even(_dims(args))
    emit({"n1": dims.n1, "n2": dims.n2,
          "layers": [layer_size(dims, i) for i in range(1, layer_count(dims) + 1)]})
    if args.figure:
        plot_layers(dims, args.figure)
    return 0


def cmd_disk(args) -> int:
    dims = _even(_dims(args))
    if not 0 <= args.k <= dims.size:
        raise UsageError(f"k must lie in 0..{dims.size}")
    emit({"n1": dims.n1, "n2": dims.n2, "k": args.k, "w": min_weight(dims, args.k),
          "cells": [list(c) for c in sorted(greedy_disk(dims, args.k))]})
    return 0


def cmd_render(args) -> int:
    pi, topology = _read_grid(args.file)
    if args.format == "png":
        if not args.output:
            raise UsageError("png output needs --output")
        plot_grid(pi, args.output)
        return 0
    text = _render(pi, topology, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsep", description="Grid permutations that maximally separate neighbors."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def dims_args(p):
        p.add_argument("n1", type=int)
        p.add_argument("n2", type=int)

    p = sub.add_parser("max", help="closed-form maximum")
    dims_args(p)
    p.add_argument("--torus", action="store_true")
    p.set_defaults(func=cmd_max)

    p = sub.add_parser("construct", help="emit an optimal permutation")
    dims_args(p)
    p.add_argument("--torus", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--format", choices=("json", "ascii", "svg"), default="json")
    p.add_argument("--line", choices=("vertical", "horizontal"), default="vertical")
    p.add_argument("--side", choices=("left", "right"), default="right",
                   help="side holding the heterogeneous half")
    p.add_argument("--defects", choices=("row", "column"), default="row")
    p.add_argument("--offset", type=int, default=0, help="cyclic shift of the torus blocks")
    p.add_argument("--exceptional", action="store_true",
                   help="search for the reduced maximum on the exceptional squares")
    p.add_argument("--figure", help="also save a matplotlib figure to this path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("score", help="score a grid file")
    p.add_argument("file")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("verify", help="check the optimality certificate of a grid file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="run a search oracle")
    dims_args(p)
    p.add_argument("--torus", action="store_true")
    p.add_argument("--mode", choices=("exhaustive", "bnb", "anneal"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("layers", help="layer sizes around the center")
    dims_args(p)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_layers)

    p = sub.add_parser("disk", help="minimum weight of a k-cell set")
    dims_args(p)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_disk)

    p = sub.add_parser("render", help="render a grid file")
    p.add_argument("file")
    p.add_argument("--format", choices=("ascii", "svg", "json", "png"), default="ascii")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OddDimensions, InvalidPermutation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
