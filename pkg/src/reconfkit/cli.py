"""Command-line surface.

Exit codes: 0 = yes/ok, 1 = no/invalid, 2 = error (bad input, non-planar
where planarity is required, exceeded budget, unknown flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats, generators
from .gadgets import build_ccsr, ccsr_to_cdsr
from .graph import degeneracy, is_connected_induced, is_dominating
from .kernel import compute_core, kernelize
from .planar import NonPlanarError, compute_or_validate_embedding, enumerate_faces
from .reconfig import BudgetExceededError, solve_tar, verify_sequence


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_instance(path: str):
    return formats.parse_instance(Path(path).read_bytes())


def _maybe_dot(args, graph, source=frozenset(), target=frozenset(), colors=None):
    if getattr(args, "dot", None):
        _write(args.dot, formats.to_dot(graph, source, target, colors))


def _cmd_solve(args) -> int:
    inst, _ = _read_instance(args.instance)
    try:
        seq = solve_tar(inst, budget=args.budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if seq is None:
        print("unreachable: no reconfiguration sequence exists", file=sys.stderr)
        return 1
    _write(args.output, formats.serialize_sequence(seq))
    return 0


def _cmd_verify(args) -> int:
    inst, _ = _read_instance(args.instance)
    seq = formats.parse_sequence(Path(args.sequence).read_bytes(), strict=False)
    report = verify_sequence(inst, seq)
    if report.ok:
        print("ok")
        return 0
    print(f"invalid: {report.kind} at step {report.step}: {report.message}",
          file=sys.stderr)
    return 1


def _cmd_kernelize(args) -> int:
    inst, rs = _read_instance(args.instance)
    result = kernelize(inst, rs)
    _write(args.output, formats.serialize_instance(result.instance, result.rotation))
    if args.trace:
        _write(args.trace, formats.serialize_trace(result.trace))
    _maybe_dot(args, result.instance.graph, result.instance.source,
               result.instance.target)
    print(
        f"reduced {inst.graph.n} -> {result.instance.graph.n} vertices "
        f"in {len(result.trace)} rule applications",
        file=sys.stderr,
    )
    return 0


def _cmd_core(args) -> int:
    inst, _ = _read_instance(args.instance)
    cert = compute_core(inst.graph, inst.k, inst.source | inst.target)
    _write(args.output, formats.dumps({
        "core": sorted(cert.core),
        "k": cert.k,
        "method": cert.method,
        "checked_sets": cert.checked_sets,
        "size": cert.size,
    }))
    return 0


def _cmd_gen_gadget(args) -> int:
    mcc = formats.parse_mcc(Path(args.mcc).read_bytes())
    inst, layout = build_ccsr(mcc, r_max=args.rep)
    if args.to_cds:
        inst = ccsr_to_cdsr(inst)
    _write(args.output, formats.serialize_instance(inst))
    if args.layout:
        _write(args.layout, formats.serialize_layout(layout))
    _maybe_dot(args, inst.graph, inst.source, inst.target, inst.colors)
    return 0


def _cmd_gen_random_planar(args) -> int:
    try:
        inst, rs = generators.random_planar_instance(args.n, args.k, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(args.output, formats.serialize_instance(inst, rs))
    _maybe_dot(args, inst.graph, inst.source, inst.target)
    return 0


def _cmd_embed(args) -> int:
    inst, rs = _read_instance(args.instance)
    try:
        rs = compute_or_validate_embedding(inst.graph, rs)
    except NonPlanarError as exc:
        print(f"non-planar: {exc}", file=sys.stderr)
        if exc.witness:
            print(f"witness edges: {list(exc.witness)}", file=sys.stderr)
        return 1
    _write(args.output, formats.serialize_instance(inst, rs))
    _maybe_dot(args, inst.graph, inst.source, inst.target)
    return 0


def _cmd_stats(args) -> int:
    if args.dimacs:
        g = formats.parse_dimacs(Path(args.dimacs).read_bytes())
        inst = None
    else:
        if not args.instance:
            print("error: need an instance file or --dimacs", file=sys.stderr)
            return 2
        inst, _ = _read_instance(args.instance)
        g = inst.graph
    d, _ = degeneracy(g)
    lines = [
        f"vertices {g.n}",
        f"edges {g.m}",
        f"degeneracy {d}",
        f"components {len(g.connected_components())}",
    ]
    try:
        rs = compute_or_validate_embedding(g)
        lines.append(f"planar yes faces {len(enumerate_faces(rs))}")
    except NonPlanarError:
        lines.append("planar no")
    if inst is not None:
        lines.append(f"variant {inst.variant.value}")
        lines.append(f"k {inst.k}")
        lines.append(
            f"source size {len(inst.source)} dominating "
            f"{is_dominating(g, inst.source)} connected "
            f"{is_connected_induced(g, inst.source)}"
        )
        lines.append(
            f"target size {len(inst.target)} dominating "
            f"{is_dominating(g, inst.target)} connected "
            f"{is_connected_induced(g, inst.target)}"
        )
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reconfkit",
        description="Token reconfiguration toolkit: exact solving, gadget "
        "generation, and planar kernelization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="shortest reconfiguration sequence")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a sequence against an instance")
    p.add_argument("instance")
    p.add_argument("sequence")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kernelize", help="apply the planar reduction rules")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--trace")
    p.add_argument("--dot")
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("core", help="compute a verified domination core")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("gen-gadget", help="build a routing instance from a "
                       "multicolored-clique file")
    p.add_argument("mcc")
    p.add_argument("--rep", type=int, default=None,
                   help="layers per block (default 20k)")
    p.add_argument("--to-cds", action="store_true",
                   help="also apply the hub/pendant reduction")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--layout", help="write the id-table sidecar here")
    p.add_argument("--dot")
    p.set_defaults(func=_cmd_gen_gadget)

    p = sub.add_parser("gen-random-planar", help="seeded random planar instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--dot")
    p.set_defaults(func=_cmd_gen_random_planar)

    p = sub.add_parser("embed", help="compute or validate a planar embedding")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--dot")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("stats", help="basic structural statistics")
    p.add_argument("instance", nargs="?")
    p.add_argument("--dimacs", help="read a DIMACS edge-list file instead")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_stats)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (formats.FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonPlanarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
