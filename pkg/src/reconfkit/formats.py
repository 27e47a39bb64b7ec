"""JSON file formats, DOT export, and a minimal DIMACS edge-list importer.

Serialization is canonical (sorted keys, fixed separators, trailing newline)
so that identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from .gadgets import GadgetLayout, MccInstance
from .graph import Graph
from .kernel import KernelTrace, TraceEntry
from .planar import RotationSystem
from .reconfig import Move, ReconfInstance, ReconfSequence, Variant

INSTANCE_TAG = "reconfig-instance/v1"
SEQUENCE_TAG = "reconfig-sequence/v1"
TRACE_TAG = "kernel-trace/v1"
LAYOUT_TAG = "gadget-layout/v1"


class FormatError(ValueError):
    """A parse or validation failure, naming the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _require(data: dict, field: str, kind: type) -> Any:
    if field not in data:
        raise FormatError(field, "missing required field")
    value = data[field]
    if kind is int and isinstance(value, bool):
        raise FormatError(field, "expected an integer")
    if not isinstance(value, kind):
        raise FormatError(field, f"expected {kind.__name__}")
    return value


def _edge_list(data: dict, n: int) -> list[tuple[int, int]]:
    raw = _require(data, "edges", list)
    edges = []
    seen = set()
    for i, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2):
            raise FormatError("edges", f"entry {i} is not a pair")
        u, v = e
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
            raise FormatError("edges", f"entry {i} is not an integer pair")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError("edges", f"entry {i} out of range for n={n}")
        if u == v:
            raise FormatError("edges", f"entry {i} is a self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    return edges


def _vertex_list(data: dict, field: str, n: int) -> frozenset:
    raw = _require(data, field, list)
    out = set()
    for x in raw:
        if not isinstance(x, int) or isinstance(x, bool):
            raise FormatError(field, "entries must be integers")
        if not (0 <= x < n):
            raise FormatError(field, f"vertex {x} out of range for n={n}")
        out.add(x)
    return frozenset(out)


def _rotation(data: dict, g: Graph) -> RotationSystem | None:
    if "rotation" not in data or data["rotation"] is None:
        return None
    raw = data["rotation"]
    if not isinstance(raw, list) or len(raw) != g.n:
        raise FormatError("rotation", f"expected {g.n} per-vertex lists")
    rot = {}
    for v, order in enumerate(raw):
        if not isinstance(order, list):
            raise FormatError("rotation", f"entry {v} is not a list")
        rot[v] = tuple(order)
        if set(order) != set(g.neighbors(v)) or len(set(order)) != len(order):
            raise FormatError(
                "rotation", f"entry {v} does not list its neighbors exactly once"
            )
    try:
        return RotationSystem(rot)
    except ValueError as exc:
        raise FormatError("rotation", str(exc))


# -- instances ---------------------------------------------------------------


def instance_to_dict(
    inst: ReconfInstance, rotation: RotationSystem | None = None
) -> dict:
    out = {
        "format": INSTANCE_TAG,
        "variant": inst.variant.value,
        "n": inst.graph.n,
        "edges": [list(e) for e in inst.graph.edges()],
        "k": inst.k,
        "source": sorted(inst.source),
        "target": sorted(inst.target),
    }
    if inst.colors is not None:
        out["colors"] = list(inst.colors)
    if rotation is not None:
        out["rotation"] = [list(rotation.rotation(v)) for v in range(inst.graph.n)]
    return out


def serialize_instance(
    inst: ReconfInstance, rotation: RotationSystem | None = None
) -> str:
    return dumps(instance_to_dict(inst, rotation))


def parse_instance(
    raw: bytes | str,
) -> tuple[ReconfInstance, RotationSystem | None]:
    """Validated instance (plus embedded rotation when present)."""
    data = _load_json(raw)
    tag = _require(data, "format", str)
    if tag != INSTANCE_TAG:
        raise FormatError("format", f"expected {INSTANCE_TAG!r}, got {tag!r}")
    variant_name = _require(data, "variant", str)
    if variant_name == "mcc":
        raise FormatError(
            "variant", "multicolored-clique files are read by gen-gadget"
        )
    try:
        variant = Variant(variant_name)
    except ValueError:
        raise FormatError("variant", f"unknown variant {variant_name!r}")
    n = _require(data, "n", int)
    if n < 0:
        raise FormatError("n", "must be non-negative")
    edges = _edge_list(data, n)
    g = Graph(n, edges)
    k = _require(data, "k", int)
    source = _vertex_list(data, "source", n)
    target = _vertex_list(data, "target", n)
    colors = None
    if variant is Variant.CCS:
        raw_colors = _require(data, "colors", list)
        if len(raw_colors) != n:
            raise FormatError("colors", f"expected {n} entries")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in raw_colors):
            raise FormatError("colors", "entries must be integers")
        colors = tuple(raw_colors)
    elif "colors" in data and data["colors"] is not None:
        raise FormatError("colors", "only the ccs variant is colored")
    rotation = _rotation(data, g)
    try:
        inst = ReconfInstance(
            variant=variant, graph=g, source=source, target=target, k=k,
            colors=colors,
        )
    except ValueError as exc:
        msg = str(exc)
        field = msg.split(":", 1)[0] if ":" in msg else "instance"
        raise FormatError(field, msg.split(":", 1)[-1].strip())
    return inst, rotation


def _load_json(raw: bytes | str) -> dict:
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("document", f"not valid UTF-8: {exc}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError("document", f"malformed JSON: {exc}")
    if not isinstance(data, dict):
        raise FormatError("document", "top level must be an object")
    return data


# -- multicolored clique inputs ----------------------------------------------


def mcc_to_dict(mcc: MccInstance) -> dict:
    return {
        "format": INSTANCE_TAG,
        "variant": "mcc",
        "n": mcc.graph.n,
        "edges": [list(e) for e in mcc.graph.edges()],
        "colors": list(mcc.colors),
        "k": mcc.k,
    }


def serialize_mcc(mcc: MccInstance) -> str:
    return dumps(mcc_to_dict(mcc))


def parse_mcc(raw: bytes | str) -> MccInstance:
    data = _load_json(raw)
    tag = _require(data, "format", str)
    if tag != INSTANCE_TAG:
        raise FormatError("format", f"expected {INSTANCE_TAG!r}, got {tag!r}")
    if _require(data, "variant", str) != "mcc":
        raise FormatError("variant", "expected 'mcc'")
    n = _require(data, "n", int)
    edges = _edge_list(data, n)
    raw_colors = _require(data, "colors", list)
    if len(raw_colors) != n:
        raise FormatError("colors", f"expected {n} entries")
    k = _require(data, "k", int)
    try:
        return MccInstance(Graph(n, edges), tuple(raw_colors), k)
    except ValueError as exc:
        raise FormatError("instance", str(exc))


# -- sequences ---------------------------------------------------------------


def sequence_to_dict(seq: ReconfSequence) -> dict:
    return {
        "format": SEQUENCE_TAG,
        "initial": sorted(seq.initial),
        "moves": [{"op": m.op, "vertex": m.vertex} for m in seq.moves],
    }


def serialize_sequence(seq: ReconfSequence) -> str:
    return dumps(sequence_to_dict(seq))


def parse_sequence(raw: bytes | str, strict: bool = True) -> ReconfSequence:
    """Parse a sequence file.

    ``strict`` additionally requires the replay to be well-defined; the
    verifier parses leniently so that a broken move list is reported as a
    verification failure rather than a parse error.
    """
    data = _load_json(raw)
    tag = _require(data, "format", str)
    if tag != SEQUENCE_TAG:
        raise FormatError("format", f"expected {SEQUENCE_TAG!r}, got {tag!r}")
    initial_raw = _require(data, "initial", list)
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in initial_raw):
        raise FormatError("initial", "entries must be integers")
    moves_raw = _require(data, "moves", list)
    moves = []
    for i, m in enumerate(moves_raw):
        if not isinstance(m, dict):
            raise FormatError("moves", f"entry {i} is not an object")
        op = m.get("op")
        vertex = m.get("vertex")
        if op not in ("add", "remove"):
            raise FormatError("moves", f"entry {i} has unknown op {op!r}")
        if not isinstance(vertex, int) or isinstance(vertex, bool):
            raise FormatError("moves", f"entry {i} has a bad vertex")
        moves.append(Move(op, vertex))
    seq = ReconfSequence(frozenset(initial_raw), tuple(moves))
    if strict:
        try:
            for _ in seq.configurations():
                pass
        except ValueError as exc:
            raise FormatError("moves", f"replay is ill-defined: {exc}")
    return seq


# -- kernel traces -------------------------------------------------------------


def trace_to_dict(trace: KernelTrace) -> dict:
    return {
        "format": TRACE_TAG,
        "entries": [
            {
                "rule": e.rule,
                "params": e.params,
                "thresholds": e.thresholds,
                "core_size": e.core_size,
                "removed_vertices": list(e.removed_vertices),
                "removed_edges": [list(x) for x in e.removed_edges],
                "added_edges": [list(x) for x in e.added_edges],
            }
            for e in trace.entries
        ],
    }


def serialize_trace(trace: KernelTrace) -> str:
    return dumps(trace_to_dict(trace))


def parse_trace(raw: bytes | str) -> KernelTrace:
    data = _load_json(raw)
    tag = _require(data, "format", str)
    if tag != TRACE_TAG:
        raise FormatError("format", f"expected {TRACE_TAG!r}, got {tag!r}")
    entries = []
    for i, e in enumerate(_require(data, "entries", list)):
        if not isinstance(e, dict):
            raise FormatError("entries", f"entry {i} is not an object")
        entries.append(
            TraceEntry(
                rule=e["rule"],
                params=e["params"],
                thresholds=e["thresholds"],
                core_size=e["core_size"],
                removed_vertices=tuple(e["removed_vertices"]),
                removed_edges=tuple(tuple(x) for x in e["removed_edges"]),
                added_edges=tuple(tuple(x) for x in e["added_edges"]),
            )
        )
    return KernelTrace(tuple(entries))


# -- gadget layout sidecar -----------------------------------------------------


def layout_to_dict(layout: GadgetLayout) -> dict:
    return {
        "format": LAYOUT_TAG,
        "k": layout.k,
        "r_max": layout.r_max,
        "bound": layout.bound,
        "q_s": sorted(layout.q_s),
        "q_t": sorted(layout.q_t),
        "copies": {
            f"{w},{i},{r}": vid for (w, i, r), vid in sorted(layout.copy_ids.items())
        },
        "subdivisions": {
            f"{u},{v},{i},{r}": vid
            for (u, v, i, r), vid in sorted(layout.sub_ids.items())
        },
        "start_star": {str(i): vid for i, vid in sorted(layout.v_ids.items())},
        "start_links": {str(i): vid for i, vid in sorted(layout.w_ids.items())},
        "target_star": {str(i): vid for i, vid in sorted(layout.x_ids.items())},
        "target_links": {str(i): vid for i, vid in sorted(layout.y_ids.items())},
        "retained": {
            str(i): [list(e) for e in edges]
            for i, edges in sorted(layout.retained.items())
        },
    }


def serialize_layout(layout: GadgetLayout) -> str:
    return dumps(layout_to_dict(layout))


# -- DOT and DIMACS ------------------------------------------------------------


def to_dot(
    g: Graph,
    source: frozenset = frozenset(),
    target: frozenset = frozenset(),
    colors: tuple[int, ...] | None = None,
) -> str:
    lines = ["graph reconf {"]
    for v in range(g.n):
        attrs = []
        if colors is not None:
            attrs.append(f'label="{v}:{colors[v]}"')
        marks = []
        if v in source:
            marks.append("S")
        if v in target:
            marks.append("T")
        if marks:
            attrs.append('shape="box"')
            attrs.append(f'xlabel="{"".join(marks)}"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dimacs(raw: bytes | str) -> Graph:
    """Edge-list DIMACS: 'p edge N M' then 'e u v' with 1-based vertices."""
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    n = None
    edges = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4:
                raise FormatError("p", f"line {lineno}: malformed problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise FormatError("e", f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError("e", f"line {lineno}: vertex out of range")
            edges.append((u, v))
        else:
            raise FormatError("document", f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise FormatError("p", "missing problem line")
    return Graph(n, edges)
