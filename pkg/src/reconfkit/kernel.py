"""Planar kernelization for connected dominating set reconfiguration.

The pipeline keeps a verified domination core and applies five reduction
rules in a fixed order, restarting after every application, until none
fires:

  R1  strip internal edges of a thick diamond          (thickness > 3k)
  R2  delete the region between two quiet diamond faces (> 4|C| + 3k + 1)
  R3  strip edges inside very-high-degree neighborhoods (> (4|C|+3k+2) k)
  R4  trim pendant twins down to k + 1 per vertex
  R5  delete the two inner vertices between two quiet parallel-path faces

Thresholds use the actually computed core and |D| rather than worst-case
polynomial bounds; every application is logged in a replayable trace and the
embedding is re-validated after each change.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import (
    Graph,
    bits_of,
    mask_of,
    max_vertex_disjoint_paths,
    pendant_neighbors,
)
from .planar import (
    FaceSet,
    RotationSystem,
    classify_by_cycle,
    compute_or_validate_embedding,
    enumerate_faces,
    euler_violation,
    insert_edge_in_face,
    locate_components,
)
from .reconfig import BudgetExceededError, ReconfInstance, Variant


class KernelInvariantError(AssertionError):
    """An internal guarantee of a reduction rule failed to materialize."""


# ---------------------------------------------------------------------------
# Domination cores


@dataclass(frozen=True)
class CoreCert:
    """A verified domination core with its verification record."""

    core: frozenset
    k: int
    method: str
    checked_sets: int

    @property
    def size(self) -> int:
        return len(self.core)


def find_violating_set(
    g: Graph, c_set: Iterable[int], k: int, budget: int = 5_000_000
) -> frozenset | None:
    """A set of size <= k dominating ``c_set`` but not the graph, if any.

    Branch and bound: repeatedly pick an uncovered core vertex with the
    fewest dominators and try each.  Complete because every inclusion-minimal
    dominating set of the core is reached, and a violating set contains a
    minimal one with a neighborhood no larger.
    """
    c_set = g.check_subset(c_set)
    full = g.full_mask()
    closed = [g.closed_mask(v) for v in range(g.n)]
    target = mask_of(c_set)
    nodes = 0

    def search(chosen: list[int], covered: int) -> frozenset | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(
                f"core check exceeded {budget} search nodes"
            )
        missing = target & ~covered
        if not missing:
            dominated = 0
            for v in chosen:
                dominated |= closed[v]
            if dominated != full:
                return frozenset(chosen)
            return None
        if len(chosen) == k:
            return None
        # Uncovered core vertex with the fewest dominators.
        best, best_dom = None, None
        rest = missing
        while rest:
            b = rest & -rest
            rest ^= b
            c = b.bit_length() - 1
            doms = [c] + list(g.neighbors(c))
            if best_dom is None or len(doms) < len(best_dom):
                best, best_dom = c, doms
        for d in sorted(best_dom):
            hit = search(chosen + [d], covered | closed[d])
            if hit is not None:
                return hit
        return None

    return search([], 0)


def is_domination_core(
    g: Graph, c_set: Iterable[int], k: int, budget: int = 5_000_000
) -> bool:
    """True iff every set of size <= k dominating ``c_set`` dominates ``g``."""
    return find_violating_set(g, c_set, k, budget) is None


def compute_core(
    g: Graph,
    k: int,
    must_contain: Iterable[int] = (),
    budget: int = 5_000_000,
) -> CoreCert:
    """A locally minimal domination core containing ``must_contain``.

    Starts from the full vertex set and greedily drops vertices in id order.
    A single pass suffices: the core property is monotone under supersets, so
    a removal that fails once keeps failing as the set shrinks.
    """
    must = g.check_subset(must_contain)
    core = set(range(g.n))
    checked = 0
    for v in range(g.n):
        if v in must:
            continue
        candidate = core - {v}
        checked += 1
        if find_violating_set(g, candidate, k, budget) is None:
            core = candidate
    cert = CoreCert(frozenset(core), k, "exhaustive-branch-and-bound", checked)
    if find_violating_set(g, cert.core, k, budget) is not None:
        raise KernelInvariantError("greedy core lost the core property")
    return cert


# ---------------------------------------------------------------------------
# Projections and diamonds


def projection_classes(
    g: Graph, a: Iterable[int]
) -> list[tuple[frozenset, frozenset]]:
    """Group the vertices outside ``a`` by their neighborhood inside ``a``.

    Returns (projection, class) pairs sorted lexicographically by projection.
    """
    a = g.check_subset(a)
    groups: dict[tuple[int, ...], set[int]] = {}
    for v in range(g.n):
        if v in a:
            continue
        proj = tuple(sorted(set(g.neighbors(v)) & a))
        groups.setdefault(proj, set()).add(v)
    return [
        (frozenset(proj), frozenset(members))
        for proj, members in sorted(groups.items())
    ]


@dataclass(frozen=True)
class Diamond:
    """Two vertices plus their common neighborhood."""

    u: int
    v: int
    common: frozenset

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("diamond endpoints must differ")

    @property
    def thickness(self) -> int:
        return len(self.common)

    def internal_edges(self, g: Graph) -> list[tuple[int, int]]:
        return [
            e
            for e in g.edges()
            if e[0] in self.common and e[1] in self.common
        ]


def diamond_at(g: Graph, u: int, v: int) -> Diamond:
    common = frozenset(g.neighbors(u)) & frozenset(g.neighbors(v))
    return Diamond(u, v, common)


def find_thick_diamond(g: Graph, threshold: int) -> Diamond | None:
    """Smallest (u, v) pair whose common neighborhood exceeds the threshold."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    for u in range(g.n):
        mu = g.adjacency_mask(u)
        for v in range(u + 1, g.n):
            inter = mu & g.adjacency_mask(v)
            if bin(inter).count("1") > threshold:
                return Diamond(u, v, frozenset(bits_of(inter)))
    return None


def _edgy_thick_diamond(
    g: Graph, threshold: int
) -> tuple[Diamond, tuple[tuple[int, int], ...]] | None:
    """Smallest thick diamond that still has internal edges, if any."""
    for u in range(g.n):
        mu = g.adjacency_mask(u)
        for v in range(u + 1, g.n):
            inter = mu & g.adjacency_mask(v)
            if bin(inter).count("1") <= threshold:
                continue
            internal = []
            for a in bits_of(inter):
                both = g.adjacency_mask(a) & inter
                for b in bits_of(both):
                    if a < b:
                        internal.append((a, b))
            if internal:
                return Diamond(u, v, frozenset(bits_of(inter))), tuple(internal)
    return None


# ---------------------------------------------------------------------------
# Trace bookkeeping


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    params: dict
    thresholds: dict
    core_size: int
    removed_vertices: tuple[int, ...] = ()
    removed_edges: tuple[tuple[int, int], ...] = ()
    added_edges: tuple[tuple[int, int], ...] = ()

    def apply(self, g: Graph) -> Graph:
        if self.removed_edges:
            g = g.delete_edges(self.removed_edges)
        if self.added_edges:
            g = g.add_edges(self.added_edges)
        if self.removed_vertices:
            g, _ = g.delete_vertices(self.removed_vertices)
        return g


@dataclass(frozen=True)
class KernelTrace:
    entries: tuple[TraceEntry, ...]

    def replay(self, g: Graph) -> Graph:
        for entry in self.entries:
            g = entry.apply(g)
        return g

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Subgraph face machinery shared by R2 and R5


@dataclass
class _QuietFaces:
    sub_rs: RotationSystem
    faces: FaceSet
    regions: dict[int, frozenset]
    face_pair: tuple[int, int]


def _quiet_adjacent_faces(
    g: Graph,
    rs: RotationSystem,
    sub_vertices: frozenset,
    sub_edges: list[tuple[int, int]],
    anchors: tuple[int, int],
    avoid: frozenset,
) -> _QuietFaces | None:
    """Two adjacent faces of the embedded subgraph untouched by ``avoid``.

    Touch generators are the boundary vertices other than the two anchors:
    their graph neighbors and the vertices located strictly inside count as
    touching, while adjacency to the (ubiquitous) anchors does not.  Face
    pairs are scanned in lexicographic order; ``None`` when every pair is
    touched.
    """
    sub_rs = rs.restricted(sub_vertices, sub_edges)
    faces = enumerate_faces(sub_rs)
    regions = locate_components(g, rs, sub_vertices, faces)
    avoid = avoid - set(anchors)

    touched: list[bool] = []
    for f in range(len(faces)):
        gen = faces.boundary_vertices(f) - set(anchors)
        touch = set(gen)
        for x in gen:
            touch.update(g.neighbors(x))
        touch.update(regions.get(f, frozenset()))
        touched.append(bool(touch & avoid))

    for f, gshare in sorted(_adjacent_face_pairs(faces)):
        if not touched[f] and not touched[gshare]:
            return _QuietFaces(sub_rs, faces, regions, (f, gshare))
    return None


def _adjacent_face_pairs(faces: FaceSet) -> list[tuple[int, int]]:
    pairs = set()
    for (u, v), f in faces.face_of.items():
        g = faces.face_of[(v, u)]
        if f != g:
            pairs.add((min(f, g), max(f, g)))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# Reduction rules


def rule_strip_diamond_edges(g: Graph, d: Diamond, k: int) -> Graph:
    """R1: drop every edge with both endpoints in the common neighborhood."""
    if d.thickness <= 3 * k:
        raise ValueError("diamond is not thicker than 3k")
    internal = d.internal_edges(g)
    return g.delete_edges(internal)


@dataclass(frozen=True)
class RegionRemoval:
    graph: Graph
    rotation: RotationSystem
    removed: frozenset  # ids in the input graph
    mapping: dict
    cycle: tuple[int, ...]
    face_pair: tuple[int, int]


def rule_remove_diamond_region(
    g: Graph, rs: RotationSystem, d: Diamond, core: CoreCert, k: int
) -> RegionRemoval:
    """R2: delete everything drawn between two quiet faces of a thick diamond.

    The diamond subgraph (with no internal edges) cuts the plane into
    thickness-many faces; two adjacent faces untouched by the core exist by
    counting, and the vertices inside the cycle through their outer spokes
    are irrelevant.
    """
    threshold = 4 * core.size + 3 * k + 1
    if d.thickness <= threshold:
        raise ValueError("diamond is not thicker than 4|C| + 3k + 1")
    if d.internal_edges(g):
        raise ValueError("internal edges present; strip them first")
    sub_vertices = d.common | {d.u, d.v}
    sub_edges = [(d.u, x) for x in d.common] + [(d.v, x) for x in d.common]
    quiet = _quiet_adjacent_faces(
        g, rs, sub_vertices, sub_edges, (d.u, d.v), core.core
    )
    if quiet is None:
        raise KernelInvariantError(
            "no quiet adjacent face pair in a thick diamond"
        )
    f, h = quiet.face_pair
    spokes_f = quiet.faces.boundary_vertices(f) - {d.u, d.v}
    spokes_h = quiet.faces.boundary_vertices(h) - {d.u, d.v}
    shared = spokes_f & spokes_h
    if len(shared) != 1:
        raise KernelInvariantError("adjacent faces must share one spoke")
    mid = next(iter(shared))
    outer_f = min(spokes_f - shared)
    outer_h = min(spokes_h - shared)
    cycle = (d.u, outer_f, d.v, outer_h)
    inside, _ = classify_by_cycle(g, rs, cycle, reference=mid)
    if mid not in inside:
        raise KernelInvariantError("shared spoke missing from the region")
    if inside & core.core:
        raise KernelInvariantError("core vertex inside the removed region")
    new_g, mapping = g.delete_vertices(inside)
    new_rs = rs.without_vertices(inside)
    problem = euler_violation(new_g, new_rs)
    if problem is not None:
        raise KernelInvariantError(f"embedding broke during region removal: {problem}")
    return RegionRemoval(new_g, new_rs, frozenset(inside), mapping, cycle, (f, h))


def high_degree_threshold(core_size: int, k: int) -> int:
    """Degree above which a vertex is pinned in every feasible configuration.

    A configuration avoiding v has a member covering more than a 1/k
    fraction of N(v); the cover may include the member itself, so the
    implied diamond is one thinner.  Hence one extra k beyond the diamond
    bound is needed for the forcing to be airtight.
    """
    return (4 * core_size + 3 * k + 2) * k


def rule_strip_high_degree_neighborhood(g: Graph, core: CoreCert, k: int) -> Graph:
    """R3: for every over-threshold vertex, drop edges inside its neighborhood."""
    threshold = high_degree_threshold(core.size, k)
    doomed = set()
    for v in range(g.n):
        if g.degree(v) > threshold:
            nbrs = g.adjacency_mask(v)
            for a in bits_of(nbrs):
                inner = g.adjacency_mask(a) & nbrs
                for b in bits_of(inner):
                    if a < b:
                        doomed.add((a, b))
    return g.delete_edges(doomed) if doomed else g


@dataclass(frozen=True)
class PendantTrim:
    graph: Graph
    removed: frozenset
    mapping: dict
    hub: int


def rule_trim_pendants(
    g: Graph, k: int, protect: frozenset = frozenset(), hub: int | None = None
) -> PendantTrim | None:
    """R4: keep k+1 pendant neighbors per vertex, dropping the rest.

    Protected pendants (those in the source or target set) are always kept,
    then the smallest ids fill up the quota.  ``None`` when no vertex has
    excess pendants.
    """
    hubs = [hub] if hub is not None else list(range(g.n))
    for v in hubs:
        pend = sorted(pendant_neighbors(g, v))
        if len(pend) <= k + 1:
            continue
        kept = [p for p in pend if p in protect]
        for p in pend:
            if len(kept) >= k + 1:
                break
            if p not in protect:
                kept.append(p)
        removed = frozenset(pend) - set(kept)
        if not removed:
            continue
        new_g, mapping = g.delete_vertices(removed)
        return PendantTrim(new_g, removed, mapping, v)
    return None


@dataclass(frozen=True)
class PathRegionResult:
    graph: Graph
    rotation: RotationSystem
    removed: frozenset  # the two shared inner vertices, input ids
    added_edge: tuple[int, int] | None  # input ids
    mapping: dict
    pair: tuple[int, int]
    face_pair: tuple[int, int]
    paths_found: int


def rule_path_region(
    g: Graph,
    rs: RotationSystem,
    core: CoreCert,
    d_set: frozenset,
    k: int,
    pair: tuple[int, int] | None = None,
) -> PathRegionResult | None:
    """R5: between two huge-degree vertices joined by many parallel paths,
    delete the two inner vertices separating two quiet faces.

    The bounding paths of quiet faces have exactly two inner vertices (one
    neighbor of each endpoint); the shared path's inner pair is irrelevant.
    A replacement edge is added exactly when the endpoints are non-adjacent
    and both outer paths were linked to the removed pair.

    The degree bound dominates ``high_degree_threshold`` whenever
    4|D| + 1 >= k (always at the scales handled here), so both endpoints are
    pinned in every feasible configuration and carry edge-free neighborhoods
    once the earlier rules are exhausted.
    """
    threshold = 4 * len(d_set) + (4 * core.size + 3 * k + 1) * k + 1
    candidates = (
        [pair]
        if pair is not None
        else [
            (u, v)
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if g.degree(u) > threshold and g.degree(v) > threshold
        ]
    )
    for u, v in candidates:
        if g.degree(u) <= threshold or g.degree(v) <= threshold:
            continue
        paths = max_vertex_disjoint_paths(
            g, u, v, forbidden=d_set - {u, v}, min_len=2
        )
        if len(paths) <= threshold:
            continue
        sub_vertices = {u, v}
        sub_edges = []
        for p in paths:
            sub_vertices.update(p)
            sub_edges.extend(zip(p, p[1:]))
        quiet = _quiet_adjacent_faces(
            g, rs, frozenset(sub_vertices), sub_edges, (u, v), d_set
        )
        if quiet is None:
            raise KernelInvariantError(
                "no quiet adjacent face pair among the parallel paths"
            )
        f, h = quiet.face_pair
        walk_f = quiet.faces.walks[f]
        walk_h = quiet.faces.walks[h]
        if len(walk_f) != 6 or len(walk_h) != 6:
            raise KernelInvariantError(
                "bounding paths of the quiet faces must have two inner vertices"
            )
        inner_f = quiet.faces.boundary_vertices(f) - {u, v}
        inner_h = quiet.faces.boundary_vertices(h) - {u, v}
        shared = inner_f & inner_h
        if len(shared) != 2:
            raise KernelInvariantError("adjacent faces must share one path")
        z_u = next(z for z in shared if g.has_edge(u, z))
        z_v = next(z for z in shared if g.has_edge(v, z))
        if z_u == z_v:
            raise KernelInvariantError("shared path inner vertices collapsed")
        x_f = next(x for x in inner_f - shared if g.has_edge(u, x))
        y_f = next(x for x in inner_f - shared if g.has_edge(v, x))
        x_g = next(x for x in inner_h - shared if g.has_edge(u, x))
        y_g = next(x for x in inner_h - shared if g.has_edge(v, x))

        hexagon = (u, x_f, y_f, v, y_g, x_g)
        inside, _ = classify_by_cycle(g, rs, hexagon, reference=z_u)
        if inside != {z_u, z_v}:
            raise KernelInvariantError(
                f"region between quiet faces is {sorted(inside)}, "
                f"expected exactly the shared inner pair"
            )

        add_edge = (
            not g.has_edge(u, v)
            and (g.has_edge(x_f, z_v) or g.has_edge(y_f, z_u))
            and (g.has_edge(x_g, z_v) or g.has_edge(y_g, z_u))
        )
        removed = frozenset((z_u, z_v))
        new_g, mapping = g.delete_vertices(removed)
        new_rs = rs.without_vertices(removed)
        added = None
        if add_edge:
            added = (x_f, y_g)
            a, b = mapping[x_f], mapping[y_g]
            faces_after = enumerate_faces(new_rs)
            shared_faces = [
                fi
                for fi in range(len(faces_after))
                if {a, b} <= faces_after.boundary_vertices(fi)
            ]
            if not shared_faces:
                raise KernelInvariantError(
                    "replacement edge endpoints share no face"
                )
            new_rs = insert_edge_in_face(new_rs, faces_after, shared_faces[0], a, b)
            new_g = new_g.add_edges([(a, b)])
        problem = euler_violation(new_g, new_rs)
        if problem is not None:
            raise KernelInvariantError(
                f"embedding broke during path-region removal: {problem}"
            )
        return PathRegionResult(
            new_g, new_rs, removed, added, mapping, (u, v), (f, h), len(paths)
        )
    return None


def domination_support(g: Graph, core: frozenset) -> frozenset:
    """The core plus every outside vertex with two or more core neighbors."""
    out = set(core)
    for v in range(g.n):
        if v in core:
            continue
        if len(set(g.neighbors(v)) & core) >= 2:
            out.add(v)
    return frozenset(out)


# ---------------------------------------------------------------------------
# The kernelization loop


@dataclass
class KernelizeResult:
    instance: ReconfInstance
    rotation: RotationSystem
    trace: KernelTrace
    core: CoreCert


def kernelize(
    inst: ReconfInstance,
    rs: RotationSystem | None = None,
    core_budget: int = 5_000_000,
) -> KernelizeResult:
    """Apply the reduction rules in order until none fires.

    The core is recomputed (with source and target forced in) after every
    application.  Source and target survive every rule; the embedding is
    re-validated after each change.
    """
    if inst.variant is not Variant.CDS:
        raise ValueError("kernelization is defined for the cds variant")
    g = inst.graph
    source, target = inst.source, inst.target
    k = inst.k
    rs = compute_or_validate_embedding(g, rs)
    entries: list[TraceEntry] = []

    while True:
        core = compute_core(g, k, source | target, budget=core_budget)
        c = core.size
        entry = None

        # R1: thick diamond with internal edges.
        hit = _edgy_thick_diamond(g, 3 * k)
        if hit is not None:
            d, removed_edges = hit
            g = rule_strip_diamond_edges(g, d, k)
            rs = rs.without_edges(removed_edges)
            entry = TraceEntry(
                rule="strip-diamond-edges",
                params={"u": d.u, "v": d.v, "thickness": d.thickness},
                thresholds={"3k": 3 * k},
                core_size=c,
                removed_edges=removed_edges,
            )
        if entry is None:
            # R2: very thick diamond; delete a quiet region.
            d = find_thick_diamond(g, 4 * c + 3 * k + 1)
            if d is not None:
                res = rule_remove_diamond_region(g, rs, d, core, k)
                if res.removed & (source | target):
                    raise KernelInvariantError(
                        "region removal touched the source or target"
                    )
                entry = TraceEntry(
                    rule="remove-diamond-region",
                    params={
                        "u": d.u,
                        "v": d.v,
                        "thickness": d.thickness,
                        "cycle": list(res.cycle),
                        "face_pair": list(res.face_pair),
                    },
                    thresholds={"4C+3k+1": 4 * c + 3 * k + 1},
                    core_size=c,
                    removed_vertices=tuple(sorted(res.removed)),
                )
                g, rs = res.graph, res.rotation
                source = frozenset(res.mapping[x] for x in source)
                target = frozenset(res.mapping[x] for x in target)
        if entry is None:
            # R3: edges inside huge neighborhoods.
            stripped = rule_strip_high_degree_neighborhood(g, core, k)
            if stripped != g:
                removed_edges = tuple(
                    e for e in g.edges() if not stripped.has_edge(*e)
                )
                entry = TraceEntry(
                    rule="strip-high-degree-neighborhood",
                    params={
                        "vertices": [
                            v
                            for v in range(g.n)
                            if g.degree(v) > high_degree_threshold(c, k)
                        ]
                    },
                    thresholds={"(4C+3k+2)k": high_degree_threshold(c, k)},
                    core_size=c,
                    removed_edges=removed_edges,
                )
                g = stripped
                rs = rs.without_edges(removed_edges)
        if entry is None:
            # R4: pendant surplus.
            trim = rule_trim_pendants(g, k, protect=source | target)
            if trim is not None:
                entry = TraceEntry(
                    rule="trim-pendants",
                    params={"hub": trim.hub},
                    thresholds={"k+1": k + 1},
                    core_size=c,
                    removed_vertices=tuple(sorted(trim.removed)),
                )
                rs = rs.without_vertices(trim.removed)
                source = frozenset(trim.mapping[x] for x in source)
                target = frozenset(trim.mapping[x] for x in target)
                g = trim.graph
        if entry is None:
            # R5: parallel-path bundles between two huge-degree vertices.
            d_set = domination_support(g, core.core)
            res = rule_path_region(g, rs, core, d_set, k)
            if res is not None:
                if res.removed & (source | target):
                    raise KernelInvariantError(
                        "path-region removal touched the source or target"
                    )
                entry = TraceEntry(
                    rule="path-region",
                    params={
                        "u": res.pair[0],
                        "v": res.pair[1],
                        "paths": res.paths_found,
                        "face_pair": list(res.face_pair),
                        "added_edge": list(res.added_edge)
                        if res.added_edge
                        else None,
                    },
                    thresholds={
                        "4D+(4C+3k+1)k+1": 4 * len(d_set)
                        + (4 * c + 3 * k + 1) * k
                        + 1
                    },
                    core_size=c,
                    removed_vertices=tuple(sorted(res.removed)),
                    added_edges=(res.added_edge,) if res.added_edge else (),
                )
                g, rs = res.graph, res.rotation
                source = frozenset(res.mapping[x] for x in source)
                target = frozenset(res.mapping[x] for x in target)

        if entry is None:
            break
        problem = euler_violation(g, rs)
        if problem is not None:
            raise KernelInvariantError(f"embedding invalid after {entry.rule}: {problem}")
        entries.append(entry)

    final_core = compute_core(g, k, source | target, budget=core_budget)
    reduced = ReconfInstance(
        variant=Variant.CDS, graph=g, source=source, target=target, k=k
    )
    return KernelizeResult(reduced, rs, KernelTrace(tuple(entries)), final_core)
