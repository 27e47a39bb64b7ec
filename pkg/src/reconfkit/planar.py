"""Planar embeddings as rotation systems.

A rotation system stores, for each vertex, the cyclic order of its neighbors.
Faces are traced by the standard rule: the dart following ``(u, v)`` is
``(v, w)`` where ``w`` is the successor of ``u`` in the rotation at ``v``.
Euler's formula (per connected component) is the integrity check asserted
after every embedding-modifying operation elsewhere in the package.

Region classification against a *subgraph* embedding is the workhorse of the
reduction rules: every component of ``G - V(H)`` lies inside exactly one face
of the embedded subgraph ``H``, and the face is identified by the angular
sector its attachment darts occupy.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import networkx as nx

from .graph import Graph, compress_mapping

Dart = tuple[int, int]


class NonPlanarError(Exception):
    """Raised when a graph admits no planar embedding.

    ``witness`` carries the edges of a Kuratowski subgraph when the
    underlying algorithm produced one, else ``None``.
    """

    def __init__(self, message: str, witness: tuple[Dart, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class RotationSystem:
    """Per-vertex cyclic neighbor orders; immutable by convention."""

    __slots__ = ("_rot",)

    def __init__(self, rotations: Mapping[int, Sequence[int]]):
        self._rot = {v: tuple(order) for v, order in rotations.items()}
        for v, order in self._rot.items():
            if len(set(order)) != len(order):
                raise ValueError(f"rotation at {v} repeats a neighbor")
            if v in order:
                raise ValueError(f"rotation at {v} contains itself")

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._rot))

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def successor(self, v: int, w: int) -> int:
        order = self._rot[v]
        i = order.index(w)
        return order[(i + 1) % len(order)]

    def darts(self) -> list[Dart]:
        return sorted(
            (v, w) for v, order in self._rot.items() for w in order
        )

    def edge_count(self) -> int:
        return sum(len(o) for o in self._rot.values()) // 2

    # -- derived rotation systems -----------------------------------------

    def without_vertices(
        self, removed: Iterable[int], relabel: bool = True
    ) -> "RotationSystem":
        """Drop vertices (and their darts); optionally compress ids."""
        removed = frozenset(removed)
        n = max(self._rot, default=-1) + 1
        mapping = compress_mapping(n, removed) if relabel else None
        new = {}
        for v, order in self._rot.items():
            if v in removed:
                continue
            kept = tuple(w for w in order if w not in removed)
            if mapping is None:
                new[v] = kept
            else:
                new[mapping[v]] = tuple(mapping[w] for w in kept)
        return RotationSystem(new)

    def without_edges(self, gone: Iterable[Dart]) -> "RotationSystem":
        drop = {frozenset(e) for e in gone}
        return RotationSystem(
            {
                v: tuple(w for w in order if frozenset((v, w)) not in drop)
                for v, order in self._rot.items()
            }
        )

    def restricted(
        self, vertices: Iterable[int], edges: Iterable[Dart]
    ) -> "RotationSystem":
        """Induced sub-rotation on a subgraph, keeping original ids."""
        vset = frozenset(vertices)
        eset = {frozenset(e) for e in edges}
        return RotationSystem(
            {
                v: tuple(
                    w for w in self._rot[v] if frozenset((v, w)) in eset
                )
                for v in sorted(vset)
            }
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return self._rot == other._rot

    def __repr__(self) -> str:
        return f"RotationSystem(|support|={len(self._rot)})"


class FaceSet:
    """Facial walks of a rotation system plus the dart -> face index."""

    __slots__ = ("walks", "face_of")

    def __init__(self, walks: Sequence[Sequence[Dart]]):
        self.walks: tuple[tuple[Dart, ...], ...] = tuple(
            tuple(w) for w in walks
        )
        self.face_of: dict[Dart, int] = {}
        for i, walk in enumerate(self.walks):
            for dart in walk:
                if dart in self.face_of:
                    raise ValueError(f"dart {dart} appears in two faces")
                self.face_of[dart] = i

    def __len__(self) -> int:
        return len(self.walks)

    def boundary_vertices(self, face: int) -> frozenset:
        return frozenset(v for dart in self.walks[face] for v in dart)

    def face_lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.walks)


def enumerate_faces(rs: RotationSystem) -> FaceSet:
    """Trace all facial walks; face ids are ordered by smallest contained dart."""
    pending = set(rs.darts())
    walks = []
    for start in sorted(pending):
        if start not in pending:
            continue
        walk = []
        dart = start
        while True:
            walk.append(dart)
            pending.discard(dart)
            u, v = dart
            dart = (v, rs.successor(v, u))
            if dart == start:
                break
            if dart not in pending:
                raise ValueError("face tracing did not close up; invalid rotation")
        walks.append(tuple(walk))
    walks.sort(key=lambda w: min(w))
    # Rotate each walk so that its smallest dart comes first.
    canon = []
    for walk in walks:
        i = walk.index(min(walk))
        canon.append(walk[i:] + walk[:i])
    return FaceSet(canon)


def euler_violation(g: Graph, rs: RotationSystem, fs: FaceSet | None = None) -> str | None:
    """Return a description of the failed Euler check, or None if it holds.

    Isolated vertices contribute one conceptual face each; with ``c``
    components the traced-face count must satisfy V - E + F = 2c.
    """
    if set(rs.support()) != set(range(g.n)):
        return "rotation support differs from the vertex set"
    for v in range(g.n):
        if set(rs.rotation(v)) != set(g.neighbors(v)):
            return f"rotation at {v} does not list its neighbors exactly"
    fs = fs or enumerate_faces(rs)
    if sum(fs.face_lengths()) != 2 * g.m:
        return "face lengths do not sum to twice the edge count"
    isolated = sum(1 for v in range(g.n) if g.degree(v) == 0)
    c = len(g.connected_components())
    if g.n - g.m + len(fs) + isolated != 2 * c:
        return (
            f"Euler check failed: V={g.n} E={g.m} F={len(fs) + isolated} "
            f"components={c}"
        )
    return None


def compute_or_validate_embedding(
    g: Graph, provided: RotationSystem | None = None
) -> RotationSystem:
    """Validate a supplied rotation system, or compute one from scratch.

    Raises ``NonPlanarError`` (with a Kuratowski witness when available) if
    the graph has no planar embedding, and ``ValueError`` if a provided
    rotation fails validation.
    """
    if provided is not None:
        problem = euler_violation(g, provided)
        if problem is not None:
            raise ValueError(f"invalid rotation system: {problem}")
        return provided
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    ok, embedding = nx.check_planarity(nxg, counterexample=True)
    if not ok:
        witness = tuple(sorted(tuple(sorted(e)) for e in embedding.edges()))
        raise NonPlanarError("graph is not planar", witness=witness)
    data = embedding.get_data()
    rs = RotationSystem({v: tuple(data.get(v, ())) for v in range(g.n)})
    problem = euler_violation(g, rs)
    if problem is not None:
        raise AssertionError(f"computed embedding failed validation: {problem}")
    return rs


def locate_components(
    g: Graph,
    host: RotationSystem,
    sub_vertices: Iterable[int],
    sub_faces: FaceSet,
) -> dict[int, frozenset]:
    """Assign each component of ``g - sub_vertices`` to a face of the subgraph.

    ``sub_faces`` must come from the rotation of the subgraph *induced from*
    ``host``.  The face holding a component is read off the host rotation: an
    attachment dart at a subgraph vertex sits in the angular sector between
    two consecutive subgraph darts, and that sector belongs to exactly one
    face.  All attachment darts of one component must agree.
    """
    sub_vertices = frozenset(sub_vertices)
    sub_nbrs: dict[int, set[int]] = {c: set() for c in sub_vertices}
    for x, w in sub_faces.face_of:
        sub_nbrs[x].add(w)
    outside = [v for v in range(g.n) if v not in sub_vertices]
    comp_of = {}
    comps: list[list[int]] = []
    for v in outside:
        if v in comp_of:
            continue
        comp = [v]
        comp_of[v] = len(comps)
        stack = [v]
        while stack:
            x = stack.pop()
            for w in g.neighbors(x):
                if w not in sub_vertices and w not in comp_of:
                    comp_of[w] = len(comps)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)

    assigned: dict[int, int] = {}
    for c in sorted(sub_vertices):
        order = host.rotation(c)
        deg = len(order)
        for i, z in enumerate(order):
            if z in sub_vertices and z in sub_nbrs[c]:
                continue
            if z in sub_vertices and z not in sub_nbrs[c]:
                # Edge of g between subgraph vertices that is not a subgraph
                # edge: it lies inside some face but carries no component.
                continue
            if z not in comp_of:
                continue
            # Walk forward to the next subgraph dart at c.
            j = (i + 1) % deg
            while order[j] not in sub_nbrs[c]:
                j = (j + 1) % deg
                if j == i:
                    raise ValueError(
                        f"subgraph vertex {c} has no incident subgraph edge"
                    )
            face = sub_faces.face_of[(c, order[j])]
            comp = comp_of[z]
            if assigned.setdefault(comp, face) != face:
                raise ValueError(
                    "component attaches to two different faces; "
                    "inconsistent embedding"
                )
    regions: dict[int, set[int]] = {}
    for comp_idx, face in assigned.items():
        regions.setdefault(face, set()).update(comps[comp_idx])
    return {f: frozenset(vs) for f, vs in regions.items()}


def touch_set(
    g: Graph,
    rs: RotationSystem,
    fs: FaceSet,
    face: int,
    host: RotationSystem | None = None,
) -> frozenset:
    """Vertices touching a face: boundary, neighbors of it, and interior.

    When ``rs`` embeds all of ``g`` no vertex can lie strictly inside a face.
    When ``rs`` embeds a proper subgraph, the host rotation system is needed
    to locate the components of the rest of the graph.
    """
    boundary = fs.boundary_vertices(face)
    touched = set(boundary)
    for v in boundary:
        touched.update(g.neighbors(v))
    support = set(rs.support())
    if support != set(range(g.n)):
        if host is None:
            raise ValueError(
                "host rotation required to locate vertices inside subgraph faces"
            )
        regions = locate_components(g, host, support, fs)
        touched.update(regions.get(face, frozenset()))
    return frozenset(touched)


def classify_by_cycle(
    g: Graph,
    rs: RotationSystem,
    cycle: Sequence[int],
    reference: int | None = None,
) -> tuple[frozenset, frozenset]:
    """Split the non-cycle vertices into the two sides of an embedded cycle.

    The side containing ``reference`` (default: the smallest non-cycle
    vertex) is returned first.  Raises ``ValueError`` if the cycle is not a
    simple cycle of ``g`` or if the embedding places one component on both
    sides.
    """
    cyc = list(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise ValueError("cycle must be simple with at least 3 vertices")
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not g.has_edge(a, b):
            raise ValueError(f"cycle edge ({a}, {b}) missing from the graph")
    cset = frozenset(cyc)
    rest = [v for v in range(g.n) if v not in cset]
    if not rest:
        return frozenset(), frozenset()
    if reference is None:
        reference = rest[0]
    if reference in cset:
        raise ValueError("reference vertex lies on the cycle")

    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for v in rest:
        if v in comp_of:
            continue
        comp = [v]
        comp_of[v] = len(comps)
        stack = [v]
        while stack:
            x = stack.pop()
            for w in g.neighbors(x):
                if w not in cset and w not in comp_of:
                    comp_of[w] = len(comps)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)

    # side_a at cycle vertex c_i: neighbors strictly between the dart to the
    # next cycle vertex and the dart to the previous one, in rotation order.
    side_of_comp: dict[int, int] = {}
    m = len(cyc)
    for i, c in enumerate(cyc):
        prev, nxt = cyc[i - 1], cyc[(i + 1) % m]
        order = rs.rotation(c)
        deg = len(order)
        pos = order.index(nxt)
        side = 0
        for step in range(1, deg):
            w = order[(pos + step) % deg]
            if w == prev:
                side = 1
                continue
            if w in cset:
                continue
            if w not in comp_of:
                continue
            comp = comp_of[w]
            if side_of_comp.setdefault(comp, side) != side:
                raise ValueError(
                    "component attaches on both sides of the cycle; "
                    "inconsistent embedding"
                )
    side_a = set()
    side_b = set()
    for idx, comp in enumerate(comps):
        # Components with no attachment to the cycle cannot be placed by
        # darts alone; they land on the second side deterministically.
        side = side_of_comp.get(idx, None)
        target = side_b if side == 1 else side_a if side == 0 else side_b
        target.update(comp)
    if reference in side_a:
        return frozenset(side_a), frozenset(side_b)
    return frozenset(side_b), frozenset(side_a)


def insert_edge_in_face(
    rs: RotationSystem, fs: FaceSet, face: int, a: int, b: int
) -> RotationSystem:
    """Add the edge {a, b} drawn inside a face both vertices bound.

    The new darts are spliced into the rotation at the face corners, which
    splits the face in two and keeps the embedding planar.
    """
    walk = fs.walks[face]
    corner_a = next((d for d in walk if d[1] == a), None)
    corner_b = next((d for d in walk if d[1] == b), None)
    if corner_a is None or corner_b is None:
        raise ValueError(f"vertices {a} and {b} do not both bound face {face}")
    new = {v: list(order) for v, order in rs._rot.items()}
    pa = corner_a[0]
    pb = corner_b[0]
    new[a].insert(new[a].index(pa) + 1, b)
    new[b].insert(new[b].index(pb) + 1, a)
    return RotationSystem({v: tuple(order) for v, order in new.items()})
