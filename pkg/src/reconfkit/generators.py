"""Seeded random planar instances with a recorded embedding.

Construction is triangulation-then-sparsification: grow a stacked
triangulation by repeatedly splitting a random face with a new vertex (the
rotation system is maintained by hand, so tests never depend on the
embedder), then delete a random sample of edges that keep the graph
connected.  Feasible source and target sets come from a greedy connected
dominating set grower.
"""

from __future__ import annotations

import random

from .graph import Graph, is_connected_induced, is_dominating
from .planar import RotationSystem, euler_violation
from .reconfig import ReconfInstance, Variant


def stacked_triangulation(n: int, rng: random.Random) -> tuple[Graph, RotationSystem]:
    """Random planar triangulation on n >= 3 vertices with its rotation."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    faces: list[tuple[int, int, int]] = [(0, 1, 2), (1, 0, 2)]
    edges = [(0, 1), (0, 2), (1, 2)]
    for w in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        # Insert w between the corner darts so every new triangle closes up.
        rot[a].insert(rot[a].index(c) + 1, w)
        rot[b].insert(rot[b].index(a) + 1, w)
        rot[c].insert(rot[c].index(b) + 1, w)
        rot[w] = [b, a, c]
        faces.extend([(a, b, w), (b, c, w), (c, a, w)])
        edges.extend([(a, w), (b, w), (c, w)])
    g = Graph(n, edges)
    rs = RotationSystem({v: tuple(order) for v, order in rot.items()})
    return g, rs


def sparsify(
    g: Graph, rs: RotationSystem, rng: random.Random, keep_fraction: float = 0.7
) -> tuple[Graph, RotationSystem]:
    """Remove a random set of edges, keeping the graph connected."""
    edges = list(g.edges())
    rng.shuffle(edges)
    drop = []
    current = g
    for e in edges:
        if rng.random() < keep_fraction:
            continue
        candidate = current.delete_edges([e])
        if candidate.is_connected():
            current = candidate
            drop.append(e)
    return current, rs.without_edges(drop)


def greedy_cds(g: Graph, root: int) -> frozenset:
    """Grow a connected dominating set from a root, most-new-coverage first."""
    if g.n == 0:
        return frozenset()
    chosen = {root}
    covered = {root, *g.neighbors(root)}
    while len(covered) < g.n:
        frontier = sorted({w for v in chosen for w in g.neighbors(v)} - chosen)
        if not frontier:
            raise ValueError("graph is disconnected; no connected dominating set")
        best = max(
            frontier,
            key=lambda w: (len(({w} | set(g.neighbors(w))) - covered), -w),
        )
        chosen.add(best)
        covered.update({best, *g.neighbors(best)})
    return frozenset(chosen)


def random_planar_instance(
    n: int, k: int, seed: int, keep_fraction: float = 0.75
) -> tuple[ReconfInstance, RotationSystem]:
    """A CDS reconfiguration instance on a random sparsified triangulation.

    Raises ValueError when the greedy dominating sets do not fit the bound.
    """
    rng = random.Random(seed)
    g, rs = stacked_triangulation(n, rng)
    g, rs = sparsify(g, rs, rng, keep_fraction)
    problem = euler_violation(g, rs)
    if problem is not None:
        raise AssertionError(f"generator produced a broken embedding: {problem}")
    source = greedy_cds(g, 0)
    target = greedy_cds(g, n - 1)
    if len(source) > k or len(target) > k:
        raise ValueError(
            f"greedy dominating sets of sizes {len(source)} and {len(target)} "
            f"exceed the bound k={k}; raise k or re-seed"
        )
    if not (is_dominating(g, source) and is_connected_induced(g, source)):
        raise AssertionError("greedy source is not a connected dominating set")
    inst = ReconfInstance(
        variant=Variant.CDS, graph=g, source=source, target=target, k=k
    )
    return inst, rs
