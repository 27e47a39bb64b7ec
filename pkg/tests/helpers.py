"""Shared brute-force oracles and instance families for the test suite.

Everything here is deliberately independent of the library's algorithms:
naive enumerations that are only viable at desk scale, used to cross-check
the real implementations.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from reconfkit.gadgets import MccInstance
from reconfkit.graph import Graph, is_connected_induced, is_dominating
from reconfkit.reconfig import ReconfInstance, Variant


# ---------------------------------------------------------------------------
# Naive oracles


def naive_degeneracy(g: Graph) -> int:
    """max over all non-empty subsets of the minimum degree inside; n <= ~16."""
    best = 0
    for size in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            subset = set(sub)
            mindeg = min(
                sum(1 for w in g.neighbors(v) if w in subset) for v in subset
            )
            best = max(best, mindeg)
    return best


def all_simple_paths(g: Graph, u: int, v: int, forbidden: frozenset) -> list[tuple[int, ...]]:
    paths = []

    def extend(path: list[int]) -> None:
        last = path[-1]
        for w in g.neighbors(last):
            if w == v:
                paths.append(tuple(path) + (v,))
            elif w not in path and w not in forbidden and w != u:
                path.append(w)
                extend(path)
                path.pop()

    extend([u])
    return paths


def brute_max_disjoint_paths(
    g: Graph, u: int, v: int, forbidden: frozenset = frozenset(), min_len: int = 1
) -> int:
    """Maximum internally-disjoint path packing by exhaustive search."""
    candidates = [
        p for p in all_simple_paths(g, u, v, forbidden) if len(p) - 1 >= min_len
    ]

    def best(remaining: list[tuple[int, ...]], used: frozenset) -> int:
        if not remaining:
            return 0
        head, *rest = remaining
        skip = best(rest, used)
        internals = frozenset(head[1:-1])
        if internals & used:
            return skip
        return max(skip, 1 + best(rest, used | internals))

    return best(candidates, frozenset())


def feasible_sets(inst: ReconfInstance) -> list[frozenset]:
    """Every feasible configuration, by raw enumeration (small n only)."""
    g = inst.graph
    out = []
    for size in range(0, inst.k + 1):
        for sub in itertools.combinations(range(g.n), size):
            s = frozenset(sub)
            if _feasible_naive(inst, s):
                out.append(s)
    return out


def _feasible_naive(inst: ReconfInstance, s: frozenset) -> bool:
    if len(s) > inst.k:
        return False
    if inst.variant is Variant.CCS:
        palette = set(inst.colors)
        if palette - {inst.colors[v] for v in s}:
            return False
        return is_connected_induced(inst.graph, s)
    if not is_dominating(inst.graph, s):
        return False
    if inst.variant is Variant.CDS:
        return is_connected_induced(inst.graph, s)
    return True


def explicit_reconfig_distance(inst: ReconfInstance) -> int | None:
    """BFS distance on the explicitly materialized reconfiguration graph."""
    nodes = feasible_sets(inst)
    index = {s: i for i, s in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    for s, i in index.items():
        for t, j in index.items():
            if len(s ^ t) == 1 and len(s) < len(t):
                adj[i].append(j)
                adj[j].append(i)
    if inst.source not in index or inst.target not in index:
        return None
    dist = {index[inst.source]: 0}
    queue = deque([index[inst.source]])
    while queue:
        x = queue.popleft()
        if x == index[inst.target]:
            return dist[x]
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return None


def brute_multicolored_clique(mcc: MccInstance) -> tuple[int, ...] | None:
    """One vertex per color, pairwise adjacent, by raw product enumeration."""
    classes = [mcc.color_class(c) for c in range(1, mcc.k + 1)]
    if any(not cls for cls in classes):
        return None
    for combo in itertools.product(*classes):
        if all(
            mcc.graph.has_edge(a, b)
            for a, b in itertools.combinations(combo, 2)
        ):
            return combo
    return None


def naive_is_domination_core(g: Graph, c_set: frozenset, k: int) -> bool:
    full = frozenset(range(g.n))
    for size in range(0, k + 1):
        for sub in itertools.combinations(range(g.n), size):
            covered = set()
            for v in sub:
                covered.add(v)
                covered.update(g.neighbors(v))
            if c_set <= covered and frozenset(covered) != full:
                return False
    return True


# ---------------------------------------------------------------------------
# Random graphs


def random_connected_graph(rng: random.Random, n: int, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree plus a sprinkle of extra edges."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_ccs_instance(rng: random.Random, n: int, kprime: int, k: int) -> ReconfInstance | None:
    """Random colored instance with lexicographically extreme feasible sets."""
    g = random_connected_graph(rng, n, 0.25)
    colors = tuple(rng.randrange(1, kprime + 1) for _ in range(n))
    if len(set(colors)) != kprime:
        return None
    feas = []
    for size in range(1, k + 1):
        for sub in itertools.combinations(range(n), size):
            s = frozenset(sub)
            if {colors[v] for v in s} == set(range(1, kprime + 1)) and \
                    is_connected_induced(g, s):
                feas.append(tuple(sorted(s)))
    if len(feas) < 2:
        return None
    feas.sort()
    return ReconfInstance(
        variant=Variant.CCS,
        graph=g,
        source=frozenset(feas[0]),
        target=frozenset(feas[-1]),
        k=k,
        colors=colors,
    )


# ---------------------------------------------------------------------------
# Rule-precondition instance families (all planar by construction)


def diamond_at_poles(g: Graph):
    """The diamond spanned by the conventional poles 0 and 1."""
    from reconfkit.kernel import diamond_at

    return diamond_at(g, 0, 1)


def diamond_graph(
    t: int,
    uv_edge: bool = True,
    internal_pairs: tuple[tuple[int, int], ...] = (),
) -> Graph:
    """Two poles 0, 1 and spokes 2..t+1; optional edges between spokes.

    ``internal_pairs`` are indices into the spoke list; only consecutive
    spokes may be joined so the graph stays planar.
    """
    edges = [(0, 1)] if uv_edge else []
    for i in range(t):
        edges += [(0, 2 + i), (1, 2 + i)]
    for a, b in internal_pairs:
        if abs(a - b) != 1:
            raise ValueError("only consecutive spokes keep the drawing planar")
        edges.append((2 + a, 2 + b))
    return Graph(t + 2, edges)


def r1_instance(seed: int) -> ReconfInstance:
    """Thick diamond with internal edges; k = 2 or 3."""
    rng = random.Random(seed)
    k = rng.choice([2, 3])
    t = 3 * k + 1 + rng.randrange(3)
    pairs = []
    i = 0
    while i + 1 < t:
        if rng.random() < 0.5:
            pairs.append((i, i + 1))
            i += 2
        else:
            i += 1
    if not pairs:
        pairs = [(0, 1)]
    g = diamond_graph(t, uv_edge=True, internal_pairs=tuple(pairs))
    source = frozenset({0, 2})
    target = frozenset({1, 2 + t - 1}) if rng.random() < 0.5 else frozenset({0, 1})
    return ReconfInstance(Variant.CDS, g, source, target, k)


def r2_instance(seed: int) -> ReconfInstance:
    """Diamond thicker than 4|C|+3k+1 at k=1 within 20 vertices."""
    rng = random.Random(seed)
    t = rng.choice([17, 18])
    g = diamond_graph(t, uv_edge=True)
    pole = rng.choice([0, 1])
    return ReconfInstance(
        Variant.CDS, g, frozenset({pole}), frozenset({pole}), 1
    )


def fan_graph(leaves: int, chords: tuple[int, ...]) -> Graph:
    """Hub 0 with leaves 1..leaves; chords join consecutive leaves."""
    edges = [(0, i) for i in range(1, leaves + 1)]
    for i in chords:
        edges.append((i, i + 1))
    return Graph(leaves + 1, edges)


def r3_instance(seed: int) -> tuple[ReconfInstance, int]:
    """Hub forced by degree, some consecutive-leaf chords to strip; k=1.

    The last two leaves are kept chord-free so the computed core stays at
    size 3 and the hub degree clears the (4|C|+3k+2)k threshold within the
    20-vertex budget.
    """
    rng = random.Random(seed)
    leaves = 18 + rng.randrange(2)
    n_chords = 1 + rng.randrange(3)
    chords = tuple(sorted(rng.sample(range(1, leaves - 2), n_chords)))
    g = fan_graph(leaves, chords)
    return (
        ReconfInstance(Variant.CDS, g, frozenset({0}), frozenset({0}), 1),
        0,
    )


def r4_instance(seed: int) -> tuple[ReconfInstance, int]:
    """Hub with more than k+1 pendants plus a tail; k in {2, 3}.

    With k = 3 the source and target hold pendants, exercising the rule's
    protection of those vertices.
    """
    rng = random.Random(seed)
    k = rng.choice([2, 3])
    pendants = k + 2 + rng.randrange(4)
    # hub 0, pendants 1..pendants, then a tail 0 - a - b
    a, b = pendants + 1, pendants + 2
    edges = [(0, i) for i in range(1, pendants + 1)] + [(0, a), (a, b)]
    g = Graph(pendants + 3, edges)
    if k == 3 and rng.random() < 0.7:
        source = frozenset({0, a, 1})
        target = frozenset({0, a, rng.randrange(2, pendants + 1)})
    else:
        source = target = frozenset({0, a})
    return ReconfInstance(Variant.CDS, g, source, target, k), 0


def path_bundle_graph(
    t: int, uv_edge: bool, diagonals: bool, middle: bool
) -> Graph:
    """Poles 0, 1 joined by t three-edge paths 0 - x_i - y_i - 1.

    ``diagonals`` adds x_i - y_{i+1}; ``middle`` adds one common neighbor.
    """
    n = 2 + 2 * t + (1 if middle else 0)
    edges = [(0, 1)] if uv_edge else []
    for i in range(t):
        x, y = 2 + 2 * i, 3 + 2 * i
        edges += [(0, x), (x, y), (y, 1)]
        if diagonals and i + 1 < t:
            edges.append((x, 3 + 2 * (i + 1)))
    if middle:
        edges += [(0, n - 1), (1, n - 1)]
    return Graph(n, edges)


def r5_instance(seed: int, k: int = 2) -> ReconfInstance:
    """Parallel-path bundle whose poles exceed the path-region thresholds.

    The thresholds grow with the computed core, so the bundle width is tuned
    upward until the rule's precondition verifiably holds.
    """
    from reconfkit.graph import max_vertex_disjoint_paths
    from reconfkit.kernel import compute_core, domination_support

    rng = random.Random(seed)
    diagonals = k == 3
    middle = k == 3
    t = 99 if k == 2 else 225
    t += rng.randrange(4)
    while True:
        g = path_bundle_graph(t, uv_edge=(k == 2), diagonals=diagonals, middle=middle)
        must = frozenset({0, 1}) if k == 2 else frozenset({0, 1, g.n - 1})
        core = compute_core(g, k, must)
        d_set = domination_support(g, core.core)
        threshold = 4 * len(d_set) + (4 * core.size + 3 * k + 1) * k + 1
        paths = max_vertex_disjoint_paths(g, 0, 1, forbidden=d_set - {0, 1}, min_len=2)
        if g.degree(0) > threshold and g.degree(1) > threshold and len(paths) > threshold:
            break
        t += 10
    return ReconfInstance(Variant.CDS, g, must, must, k)
