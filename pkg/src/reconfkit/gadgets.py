"""Hardness-instance generators and their explicit witness sequences.

The pipeline turns a multicolored-clique input into a colored connected
subgraph reconfiguration instance built from stacked "routing" blocks, one
block per color, each block a stack of layers that are color-restricted
subdivided copies of the input graph.  A further reduction attaches one hub
per color (plus pendants) to produce a connected dominating set instance.

When the input has a multicolored clique, an explicit reconfiguration
sequence exists and ``forward_sequence`` emits it move by move; the solver in
``reconfig`` is the independent ground truth it is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph
from .reconfig import Move, ReconfInstance, ReconfSequence, Variant

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MccInstance:
    """A properly colored connected graph plus the number of color classes."""

    graph: Graph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        g = self.graph
        if len(self.colors) != g.n:
            raise ValueError("colors must assign a color to every vertex")
        if self.k < 1:
            raise ValueError("k must be positive")
        for c in self.colors:
            if not (1 <= c <= self.k):
                raise ValueError(f"color {c} outside 1..{self.k}")
        for u, v in g.edges():
            if self.colors[u] == self.colors[v]:
                raise ValueError(
                    f"coloring is not proper: edge ({u}, {v}) is monochromatic"
                )
        if g.n and not g.is_connected():
            raise ValueError("input graph must be connected")

    def color_class(self, c: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if self.colors[v] == c)


@dataclass(frozen=True)
class SubdivisionResult:
    graph: Graph
    subdivision_vertices: frozenset
    sub_of: dict[Edge, int]  # retained original edge -> subdivision vertex id


def color_restrict_subdivide(
    g: Graph, colors: Sequence[int], pattern_edges: Iterable[Edge]
) -> SubdivisionResult:
    """Drop edges whose color pair is outside the pattern, subdivide the rest.

    Original vertices keep their ids; subdivision vertices are appended in
    sorted retained-edge order.
    """
    if len(colors) != g.n:
        raise ValueError("colors must assign a color to every vertex")
    for u, v in g.edges():
        if colors[u] == colors[v]:
            raise ValueError("coloring is not proper")
    allowed = {frozenset(e) for e in pattern_edges}
    retained = sorted(
        e for e in g.edges() if frozenset((colors[e[0]], colors[e[1]])) in allowed
    )
    sub_of = {e: g.n + i for i, e in enumerate(retained)}
    edges = []
    for e in retained:
        s = sub_of[e]
        edges.append((e[0], s))
        edges.append((e[1], s))
    return SubdivisionResult(
        Graph(g.n + len(retained), edges),
        frozenset(sub_of.values()),
        sub_of,
    )


@dataclass
class GadgetLayout:
    """Id tables for a generated routing instance.

    ``copy_ids[(w, i, r)]`` is the copy of original vertex ``w`` in block
    ``i``, layer ``r``; ``sub_ids[(u, v, i, r)]`` (with ``u < v``) the
    subdivision vertex of the retained edge in that layer.  The start gadget
    exposes ``v_ids``/``w_ids``, the target gadget ``x_ids``/``y_ids``.
    """

    mcc: MccInstance
    r_max: int
    graph: Graph = field(repr=False)
    colors: tuple[int, ...] = field(repr=False)
    q_s: frozenset = frozenset()
    q_t: frozenset = frozenset()
    bound: int = 0
    copy_ids: dict[tuple[int, int, int], int] = field(default_factory=dict)
    sub_ids: dict[tuple[int, int, int, int], int] = field(default_factory=dict)
    v_ids: dict[int, int] = field(default_factory=dict)
    w_ids: dict[int, int] = field(default_factory=dict)
    x_ids: dict[int, int] = field(default_factory=dict)
    y_ids: dict[int, int] = field(default_factory=dict)
    retained: dict[int, tuple[Edge, ...]] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.mcc.k

    def layer_vertices(self, i: int, r: int) -> frozenset:
        own = {
            vid
            for (w, bi, br), vid in self.copy_ids.items()
            if bi == i and br == r
        }
        own.update(
            vid
            for (u, v, bi, br), vid in self.sub_ids.items()
            if bi == i and br == r
        )
        return frozenset(own)

    def clique_tree(self, clique: Sequence[int], i: int, r: int) -> frozenset:
        """Token set: clique copies in layer (i, r) plus the star of
        subdivision vertices around the color-i clique vertex."""
        k = self.k
        by_color = {self.mcc.colors[v]: v for v in clique}
        center = by_color[i]
        verts = {self.copy_ids[(v, i, r)] for v in clique}
        for j in range(1, k + 1):
            if j == i:
                continue
            e = _norm_edge(center, by_color[j])
            verts.add(self.sub_ids[(e[0], e[1], i, r)])
        return frozenset(verts)


def build_ccsr(mcc: MccInstance, r_max: int | None = None) -> tuple[ReconfInstance, GadgetLayout]:
    """Construct the colored-connected-subgraph reconfiguration instance.

    ``r_max`` is the number of layers per block; it defaults to ``20 * k``,
    but tests cross-validating against the exact solver scale it down.
    """
    k = mcc.k
    if k < 2:
        raise ValueError("the routing construction needs at least 2 colors")
    if r_max is None:
        r_max = 20 * k
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    if mcc.graph.n == 0:
        raise ValueError("input graph is empty")

    g = mcc.graph
    colors = mcc.colors
    ids: list[int] = []  # color of each created vertex, by id
    edges: list[Edge] = []
    layout = GadgetLayout(mcc=mcc, r_max=r_max, graph=Graph(0), colors=())

    def new_vertex(color: int) -> int:
        ids.append(color)
        return len(ids) - 1

    # Start gadget: subdivided star on v_1..v_k centered at v_1.
    for i in range(1, k + 1):
        layout.v_ids[i] = new_vertex(i)
    for i in range(2, k + 1):
        layout.w_ids[i] = new_vertex(k + 1)
        edges.append((layout.v_ids[1], layout.w_ids[i]))
        edges.append((layout.w_ids[i], layout.v_ids[i]))

    # Routing blocks: block i restricts to edges touching color class i.
    for i in range(1, k + 1):
        star = [(i, j) for j in range(1, k + 1) if j != i]
        retained = sorted(
            e
            for e in g.edges()
            if frozenset((colors[e[0]], colors[e[1]])) in {frozenset(p) for p in star}
        )
        layout.retained[i] = tuple(retained)
        for r in range(1, r_max + 1):
            for w in range(g.n):
                layout.copy_ids[(w, i, r)] = new_vertex(colors[w])
            for u, v in retained:
                s = new_vertex(k + 1)
                layout.sub_ids[(u, v, i, r)] = s
                edges.append((layout.copy_ids[(u, i, r)], s))
                edges.append((layout.copy_ids[(v, i, r)], s))

    # Forward links between consecutive layers and consecutive blocks.
    for i in range(1, k + 1):
        for r in range(1, r_max):
            for u, v in layout.retained[i]:
                s = layout.sub_ids[(u, v, i, r)]
                edges.append((s, layout.copy_ids[(u, i, r + 1)]))
                edges.append((s, layout.copy_ids[(v, i, r + 1)]))
    for i in range(1, k):
        for u, v in layout.retained[i]:
            s = layout.sub_ids[(u, v, i, r_max)]
            edges.append((s, layout.copy_ids[(u, i + 1, 1)]))
            edges.append((s, layout.copy_ids[(v, i + 1, 1)]))

    # Target gadget: subdivided star on x_1..x_k centered at x_k.
    for i in range(1, k + 1):
        layout.x_ids[i] = new_vertex(i)
    for i in range(1, k):
        layout.y_ids[i] = new_vertex(k + 1)
        edges.append((layout.x_ids[k], layout.y_ids[i]))
        edges.append((layout.y_ids[i], layout.x_ids[i]))

    # Entry wiring: w_i sees every first-layer copy colored 1 or i.
    for i in range(2, k + 1):
        for w in range(g.n):
            if colors[w] in (1, i):
                edges.append((layout.w_ids[i], layout.copy_ids[(w, 1, 1)]))
    # Exit wiring: each last-layer subdivision vertex sees x_k and the x of
    # its non-center endpoint color.
    for u, v in layout.retained[k]:
        s = layout.sub_ids[(u, v, k, r_max)]
        other = colors[u] if colors[v] == k else colors[v]
        edges.append((s, layout.x_ids[k]))
        edges.append((s, layout.x_ids[other]))

    graph = Graph(len(ids), edges)
    layout.graph = graph
    layout.colors = tuple(ids)
    layout.q_s = frozenset(layout.v_ids.values()) | frozenset(layout.w_ids.values())
    layout.q_t = frozenset(layout.x_ids.values()) | frozenset(layout.y_ids.values())
    layout.bound = 2 * k

    inst = ReconfInstance(
        variant=Variant.CCS,
        graph=graph,
        source=layout.q_s,
        target=layout.q_t,
        k=2 * k,
        colors=layout.colors,
    )
    return inst, layout


def ccsr_to_cdsr(inst: ReconfInstance) -> ReconfInstance:
    """Reduce a colored instance to connected domination.

    One hub per color class is attached to all its vertices, each hub gets
    2k+1 pendants, hubs join source and target, and the bound grows by the
    number of colors.  Hub ids are n..n+k'-1 in color order; pendants follow.
    """
    if inst.variant is not Variant.CCS:
        raise ValueError("input must be a ccs instance")
    g = inst.graph
    kprime = inst.num_colors()
    n = g.n
    edges = list(g.edges())
    hubs = {c: n + c - 1 for c in range(1, kprime + 1)}
    nxt = n + kprime
    for c in range(1, kprime + 1):
        for v in range(n):
            if inst.colors[v] == c:
                edges.append((hubs[c], v))
        for _ in range(2 * inst.k + 1):
            edges.append((hubs[c], nxt))
            nxt += 1
    hub_set = frozenset(hubs.values())
    return ReconfInstance(
        variant=Variant.CDS,
        graph=Graph(nxt, edges),
        source=inst.source | hub_set,
        target=inst.target | hub_set,
        k=inst.k + kprime,
    )


def tree_edge_exchange(
    t1_edges: Iterable[Edge],
    t2_edges: Iterable[Edge],
    f_order: Sequence[Edge],
) -> list[Edge]:
    """Order the first tree's edges so that stepwise swaps reach the second.

    Given spanning trees on the same label set and an ordering f_1..f_{k-1}
    of the second tree's edges, returns e_1..e_{k-1} such that successively
    replacing e_i by f_i transforms the first tree into the second with every
    intermediate graph a tree.  Greedy: whenever f_i is already present keep
    it (swap is a no-op); otherwise remove the smallest cycle edge that the
    second tree does not use.
    """
    t1 = {_norm_edge(*e) for e in t1_edges}
    t2 = {_norm_edge(*e) for e in t2_edges}
    forder = [_norm_edge(*e) for e in f_order]
    labels = {v for e in t1 for v in e}
    if labels != {v for e in t2 for v in e}:
        raise ValueError("trees must span the same label set")
    for name, t in (("first", t1), ("second", t2)):
        if not _is_tree(t, labels):
            raise ValueError(f"{name} edge set is not a tree on the labels")
    if sorted(forder) != sorted(t2):
        raise ValueError("f_order must be an ordering of the second tree's edges")

    current = set(t1)
    e_order: list[Edge] = []
    for f in forder:
        if f in current:
            e_order.append(f)
            continue
        cycle = _tree_cycle(current, f)
        candidates = sorted(e for e in cycle if e not in t2)
        if not candidates:
            raise AssertionError("cycle lies inside the second tree")
        e = candidates[0]
        current.remove(e)
        current.add(f)
        e_order.append(e)
    if current != t2:
        raise AssertionError("edge exchange did not arrive at the second tree")
    return e_order


def _is_tree(edge_set: set[Edge], labels: set[int]) -> bool:
    if len(edge_set) != len(labels) - 1:
        return False
    if not labels:
        return False
    adj: dict[int, list[int]] = {v: [] for v in labels}
    for u, v in edge_set:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    stack = [next(iter(labels))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x])
    return seen == labels


def _tree_cycle(tree: set[Edge], extra: Edge) -> list[Edge]:
    """Edges of the unique cycle in tree + extra (including extra)."""
    adj: dict[int, list[int]] = {}
    for u, v in tree:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    a, b = extra
    # Path from a to b in the tree.
    parent = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    cycle = [extra]
    for u, v in zip(path, path[1:]):
        cycle.append(_norm_edge(u, v))
    return cycle


def forward_sequence(layout: GadgetLayout, clique: Sequence[int]) -> ReconfSequence:
    """Explicit witness sequence for a multicolored clique of the input.

    The sequence walks the token tree from the start gadget through every
    block and layer (shifting one original-copy token at a time, then the
    subdivision tokens) and finally into the target gadget.  Every segment
    between canonical trees takes exactly 4k-2 moves.
    """
    mcc = layout.mcc
    k = layout.k
    clique = list(clique)
    by_color: dict[int, int] = {}
    for v in clique:
        mcc.graph._check_vertex(v)
        c = mcc.colors[v]
        if c in by_color:
            raise ValueError("clique must contain one vertex per color")
        by_color[c] = v
    if sorted(by_color) != list(range(1, k + 1)):
        raise ValueError("clique must contain one vertex per color")
    for a in clique:
        for b in clique:
            if a != b and not mcc.graph.has_edge(a, b):
                raise ValueError(f"clique vertices {a} and {b} are not adjacent")

    u = {c: by_color[c] for c in range(1, k + 1)}
    moves: list[Move] = []

    def add(vid: int) -> None:
        moves.append(Move("add", vid))

    def remove(vid: int) -> None:
        moves.append(Move("remove", vid))

    def sub(i: int, a: int, b: int, r: int) -> int:
        e = _norm_edge(a, b)
        return layout.sub_ids[(e[0], e[1], i, r)]

    # Into the first block: bring in clique copies, drop the start stars.
    for j in list(range(2, k + 1)) + [1]:
        add(layout.copy_ids[(u[j], 1, 1)])
        remove(layout.v_ids[j])
    for j in range(2, k + 1):
        add(sub(1, u[1], u[j], 1))
        remove(layout.w_ids[j])

    for i in range(1, k + 1):
        spoke = [j for j in range(1, k + 1) if j != i]
        # Layer shifts within block i.
        for r in range(1, layout.r_max):
            for j in spoke + [i]:
                add(layout.copy_ids[(u[j], i, r + 1)])
                remove(layout.copy_ids[(u[j], i, r)])
            for j in spoke:
                add(sub(i, u[i], u[j], r + 1))
                remove(sub(i, u[i], u[j], r))
        if i < k:
            # Block transition: move the originals, then exchange the
            # subdivision stars guided by the tree swap order.
            for j in spoke + [i]:
                add(layout.copy_ids[(u[j], i + 1, 1)])
                remove(layout.copy_ids[(u[j], i, layout.r_max)])
            t1 = [(i, j) for j in spoke]
            t2 = [(i + 1, j) for j in range(1, k + 1) if j != i + 1]
            f_order = sorted(t2, key=lambda e: e[0] if e[1] == i + 1 else e[1])
            e_order = tree_edge_exchange(t1, t2, f_order)
            for f, e in zip(f_order, e_order):
                add(sub(i + 1, u[f[0]], u[f[1]], 1))
                remove(sub(i, u[e[0]], u[e[1]], layout.r_max))

    # Out of the last block into the target stars.
    for j in list(range(1, k)) + [k]:
        add(layout.x_ids[j])
        remove(layout.copy_ids[(u[j], k, layout.r_max)])
    for j in range(1, k):
        add(layout.y_ids[j])
        remove(sub(k, u[k], u[j], layout.r_max))

    return ReconfSequence(layout.q_s, tuple(moves))
