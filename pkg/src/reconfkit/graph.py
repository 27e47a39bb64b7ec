"""Immutable simple undirected graphs and the combinatorial primitives on them.

Vertices are contiguous ids ``0..n-1``.  Vertex subsets are plain frozensets.
All operations are pure functions; graphs are value objects that never mutate,
so reductions return a fresh graph together with an id remapping.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Iterator

VertexSet = frozenset


class Graph:
    """Finite simple undirected graph with stable integer vertex ids."""

    __slots__ = ("n", "m", "_nbrs", "_adj_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._nbrs: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )
        self._adj_masks: tuple[int, ...] = tuple(
            sum(1 << w for w in s) for s in adj
        )
        self.m = sum(len(s) for s in adj) // 2

    # -- basic queries ---------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in self._nbrs[u] if u < v
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._adj_masks[u] >> v & 1)

    def adjacency_mask(self, v: int) -> int:
        return self._adj_masks[v]

    def closed_mask(self, v: int) -> int:
        return self._adj_masks[v] | (1 << v)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"invalid vertex {v} for graph on {self.n} vertices")

    def check_subset(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        for v in s:
            self._check_vertex(v)
        return s

    # -- connectivity ----------------------------------------------------

    def connected_components(self) -> list[frozenset]:
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    # -- derived graphs ---------------------------------------------------

    def add_edges(self, new_edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges()) + list(new_edges))

    def delete_edges(self, gone: Iterable[tuple[int, int]]) -> "Graph":
        drop = {frozenset(e) for e in gone}
        return Graph(
            self.n, [e for e in self.edges() if frozenset(e) not in drop]
        )

    def delete_vertices(
        self, removed: Iterable[int]
    ) -> tuple["Graph", dict[int, int]]:
        """Delete vertices and compress ids, returning the old->new mapping."""
        removed = self.check_subset(removed)
        mapping = compress_mapping(self.n, removed)
        edges = [
            (mapping[u], mapping[v])
            for u, v in self.edges()
            if u not in removed and v not in removed
        ]
        return Graph(self.n - len(removed), edges), mapping

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        keep = self.check_subset(keep)
        return self.delete_vertices(set(range(self.n)) - keep)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash((self.n, self._nbrs))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def compress_mapping(n: int, removed: frozenset) -> dict[int, int]:
    """Order-preserving id compression after deleting ``removed`` from 0..n-1."""
    mapping = {}
    nxt = 0
    for v in range(n):
        if v not in removed:
            mapping[v] = nxt
            nxt += 1
    return mapping


def mask_of(s: Iterable[int]) -> int:
    return sum(1 << v for v in set(s))


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Minimum-degree peeling; returns the degeneracy and a witnessing order.

    Ties are broken by smallest vertex id, so the order is deterministic.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    alive = [True] * n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if not alive[v] or dv != deg[v]:
            continue
        alive[v] = False
        d = max(d, dv)
        order.append(v)
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    """True iff the closed neighborhood of ``d`` covers every vertex."""
    d = g.check_subset(d)
    covered = 0
    for v in d:
        covered |= g.closed_mask(v)
    return covered == g.full_mask()


def is_connected_induced(g: Graph, s: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``s`` has exactly one component.

    The empty set does not count as connected; a singleton does.
    """
    s = g.check_subset(s)
    return _mask_connected(mask_of(s), g._adj_masks)


def _mask_connected(mask: int, adj_masks: tuple[int, ...] | list[int]) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    comp = start
    frontier = start
    while frontier:
        grow = 0
        rest = frontier
        while rest:
            b = rest & -rest
            rest ^= b
            grow |= adj_masks[b.bit_length() - 1]
        frontier = grow & mask & ~comp
        comp |= frontier
    return comp == mask


def pendant_neighbors(g: Graph, v: int) -> frozenset:
    """Neighbors of ``v`` having degree exactly one."""
    g._check_vertex(v)
    return frozenset(u for u in g.neighbors(v) if g.degree(u) == 1)


def max_vertex_disjoint_paths(
    g: Graph,
    u: int,
    v: int,
    forbidden: Iterable[int] = (),
    min_len: int = 1,
) -> list[list[int]]:
    """Maximum set of internally vertex-disjoint u-v paths.

    Internal vertices must avoid ``forbidden``.  Computed by unit-capacity
    max flow on the vertex-split network.  ``min_len = 2`` is realised by
    dropping the direct edge {u, v} before the flow computation, which forces
    every path to have an internal vertex; larger bounds are not supported.
    """
    g._check_vertex(u)
    g._check_vertex(v)
    forbidden = g.check_subset(forbidden)
    if u == v:
        raise ValueError("endpoints must differ")
    if u in forbidden or v in forbidden:
        raise ValueError("endpoints may not be forbidden")
    if min_len > 2:
        raise ValueError("min_len > 2 is not supported")

    allowed = set(range(g.n)) - forbidden
    # Split every allowed internal vertex w into 2w (in) -> 2w+1 (out).
    source = 2 * u + 1
    sink = 2 * v
    cap: dict[int, dict[int, int]] = {}

    def arc(a: int, b: int) -> None:
        cap.setdefault(a, {})[b] = cap.setdefault(a, {}).get(b, 0) + 1
        cap.setdefault(b, {}).setdefault(a, 0)

    for w in allowed:
        if w not in (u, v):
            arc(2 * w, 2 * w + 1)
    for a, b in g.edges():
        if a not in allowed or b not in allowed:
            continue
        if {a, b} == {u, v} and min_len >= 2:
            continue
        arc(2 * a + 1, 2 * b)
        arc(2 * b + 1, 2 * a)

    flow_value = 0
    while True:
        # BFS augmenting path over positive residual arcs, smallest-id first.
        parent: dict[int, int] = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in sorted(cap.get(x, ())):
                if y not in parent and cap[x][y] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow_value += 1

    # Decompose the integral flow into vertex sequences by walking saturated
    # forward arcs (original capacity 1, residual now 0) from the source.
    paths: list[list[int]] = []
    saturated: dict[int, list[int]] = {}
    for a in cap:
        outs = [b for b, c in cap[a].items() if c == 0 and _was_forward(a, b)]
        saturated[a] = sorted(outs)
    for _ in range(flow_value):
        path = [u]
        node = source
        while node != sink:
            nxt = saturated[node].pop(0)
            if nxt % 2 == 0:
                path.append(nxt // 2)
            node = nxt
        paths.append(path)
    paths = [p for p in paths if len(p) - 1 >= min_len]
    if len(paths) != flow_value:
        raise AssertionError("flow decomposition produced a short path")
    return paths


def _was_forward(a: int, b: int) -> bool:
    # Forward arcs of the split network: in->out of one vertex, or out->in
    # across an edge.  Backward residual arcs are the reverses.
    if a // 2 == b // 2:
        return a % 2 == 0 and b % 2 == 1
    return a % 2 == 1 and b % 2 == 0
