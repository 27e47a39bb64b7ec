"""Exact token addition/removal reconfiguration over feasible vertex sets.

The state space is the set of feasible configurations of size at most k;
moves add or remove a single token.  ``solve_tar`` runs a breadth-first
search and therefore returns shortest witnesses; a hard cap on visited
states keeps "no" distinguishable from "gave up".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .graph import Graph, _mask_connected, bits_of, mask_of


class Variant(str, Enum):
    DS = "ds"
    CDS = "cds"
    CCS = "ccs"


class BudgetExceededError(Exception):
    """The solver or an enumeration hit its state budget before deciding."""


@dataclass(frozen=True)
class Move:
    op: str  # "add" | "remove"
    vertex: int

    def __post_init__(self):
        if self.op not in ("add", "remove"):
            raise ValueError(f"unknown move op {self.op!r}")


@dataclass(frozen=True)
class ReconfSequence:
    """A start configuration plus an ordered list of single-token moves."""

    initial: frozenset
    moves: tuple[Move, ...]

    @property
    def length(self) -> int:
        return len(self.moves)

    def configurations(self) -> Iterator[frozenset]:
        """Replay the moves; raises ValueError on double-add/absent-remove."""
        current = self.initial
        yield current
        for m in self.moves:
            if m.op == "add":
                if m.vertex in current:
                    raise ValueError(f"adding already-present vertex {m.vertex}")
                current = current | {m.vertex}
            else:
                if m.vertex not in current:
                    raise ValueError(f"removing absent vertex {m.vertex}")
                current = current - {m.vertex}
            yield current

    def final(self) -> frozenset:
        last = self.initial
        for last in self.configurations():
            pass
        return last


@dataclass(frozen=True)
class ReconfInstance:
    variant: Variant
    graph: Graph
    source: frozenset
    target: frozenset
    k: int
    colors: tuple[int, ...] | None = None

    def __post_init__(self):
        g = self.graph
        object.__setattr__(self, "source", g.check_subset(self.source))
        object.__setattr__(self, "target", g.check_subset(self.target))
        if self.k < 1:
            raise ValueError("token bound k must be at least 1")
        if self.variant is Variant.CCS:
            if self.colors is None:
                raise ValueError("colors: required for the ccs variant")
            if len(self.colors) != g.n:
                raise ValueError("colors: must assign a color to every vertex")
            palette = set(self.colors)
            if palette and palette != set(range(1, max(palette) + 1)):
                raise ValueError("colors: must be contiguous starting at 1")
            if len(palette) > self.k:
                raise ValueError("colors: more color classes than the bound k")
        elif self.colors is not None:
            raise ValueError("colors: only the ccs variant is colored")
        for name, s in (("source", self.source), ("target", self.target)):
            if len(s) > self.k:
                raise ValueError(f"{name}: larger than the token bound")
            if not is_feasible(self, s):
                raise ValueError(f"{name}: not a feasible configuration")

    def num_colors(self) -> int:
        return 0 if self.colors is None else len(set(self.colors))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    kind: str | None = None  # wrong-start | wrong-end | illegal-move |
    #                          size-exceeded | infeasible-step
    step: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


class _Context:
    """Precomputed bitmask machinery shared by the feasibility predicates."""

    def __init__(self, inst: ReconfInstance):
        g = inst.graph
        self.n = g.n
        self.k = inst.k
        self.full = g.full_mask()
        self.adj = [g.adjacency_mask(v) for v in range(g.n)]
        self.closed = [g.closed_mask(v) for v in range(g.n)]
        self.variant = inst.variant
        if inst.variant is Variant.CCS:
            palette = sorted(set(inst.colors or ()))
            self.color_masks = [
                mask_of(v for v in range(g.n) if inst.colors[v] == c)
                for c in palette
            ]
        else:
            self.color_masks = []

    def feasible(self, mask: int) -> bool:
        count = bin(mask).count("1")
        if count > self.k:
            return False
        if self.variant is Variant.CCS:
            for cm in self.color_masks:
                if not (mask & cm):
                    return False
            return _mask_connected(mask, self.adj)
        dominated = 0
        for v in bits_of(mask):
            dominated |= self.closed[v]
        if dominated != self.full:
            return False
        if self.variant is Variant.CDS:
            return _mask_connected(mask, self.adj)
        return True


def is_feasible(inst: ReconfInstance, s: Iterable[int]) -> bool:
    """Feasibility of one configuration under the instance's variant."""
    s = inst.graph.check_subset(s)
    return _Context(inst).feasible(mask_of(s))


def _successor_masks(ctx: _Context, mask: int) -> list[int]:
    out = []
    for v in bits_of(mask):
        cand = mask & ~(1 << v)
        if ctx.feasible(cand):
            out.append(cand)
    if bin(mask).count("1") < ctx.k:
        absent = ctx.full & ~mask
        for v in bits_of(absent):
            cand = mask | (1 << v)
            if ctx.feasible(cand):
                out.append(cand)
    out.sort(key=_mask_sort_key)
    return out


def _mask_sort_key(mask: int) -> tuple[int, ...]:
    return tuple(bits_of(mask))


def feasible_successors(inst: ReconfInstance, s: Iterable[int]) -> list[frozenset]:
    """All feasible configurations one token move away, in lexicographic order."""
    s = inst.graph.check_subset(s)
    ctx = _Context(inst)
    return [frozenset(bits_of(m)) for m in _successor_masks(ctx, mask_of(s))]


def solve_tar(
    inst: ReconfInstance, budget: int = 10_000_000
) -> ReconfSequence | None:
    """Shortest reconfiguration sequence from source to target, if any.

    BFS over the reconfiguration graph with deterministic lexicographic
    tie-breaking.  Returns None when the target is unreachable; raises
    ``BudgetExceededError`` once more than ``budget`` states were visited,
    which is distinct from a proven "no".
    """
    ctx = _Context(inst)
    start = mask_of(inst.source)
    goal = mask_of(inst.target)
    parent: dict[int, tuple[int, Move] | None] = {start: None}
    if start == goal:
        return ReconfSequence(inst.source, ())
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        for succ in _successor_masks(ctx, mask):
            if succ in parent:
                continue
            diff = mask ^ succ
            v = diff.bit_length() - 1
            move = Move("add" if succ & diff else "remove", v)
            parent[succ] = (mask, move)
            if succ == goal:
                moves = []
                cur = succ
                while parent[cur] is not None:
                    prev, mv = parent[cur]
                    moves.append(mv)
                    cur = prev
                moves.reverse()
                return ReconfSequence(inst.source, tuple(moves))
            if len(parent) > budget:
                raise BudgetExceededError(
                    f"visited more than {budget} configurations"
                )
            queue.append(succ)
    return None


def verify_sequence(inst: ReconfInstance, seq: ReconfSequence) -> VerificationReport:
    """Step-by-step check of a sequence against the instance.

    Configuration i is the state after move i (the initial configuration is
    step 0).  The first violation is reported.
    """
    ctx = _Context(inst)
    if seq.initial != inst.source:
        return VerificationReport(
            False, "wrong-start", 0, "initial configuration differs from source"
        )
    current = set(seq.initial)
    for v in current:
        if not (0 <= v < ctx.n):
            return VerificationReport(
                False, "illegal-move", 0, f"initial configuration has bad vertex {v}"
            )

    def check_state(step: int) -> VerificationReport | None:
        if len(current) > ctx.k:
            return VerificationReport(
                False, "size-exceeded", step,
                f"configuration at step {step} has {len(current)} > k tokens",
            )
        if not ctx.feasible(mask_of(current)):
            return VerificationReport(
                False, "infeasible-step", step,
                f"configuration at step {step} is infeasible",
            )
        return None

    bad = check_state(0)
    if bad is not None:
        return bad
    for i, mv in enumerate(seq.moves, start=1):
        if not (0 <= mv.vertex < ctx.n):
            return VerificationReport(
                False, "illegal-move", i, f"move {i} names bad vertex {mv.vertex}"
            )
        if mv.op == "add":
            if mv.vertex in current:
                return VerificationReport(
                    False, "illegal-move", i,
                    f"move {i} adds already-present vertex {mv.vertex}",
                )
            current.add(mv.vertex)
        else:
            if mv.vertex not in current:
                return VerificationReport(
                    False, "illegal-move", i,
                    f"move {i} removes absent vertex {mv.vertex}",
                )
            current.remove(mv.vertex)
        bad = check_state(i)
        if bad is not None:
            return bad
    if frozenset(current) != inst.target:
        return VerificationReport(
            False, "wrong-end", len(seq.moves),
            "final configuration differs from target",
        )
    return VerificationReport(True)
