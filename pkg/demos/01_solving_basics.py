"""Tour of the exact reconfiguration engine.

Builds tiny instances of the three problem variants, solves them with the
breadth-first oracle, and replays the witnesses through the verifier.
"""

from reconfkit import (
    Graph,
    Move,
    ReconfInstance,
    ReconfSequence,
    Variant,
    feasible_successors,
    solve_tar,
    verify_sequence,
)


def show(title, seq):
    print(f"\n== {title}")
    if seq is None:
        print("   unreachable")
        return
    print(f"   {seq.length} moves from {sorted(seq.initial)}")
    for conf, move in zip(list(seq.configurations())[1:], seq.moves):
        print(f"   {move.op:>6} {move.vertex}  ->  {sorted(conf)}")


# A path on three vertices: sliding a connected dominating pair across.
path3 = Graph(3, [(0, 1), (1, 2)])
inst = ReconfInstance(
    Variant.CDS, path3, frozenset({0, 1}), frozenset({1, 2}), 2
)
print("successors of {1}:", [sorted(s) for s in feasible_successors(inst, {1})])
seq = solve_tar(inst)
show("connected dominating pair across a path", seq)
print("verifier says:", verify_sequence(inst, seq))

# Four isolated islands: the 4-cycle admits no move at k = 2.
square = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
islands = ReconfInstance(
    Variant.CDS, square, frozenset({0, 1}), frozenset({2, 3}), 2
)
show("4-cycle islands (provably stuck)", solve_tar(islands))

# Colored variant: tokens must keep one vertex of every color, so the
# hand-off has to pass through the three-token configuration.
triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
colored = ReconfInstance(
    Variant.CCS, triangle, frozenset({0, 1}), frozenset({1, 2}), 3,
    colors=(1, 2, 1),
)
show("two-colored triangle", solve_tar(colored))

# The verifier pinpoints the first broken step of a tampered sequence.
bad = ReconfSequence(frozenset({0, 1}), (Move("remove", 1), Move("add", 2)))
print("\ntampered sequence ->", verify_sequence(inst, bad))
