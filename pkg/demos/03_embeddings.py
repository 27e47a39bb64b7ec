"""Rotation systems: faces, touch sets, and cycle sides.

The planar machinery never uses coordinates.  An embedding is a cyclic
neighbor order per vertex; faces fall out of dart tracing and the two sides
of an embedded cycle fall out of the angular order of attachment edges.
"""

from reconfkit import (
    Graph,
    NonPlanarError,
    classify_by_cycle,
    compute_or_validate_embedding,
    enumerate_faces,
    touch_set,
)

# A wheel: hub 0 inside the rim 1-2-3-4.
wheel = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4),
                  (1, 2), (2, 3), (3, 4), (4, 1)])
rs = compute_or_validate_embedding(wheel)
fs = enumerate_faces(rs)
print("wheel faces (as dart walks):")
for i, walk in enumerate(fs.walks):
    print(f"  face {i}: length {len(walk)}  boundary {sorted(fs.boundary_vertices(i))}")

outer = next(f for f in range(len(fs)) if len(fs.walks[f]) == 4)
print(f"\ntouch set of the outer face: {sorted(touch_set(wheel, rs, fs, outer))}")
print("(the hub touches it only through its rim neighbors)")

inside, outside = classify_by_cycle(wheel, rs, [1, 2, 3, 4])
print(f"\nrim cycle sides: inside={sorted(inside)} outside={sorted(outside)}")

# Non-planar graphs are rejected with a witness subgraph.
k5 = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
try:
    compute_or_validate_embedding(k5)
except NonPlanarError as exc:
    print(f"\nK5: {exc} ({len(exc.witness)} witness edges)")

# Euler bookkeeping: faces + vertices - edges = 2 per component.
tri2 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
rs2 = compute_or_validate_embedding(tri2)
fs2 = enumerate_faces(rs2)
print(f"\ntwo triangles: V={tri2.n} E={tri2.m} traced faces={len(fs2)} "
      f"-> V - E + F = {tri2.n - tri2.m + len(fs2)} = 2 * components")
