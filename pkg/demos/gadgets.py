"""Graph problems encoded as explanation problems.

Run: python3 demos/gadgets.py
"""

from qabduct import ABox, assertion, enumerate_minimal, has_explanation, is_necessary, recognize
from qabduct.testkit import (
    DirectedGraph, gadget_homomorphism, gadget_hp_nohp, gadget_odd_min_vertex_cover, has_homomorphism,
    min_vertex_cover,
)

triangle = DirectedGraph((0, 1, 2), {(0, 1), (1, 2), (2, 0)})
edge = DirectedGraph(("a", "b"), {("a", "b")})
path = DirectedGraph((0, 1, 2), {(0, 1), (1, 2)})

print("Homomorphism into a single edge")
for g in (edge, path, triangle):
    p, _ = gadget_homomorphism(g, edge)
    print(f"  {sorted(g.edges)}: explanation exists={has_explanation(p)}, oracle={has_homomorphism(g, edge)}")

print("\nParity of a minimum vertex cover")
for g in (edge, path, triangle):
    p, alpha = gadget_odd_min_vertex_cover(g)
    print(f"  {sorted(g.edges)}: cover size {min_vertex_cover(g)}, {alpha} necessary={is_necessary(p, alpha, 'card')}")

print("\nHamiltonian path in G, none in G'")
single, pair = DirectedGraph((0,), set()), DirectedGraph((0, 1), set())
p, e = gadget_hp_nohp(single, pair)
print("  clique labels E =", e)
print("  E is irredundant:", recognize(p, e, "subset"))
print("  E is a smallest fix:", recognize(p, e, "card"))
shortcut = ABox([assertion("ep", "w_0", "w_1")])
print("  a single ep-edge also explains:", recognize(p, shortcut), "->", [str(x) for x in enumerate_minimal(p, "card")])
