"""The two-node integral homology sphere, from resolution graph to equations.

Run with ``python3 demos/running_example.py``.
"""

from splicekit import corpus
from splicekit.equations import format_equations, generate_splice_equations
from splicekit.graph import intersection_matrix, validate_resolution_graph
from splicekit.splice import (
    check_semigroup_conditions,
    edge_determinant,
    resolution_to_splice,
    validate_splice_diagram,
)

g = corpus.two_node_zhs()
A = intersection_matrix(g)
print("vertices:", " ".join(A.names))
for row in A.entries:
    print("  ", " ".join(f"{x:4d}" for x in row))
print("det =", A.det(), "| negative definite:", A.is_negative_definite())
print("resolution graph valid:", validate_resolution_graph(g).passed)

# Suppress the valency-2 chains; weights are determinants of the branches.
d = resolution_to_splice(g)
for v in d.nodes:
    print(f"node {v}: weights", sorted(d.weight(v, u) for u in d.neighbors(v)))
print("edge determinant:", edge_determinant(d, "L", "R"))
print("splice diagram conditions:", validate_splice_diagram(d).facts["verdict"])

# Each edge weight must be a sum of reduced leaf weights from the far side.
for e in check_semigroup_conditions(d).entries:
    if e.node != e.toward and len(e.leaves) > 1:
        terms = " + ".join(f"{a}*{gen}" for a, gen in zip(e.witness.values(), e.generators))
        print(f"{e.node} -> {e.toward}: {e.target} = {terms}")

for line in format_equations(generate_splice_equations(d)):
    print(line)
