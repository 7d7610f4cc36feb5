"""A splice diagram that satisfies the link conditions but has no splice-type equations.

The diagram has nodes with weights (2,3,1) and (2,3,37).  Its edge
determinant is positive, yet the weight 1 cannot be written as a sum of
2s and 3s, so no admissible monomial exists on that edge.
"""

from splicekit import corpus
from splicekit.equations import generate_splice_equations
from splicekit.errors import ConditionError
from splicekit.splice import check_semigroup_conditions, validate_splice_diagram

d = corpus.semigroup_failure_diagram()
report = validate_splice_diagram(d)
print("link conditions:", report.facts["verdict"])
print("edge determinants:", report.facts["edge_determinants"])

cert = check_semigroup_conditions(d)
for e in cert.entries:
    print(e.to_json())

try:
    generate_splice_equations(d)
except ConditionError as exc:
    print("no equations:", exc)
