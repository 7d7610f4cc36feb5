"""Quotient cusps are rational, so each should be a splice quotient.

For every cusp graph with 2 <= k <= 4 and curve weights in {2, 3} this
prints the discriminant group, the verdicts, and the equivariant equations.
"""

from splicekit.congruence import assemble_splice_quotient, check_congruence_conditions
from splicekit.corpus import quotient_cusp_family
from splicekit.equations import format_equations
from splicekit.splice import check_semigroup_conditions, resolution_to_splice

for es, g in quotient_cusp_family(max_k=4):
    semigroup = check_semigroup_conditions(resolution_to_splice(g)).passed
    congruence = check_congruence_conditions(g).verdict
    data = assemble_splice_quotient(g)
    factors = " x ".join(f"Z/{n}" for n in data.group.invariant_factors)
    print(f"{es}: {factors}, semigroup {'pass' if semigroup else 'fail'}, congruence {congruence}")
    for line in format_equations(data.equations):
        print("   ", line)
