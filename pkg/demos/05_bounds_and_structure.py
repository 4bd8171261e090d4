"""Structure reports and classical eigenvalue bounds on one composition.

The composition below is irreducible and primitive; the report shows its cut
index, longest circuit, and the three classical bounds evaluated on every
nonleading eigenvalue of the doubly stochastic normalisation.
"""

from permix import (
    IntervalPermutation,
    SlopeSignature,
    bound_report,
    composed_map,
    connectivity,
    irreducibility_index,
    longest_circuit,
    reduced_markov,
    row_relation_classes,
)

g = composed_map(SlopeSignature.from_text("+-"), perm=IntervalPermutation((2, 1, 4, 3, 5)))
a = reduced_markov(g)

rep = connectivity(a)
print("reduced matrix:")
for row in a.a:
    print("  ", row.tolist())
print(f"irreducible={rep.irreducible} primitive={rep.primitive} period={rep.period}")
print("row-relation classes:", row_relation_classes(a))
print("cut index mu:", irreducibility_index(a, denominator=2))
print("longest circuit kappa:", longest_circuit(a))

report = bound_report(a, denominator=2)
print(f"\nbounds on eigenvalues of A/2 (mu={report.mu}, kappa={report.kappa}):")
for b in report.bounds:
    lam = b.value
    print(f"  lambda = {lam.real:+.6f}{lam.imag:+.6f}i")
    print(f"    |1-lambda| = {b.fiedler.lhs:.6f} >= {b.fiedler.rhs:.6f}  -> {b.fiedler.passed}")
    if b.fiedler_ptak is not None:
        print(f"    |1+lambda| = {b.fiedler_ptak.lhs:.6f} >= {b.fiedler_ptak.rhs:.6f}  -> {b.fiedler_ptak.passed}")
    print(f"    Re+|Im|tan(pi/kappa) = {b.kellogg_stephens.lhs:.6f} <= 1  -> {b.kellogg_stephens.passed}")
print("\nall bounds hold:", report.all_pass)
