"""Build a composition, evaluate it exactly, and inspect its transition matrices.

The tent map on three cells is the smallest interesting example: its reduced
matrix already shows an entry 2 (two branch pieces of one coarse cell land on
the same target cell).
"""

from fractions import Fraction

from permix import (
    IntervalPermutation,
    SlopeSignature,
    composed_map,
    eval_map,
    fine_markov,
    matrix_to_csv,
    reduced_markov,
)

tent = SlopeSignature.from_text("+-")
g = composed_map(tent, n=3)

print("tent map, identity exchange, N=3 cells")
for x in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
    print(f"  g({x}) = {eval_map(g, x)}")

print("\nfine transition matrix B (6 cells, one row per fine cell):")
print(matrix_to_csv(fine_markov(g)))

print("reduced matrix A (3 cells, entries count covering branch pieces):")
print(matrix_to_csv(reduced_markov(g)))

swapped = composed_map(tent, perm=IntervalPermutation((1, 3, 2)))
print("swapping the last two cells makes the composition non-mixing:")
print(matrix_to_csv(reduced_markov(swapped)))
