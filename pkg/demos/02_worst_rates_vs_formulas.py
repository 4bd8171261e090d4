"""Exhaustive worst mixing rates against the closed-form sine ratios.

For the all-up map the worst rate over exchanges of N cells is
d sin(m pi/N) / (m sin(d pi/N)) with d = gcd(m, N); for the zigzag map the
same expression with 2N in place of N.  The table shows the search agreeing
with the formulas to machine precision, including the degenerate rows where
the rate is exactly 1.
"""

from permix import Strategy, canonical_signatures, sf_worst_rate, worst_mixing_rate, zigzag_worst_rate

print(f"{'m':>2} {'N':>2} {'family':>7} {'search':>16} {'formula':>16} {'argmax'}")
for m in (2, 3):
    canon = canonical_signatures(m)
    for n in range(m, 8):
        for name, sig, formula in (
            ("all-up", canon.sf, sf_worst_rate),
            ("zigzag", canon.zigzag, zigzag_worst_rate),
        ):
            res = worst_mixing_rate(sig, n, strategy=Strategy.exhaustive())
            print(
                f"{m:>2} {n:>2} {name:>7} {res.value:>16.12f} "
                f"{formula(m, n):>16.12f}  {res.argmax.to_text()}"
            )
