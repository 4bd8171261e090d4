"""Where the nonleading eigenvalues of mixing tent compositions live.

For odd N every topologically mixing exchange of the tent map confines the
nonleading transfer spectrum to the strip -cos^2(pi/2N) <= Re <= cos(pi/N)
cut by the slanted lines Re +- Im tan(pi/N) = 1.  The scan below tabulates
how close the spectrum comes to each boundary piece.
"""

from collections import Counter
from math import cos, pi

from permix import canonical_signatures, mixing_compositions, tent_region_contains

N = 5
tent = canonical_signatures(2).zigzag

actives = Counter()
closest = {}
count = 0
for perm, eigs in mixing_compositions(tent, N):
    for lam in eigs:
        half = lam / 2
        if abs(half) <= 0.5:
            continue  # below the essential radius: the theorem says nothing
        count += 1
        check = tent_region_contains(half, N)
        assert check.inside
        actives[check.active_constraint] += 1
        for name, margin in check.margins:
            if name not in closest or margin < closest[name][0]:
                closest[name] = (margin, half, perm.to_text())

print(f"tent map, N={N}: {count} nonleading eigenvalues above the essential radius")
print(f"strip: {-cos(pi/(2*N))**2:.6f} <= Re <= {cos(pi/N):.6f}")
print("\nbinding constraint counts:", dict(actives))
print("\nsmallest margin per boundary piece:")
for name, (margin, lam, sigma) in sorted(closest.items()):
    print(f"  {name:>7}: margin {margin:.3e} at {lam:.6f} (exchange {sigma})")
