"""Closed-form values for the worst mixing rates and related spectral quantities.

The zigzag and all-up families admit exact worst-rate formulas in terms of
sine ratios; circulant constructions have explicit subleading moduli; the
degenerate worst rate (value exactly 1) is characterised combinatorially; and
for the tent map the nonleading transfer spectrum is confined to an explicit
compact convex region of the plane.

Degenerate cell counts need care.  At N = m every branch of every map in the
family covers the whole interval cellwise, the reduced matrix is the all-ones
matrix, every composition is topologically mixing, and the worst rate is 1/m.
The sine-ratio formulas do not extend there (the underlying circulant
identities require at least 3 reduced cells), so the functions below return
the true value 1/m instead.  Likewise the folded circulant on 2 cells is the
all-ones matrix with subleading modulus 0, not the sine-ratio value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import cos, gcd, pi, sin, tan

import numpy as np

from .errors import DomainError
from .matrices import IntMatrix
from .maps import SlopeSignature, canonical_signatures


def _require_family(m: int, n: int) -> None:
    if m < 2:
        raise DomainError(f"branch count must be >= 2, got m={m}")
    if n < m:
        raise DomainError(f"cell count N={n} must be >= branch count m={m}")


def zigzag_worst_rate(m: int, n: int) -> float:
    """Worst rate over exchanges for the alternating-slope map.

    With d = gcd(m, 2N) the value is d sin(m pi / 2N) / (m sin(d pi / 2N)),
    which is exactly 1 whenever d = m and N > m.  At N = m the formula
    degenerates and the true value 1/m is returned (see module docstring).
    """
    _require_family(m, n)
    if n == m:
        return 1.0 / m
    d = gcd(m, 2 * n)
    if d == m:
        return 1.0
    return d * sin(m * pi / (2 * n)) / (m * sin(d * pi / (2 * n)))


def sf_worst_rate(m: int, n: int) -> float:
    """Worst rate over exchanges for the all-up (mod-one stretch) map.

    With d = gcd(m, N) the value is d sin(m pi / N) / (m sin(d pi / N)),
    exactly 1 whenever m divides N with N > m.  At N = m the formula is 0/0
    and the true value 1/m is returned.
    """
    _require_family(m, n)
    if n == m:
        return 1.0 / m
    d = gcd(m, n)
    if d == m:
        return 1.0
    return d * sin(m * pi / n) / (m * sin(d * pi / n))


def circulant_tau_formula(kind: str, m: int, n: int) -> float:
    """Subleading modulus of the symmetric circulant (C) or its folded sum (D).

    sin(m pi/N)/sin(pi/N) for C and twice that for D, for coprime 1 <= m <= N.
    Degenerate orders return the true values: 0 for order 1, and 0 for the
    folded matrix on 2 cells (it is the all-ones matrix there).
    """
    if kind not in ("C", "D"):
        raise DomainError(f"kind must be 'C' or 'D', got {kind!r}")
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if gcd(m, n) != 1:
        raise DomainError(f"m and n must be coprime, got gcd({m},{n})={gcd(m, n)}")
    if n == 1:
        return 0.0
    if kind == "D" and n == 2:
        return 0.0
    base = sin(m * pi / n) / sin(pi / n)
    return base if kind == "C" else 2.0 * base


def degeneracy_predicate(m: int, n: int, sig: SlopeSignature) -> bool:
    """Whether the worst rate over exchanges equals exactly 1.

    True when some exchange destroys topological mixing: either m divides N,
    or m divides 2N and the map is the zigzag or its inversion.  At N = m no
    exchange can destroy mixing (the reduced matrix is all-ones), so the
    answer is False there regardless of divisibility.
    """
    _require_family(m, n)
    if sig.m != m:
        raise DomainError(f"signature has m={sig.m}, expected {m}")
    if n == m:
        return False
    if n % m == 0:
        return True
    canon = canonical_signatures(m)
    return (2 * n) % m == 0 and sig in (canon.zigzag, canon.inverted_zigzag)


def asymptotic_constant(m: int) -> Fraction:
    """The family-wide gap constant 12 / (m^4 - m^2) for odd m >= 3, exactly."""
    if m < 3 or m % 2 == 0:
        raise DomainError(f"constant defined for odd m >= 3, got {m}")
    return Fraction(12, m**4 - m**2)


@dataclass(frozen=True)
class EigenvalueRegion:
    """Compact convex region confining nonleading tent-composition eigenvalues.

    For odd N the region is the vertical strip -cos^2(pi/2N) <= Re <= cos(pi/N)
    cut by the two slanted half-planes Re +- Im tan(pi/N) <= 1.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 3 or self.n % 2 == 0:
            raise DomainError(f"region defined for odd N >= 3, got {self.n}")

    @property
    def re_min(self) -> float:
        return -cos(pi / (2 * self.n)) ** 2

    @property
    def re_max(self) -> float:
        return cos(pi / self.n)

    @property
    def slant_slope(self) -> float:
        return tan(pi / self.n)


@dataclass(frozen=True)
class RegionCheck:
    inside: bool
    active_constraint: str
    margins: tuple[tuple[str, float], ...]


def tent_region_contains(lam: complex, n: int, slack: float = 1e-9) -> RegionCheck:
    """Membership test with per-constraint margins (negative margin = violated).

    The active constraint is the one with the smallest margin, i.e. the
    boundary piece the point is closest to crossing.
    """
    region = EigenvalueRegion(n)
    lam = complex(lam)
    margins = (
        ("re_min", lam.real - region.re_min),
        ("re_max", region.re_max - lam.real),
        ("slant", 1.0 - (lam.real + abs(lam.imag) * region.slant_slope)),
    )
    inside = all(v >= -slack for _, v in margins)
    active = min(margins, key=lambda kv: kv[1])[0]
    return RegionCheck(inside=inside, active_constraint=active, margins=margins)


def tent_cycle_matrix(n: int) -> IntMatrix:
    """Row permutation of the tent reduced matrix whose digraph holds an N-cycle.

    Defined for odd N = 2s+1.  Nonzero pattern: rows 1 and 3 carry ones in
    columns 1,2; rows 2h-2 and 2h+1 carry ones in columns 2h-1, 2h for
    2 <= h <= s; entry (N-1, N) is 2.  Spectrum: leading 2, eigenvalue 0 with
    multiplicity s, and 2 cos(2 pi r / N) for r = 1..s.
    """
    if n < 3 or n % 2 == 0:
        raise DomainError(f"defined for odd N >= 3, got {n}")
    s = (n - 1) // 2
    d = np.zeros((n, n), dtype=np.int64)
    for i in (1, 3):
        for j in (1, 2):
            d[i - 1, j - 1] = 1
    for h in range(2, s + 1):
        for i in (2 * h - 2, 2 * h + 1):
            for j in (2 * h - 1, 2 * h):
                d[i - 1, j - 1] = 1
    d[n - 2, n - 1] = 2
    return IntMatrix(d)
