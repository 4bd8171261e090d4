"""Piecewise-linear interval maps with slope +-m and interval-exchange permutations.

A map in the family is determined by a sign vector (eps_1, ..., eps_m): on the
j-th subinterval of the uniform m-cell partition of [0,1] it is affine with
slope m*eps_j, mapping that cell onto [0,1].  An interval exchange permutes the
N cells of the uniform N-cell partition by translation.  Compositions
g = sigma o f are evaluated in exact rational arithmetic so that the Markov
matrices built downstream never see floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DomainError

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class SlopeSignature:
    """Sign vector selecting one map out of the 2^m slope-(+-m) family."""

    m: int
    epsilons: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise DomainError(f"branch count must be >= 2, got m={self.m}")
        eps = tuple(int(e) for e in self.epsilons)
        if len(eps) != self.m or any(e not in (-1, 1) for e in eps):
            raise DomainError(
                f"need exactly m={self.m} slope signs, each +1 or -1, got {self.epsilons!r}"
            )
        object.__setattr__(self, "epsilons", eps)

    @classmethod
    def from_text(cls, text: str) -> "SlopeSignature":
        """Parse the '+-+' text form (one sign per branch)."""
        if not text or any(c not in "+-" for c in text):
            raise DomainError(f"signature text must be a nonempty string over +-, got {text!r}")
        return cls(len(text), tuple(1 if c == "+" else -1 for c in text))

    def to_text(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.epsilons)

    def reversed(self) -> "SlopeSignature":
        return SlopeSignature(self.m, self.epsilons[::-1])

    def negated(self) -> "SlopeSignature":
        return SlopeSignature(self.m, tuple(-e for e in self.epsilons))


class CanonicalSignatures(NamedTuple):
    sf: SlopeSignature
    zigzag: SlopeSignature
    inverted_zigzag: SlopeSignature


def canonical_signatures(m: int) -> CanonicalSignatures:
    """The all-up map, the alternating map starting up, and its inversion.

    For m=2 the zigzag member is the tent map and the all-up member is the
    doubling map.
    """
    if m < 2:
        raise DomainError(f"branch count must be >= 2, got m={m}")
    sf = SlopeSignature(m, (1,) * m)
    zig = SlopeSignature(m, tuple(1 if j % 2 == 0 else -1 for j in range(m)))
    return CanonicalSignatures(sf, zig, zig.negated())


def symmetry_orbit(sig: SlopeSignature) -> frozenset[SlopeSignature]:
    """Orbit of a signature under reversal and global sign flip.

    All members share the same worst mixing rate for every cell count, so one
    representative per orbit suffices in sweeps.
    """
    return frozenset(
        {sig, sig.reversed(), sig.negated(), sig.reversed().negated()}
    )


def all_signatures(m: int) -> tuple[SlopeSignature, ...]:
    """All 2^m sign vectors for branch count m, in lexicographic (+ first) order."""
    if m < 2:
        raise DomainError(f"branch count must be >= 2, got m={m}")
    out = []
    for bits in range(2**m):
        eps = tuple(1 if (bits >> (m - 1 - j)) & 1 == 0 else -1 for j in range(m))
        out.append(SlopeSignature(m, eps))
    return tuple(out)


def orbit_representatives(m: int) -> tuple[SlopeSignature, ...]:
    """One signature per symmetry orbit: the first member in '+' -before-'-' order."""
    seen: set[SlopeSignature] = set()
    reps = []
    for sig in all_signatures(m):
        if sig in seen:
            continue
        seen.update(symmetry_orbit(sig))
        reps.append(sig)
    return tuple(reps)


@dataclass(frozen=True)
class IntervalPermutation:
    """A permutation of the N uniform cells, stored as one-based images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if n < 1 or sorted(images) != list(range(1, n + 1)):
            raise DomainError(f"images must be a bijection of 1..N, got {self.images!r}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "IntervalPermutation":
        if n < 1:
            raise DomainError(f"cell count must be >= 1, got {n}")
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_text(cls, text: str) -> "IntervalPermutation":
        """Parse the comma-separated one-based image form, e.g. '2,3,1'."""
        try:
            images = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise DomainError(f"permutation text must be comma-separated integers, got {text!r}") from exc
        return cls(images)

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def inverse(self) -> "IntervalPermutation":
        inv = [0] * self.n
        for j, v in enumerate(self.images, start=1):
            inv[v - 1] = j
        return IntervalPermutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(v == j for j, v in enumerate(self.images, start=1))


@dataclass(frozen=True)
class ComposedMap:
    """The composition sigma o f: stretch by the signed-slope map, then exchange cells."""

    signature: SlopeSignature
    perm: IntervalPermutation

    def __post_init__(self) -> None:
        if self.perm.n < self.signature.m:
            raise DomainError(
                f"cell count N={self.perm.n} must be >= branch count m={self.signature.m}"
            )

    @property
    def m(self) -> int:
        return self.signature.m

    @property
    def n(self) -> int:
        return self.perm.n

    def describe(self) -> str:
        return f"sig={self.signature.to_text()} perm={'-'.join(map(str, self.perm.images))} N={self.n}"


def composed_map(signature: SlopeSignature, perm: IntervalPermutation | None = None,
                 n: int | None = None) -> ComposedMap:
    """Convenience constructor; omitting the permutation selects the identity on n cells."""
    if perm is None:
        if n is None:
            raise DomainError("either a permutation or a cell count is required")
        perm = IntervalPermutation.identity(n)
    return ComposedMap(signature, perm)


def _as_fraction(x: Rational) -> Fraction:
    # floats are exact binary rationals, so Fraction(x) loses nothing
    return x if isinstance(x, Fraction) else Fraction(x)


def eval_map(g: ComposedMap, x: Rational) -> Fraction:
    """Evaluate sigma(f(x)) exactly at a rational point of [0,1].

    Cells are half open on the right; the right endpoint x=1 uses the last
    branch (and the last exchange cell), i.e. the left-continuous extension.
    """
    xf = _as_fraction(x)
    if not 0 <= xf <= 1:
        raise DomainError(f"point {x!r} outside [0,1]")
    m, n = g.m, g.n
    scaled = m * xf
    j = m if xf == 1 else int(scaled) + 1
    if g.signature.epsilons[j - 1] == 1:
        fx = scaled - (j - 1)
    else:
        fx = j - scaled
    cell = n if fx == 1 else int(n * fx) + 1
    return fx + Fraction(g.perm(cell) - cell, n)
