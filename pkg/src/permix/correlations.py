"""Correlation functions of step observables under the compositions.

Observables constant on the cells of the uniform N- or Nm-cell partition form
a finite-dimensional space that the transfer operator maps to itself, so the
correlation sequence C(n) is computed exactly (up to float rounding) from
powers of the doubly stochastic fine transition matrix.  A seeded Monte Carlo
estimator cross-checks the exact path, and a ratio-median fit extracts the
empirical decay rate.  Bounded-variation observables beyond step functions
are out of scope; the step class realises the operator rate but is not
claimed to attain the infimum over all BV pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from hashlib import sha1
from math import fsum, sqrt
from statistics import median
from typing import Sequence

import numpy as np

from .errors import DomainError
from .maps import ComposedMap
from .matrices import fine_markov

NEGLIGIBLE = 1e-13


@dataclass(frozen=True)
class StepObservable:
    """Real values, one per cell of the uniform partition with ``level`` cells."""

    level: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if self.level < 1 or len(vals) != self.level:
            raise DomainError(
                f"need exactly level={self.level} cell values, got {len(self.values)}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def indicator(cls, level: int, cells: Sequence[int]) -> "StepObservable":
        """Indicator of a union of one-based cells."""
        chosen = set(cells)
        if not all(1 <= c <= level for c in chosen):
            raise DomainError(f"cells must lie in 1..{level}, got {sorted(chosen)}")
        return cls(level, tuple(1.0 if c in chosen else 0.0 for c in range(1, level + 1)))

    @classmethod
    def constant(cls, level: int, value: float = 1.0) -> "StepObservable":
        return cls(level, (float(value),) * level)

    def mean(self) -> float:
        return fsum(self.values) / self.level

    def at(self, x: float) -> float:
        """Value at a point of [0,1]; the right endpoint uses the last cell."""
        idx = min(int(x * self.level), self.level - 1)
        return self.values[idx]

    def content_hash(self) -> str:
        payload = f"{self.level}:" + ",".join(format(v, ".17g") for v in self.values)
        return sha1(payload.encode()).hexdigest()[:12]


def _refined(obs: StepObservable, g: ComposedMap) -> np.ndarray:
    """Observable values on the fine Nm partition (each coarse cell repeated m times)."""
    n, m = g.n, g.m
    if obs.level == n * m:
        return np.asarray(obs.values)
    if obs.level == n:
        return np.repeat(np.asarray(obs.values), m)
    raise DomainError(
        f"observable level {obs.level} must be N={n} or Nm={n * m} for this map"
    )


def transfer_matrix(g: ComposedMap) -> np.ndarray:
    """The doubly stochastic matrix B/m on the fine partition.

    The transfer operator acts on fine step observables as left multiplication
    by the transpose of this matrix.
    """
    return fine_markov(g).a / g.m


def _matvec_compensated(mat: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return np.array([fsum(mat[i, j] * vec[j] for j in np.flatnonzero(mat[i])) for i in range(len(vec))])


def correlation(g: ComposedMap, phi: StepObservable, psi: StepObservable, n: int) -> float:
    """Exact correlation of phi o g^n against psi under Lebesgue measure.

    Computed as (1/(Nm)) psi^T P^n phi - mean(phi) mean(psi) with P = B/m and
    compensated summation throughout; n = 0 gives the plain covariance.
    """
    if n < 0:
        raise DomainError(f"time must be >= 0, got {n}")
    p = transfer_matrix(g)
    fphi = _refined(phi, g)
    fpsi = _refined(psi, g)
    y = fphi.astype(float)
    for _ in range(n):
        y = _matvec_compensated(p, y)
    size = g.n * g.m
    cross = fsum(fpsi[i] * y[i] for i in range(size)) / size
    return cross - (fsum(fphi) / size) * (fsum(fpsi) / size)


@dataclass(frozen=True)
class DecayFit:
    """Consecutive-ratio decay estimate over the usable time range."""

    rates: tuple[float, ...]
    fitted_rate: float
    valid_range: tuple[int, int] | None


def decay_rate(g: ComposedMap, phi: StepObservable, psi: StepObservable, n_max: int) -> DecayFit:
    """Median of |C(n+1)|/|C(n)| over times where |C(n)| is above noise.

    The median is robust to sign-alternating correlations from negative real
    eigenvalues.  If every correlation is negligible the fitted rate is 0 with
    an empty range.
    """
    if n_max < 4:
        raise DomainError(f"need n_max >= 4, got {n_max}")
    values = [correlation(g, phi, psi, n) for n in range(n_max + 1)]
    rates = []
    used = []
    for n in range(n_max):
        if abs(values[n]) > NEGLIGIBLE:
            rates.append(abs(values[n + 1]) / abs(values[n]))
            used.append(n)
    if not rates:
        return DecayFit(rates=(), fitted_rate=0.0, valid_range=None)
    return DecayFit(
        rates=tuple(rates),
        fitted_rate=float(median(rates)),
        valid_range=(used[0], used[-1]),
    )


def _eval_points(g: ComposedMap, xs: np.ndarray, n: int) -> np.ndarray:
    """Vectorised float iteration of the composition (endpoint cells clipped)."""
    m, ncells = g.m, g.n
    eps = np.asarray(g.signature.epsilons)
    images0 = np.asarray(g.perm.images) - 1
    y = xs.copy()
    for _ in range(n):
        j = np.minimum((y * m).astype(np.int64), m - 1)
        up = eps[j] == 1
        y = np.where(up, y * m - j, (j + 1) - y * m)
        cell = np.minimum((y * ncells).astype(np.int64), ncells - 1)
        y = y + (images0[cell] - cell) / ncells
        y = np.clip(y, 0.0, 1.0)
    return y


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float


def monte_carlo_correlation(
    g: ComposedMap,
    phi: StepObservable,
    psi: StepObservable,
    n: int,
    samples: int,
    seed: int,
) -> McEstimate:
    """Plain Monte Carlo estimate of C(n) with a first-order standard error.

    Averages phi(g^n x) psi(x) over uniform draws and subtracts the product of
    independent sample means of phi and psi (fresh draws for each).  The
    generator is NumPy's seeded PCG64 and the summation order is fixed, so
    results are reproducible for a given (samples, seed).
    """
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    rng = np.random.default_rng(seed)
    phi_vals = np.asarray(_refined(phi, g))
    psi_vals = np.asarray(_refined(psi, g))
    size = g.n * g.m

    def level_at(vals: np.ndarray, xs: np.ndarray) -> np.ndarray:
        idx = np.minimum((xs * size).astype(np.int64), size - 1)
        return vals[idx]

    xs = rng.random(samples)
    prod = level_at(phi_vals, _eval_points(g, xs, n)) * level_at(psi_vals, xs)
    est1 = float(prod.mean())
    se1 = float(prod.std(ddof=1) / sqrt(samples)) if samples > 1 else 0.0

    ys = rng.random(samples)
    zs = rng.random(samples)
    phis = level_at(phi_vals, ys)
    psis = level_at(psi_vals, zs)
    mphi, mpsi = float(phis.mean()), float(psis.mean())
    se_phi = float(phis.std(ddof=1) / sqrt(samples)) if samples > 1 else 0.0
    se_psi = float(psis.std(ddof=1) / sqrt(samples)) if samples > 1 else 0.0

    value = est1 - mphi * mpsi
    se = sqrt(se1**2 + (mphi * se_psi) ** 2 + (mpsi * se_phi) ** 2)
    return McEstimate(value=value, std_error=se)


def eigenvector_observable(g: ComposedMap) -> StepObservable:
    """Fine observable aligned with the subleading right eigenvector of B/m.

    Right eigenvectors of the doubly stochastic fine matrix for eigenvalues
    other than 1 are automatically zero-sum, so pairing the observable with
    itself makes the correlation sequence decay at exactly the subleading
    modulus when that eigenvalue is real and simple (real part taken
    otherwise).  Scaled to unit maximum.
    """
    from .spectra import _zero_sum_basis

    p = transfer_matrix(g)
    size = g.n * g.m
    v = _zero_sum_basis(size)
    w, vecs = np.linalg.eig(v.T @ p @ v)
    pick = int(np.argmax(np.abs(w)))
    vec = (v @ vecs[:, pick]).real
    peak = np.abs(vec).max()
    if peak < 1e-12:
        vec = v[:, 0]
        peak = np.abs(vec).max()
    return StepObservable(size, tuple(vec / peak))
