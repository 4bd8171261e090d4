"""Eigenvalue machinery: subleading moduli, graph structure tests, classical bounds.

Matrices with constant row and column sums fix the all-ones vector and leave
its orthogonal complement (the zero-sum subspace) invariant.  The spectrum is
split exactly along that decomposition: the leading eigenvalue is the common
row sum, the nonleading ones are computed after deflating the all-ones
direction, and the subleading modulus tau is the largest nonleading modulus.

Topological questions (irreducibility, primitivity) are settled by exact
integer graph algorithms, never by floating-point thresholds; the spectral
picture is only cross-checked against them in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import cos, gcd, pi, tan

import numpy as np

from .errors import CapacityError, DomainError
from .matrices import IntMatrix, as_array, reduced_markov
from .maps import ComposedMap

MU_MAX_ORDER = 20
CIRCUIT_MAX_ORDER = 12
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Complex spectrum split into the leading eigenvalue and the zero-sum rest."""

    order: int
    leading: complex
    nonleading: tuple[complex, ...]
    tau: float

    @property
    def eigenvalues(self) -> tuple[complex, ...]:
        return (self.leading,) + self.nonleading


@lru_cache(maxsize=None)
def _zero_sum_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the zero-sum subspace as columns of an n x (n-1) matrix."""
    x = np.zeros((n, n))
    x[:, 0] = 1.0 / np.sqrt(n)
    x[np.arange(n - 1), np.arange(1, n)] = 1.0
    q, _ = np.linalg.qr(x)
    v = q[:, 1:].copy()
    v.setflags(write=False)
    return v


def _constant_sums(arr: np.ndarray) -> tuple[float, float]:
    rows = arr.sum(axis=1)
    cols = arr.sum(axis=0)
    scale = max(1.0, float(np.abs(arr).max(initial=0.0)) * arr.shape[0])
    if np.ptp(rows) > 1e-9 * scale or np.ptp(cols) > 1e-9 * scale:
        raise DomainError("leading/nonleading split requires constant row and column sums")
    return float(rows[0]), float(cols[0])


_EXACT_MAX_ORDER = 64


def _poly_deriv(c: list) -> list:
    n = len(c) - 1
    return [c[i] * (n - i) for i in range(n)]


def _poly_monic(c: list) -> list:
    lead = c[0]
    return [x / lead for x in c]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    from fractions import Fraction

    rem = [Fraction(x) for x in a]
    quot = []
    db = len(b) - 1
    while len(rem) - 1 >= db:
        coef = rem[0] / b[0]
        quot.append(coef)
        for i in range(db + 1):
            rem[i] -= coef * b[i]
        rem.pop(0)
    while rem and rem[0] == 0:
        rem.pop(0)
    return quot, rem


def _poly_gcd(a: list, b: list) -> list:
    from fractions import Fraction

    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return _poly_monic(a)


def _exact_nonleading_tau(arr_int: np.ndarray, c: int) -> float | None:
    """Subleading modulus of an integer matrix via its exact characteristic polynomial.

    Backward-stable eigensolvers lose eps^(1/k) digits on Jordan blocks of
    size k; the characteristic polynomial is exact, the leading factor
    (lambda - c) and all zero roots divide out exactly, and the square-free
    part has simple, well-separated roots of a low-degree small-coefficient
    polynomial, so its companion roots (plus one Newton step) carry full
    double precision.  Returns None when the input is out of range.
    """
    n = arr_int.shape[0]
    if n > _EXACT_MAX_ORDER:
        return None
    p = list(exact_charpoly(arr_int))
    # exact synthetic division by (lambda - c)
    q = []
    carry = 0
    for coef in p:
        carry = coef + carry * c
        q.append(carry)
    if q.pop() != 0:
        return None  # c is not an exact root: sums were not truly constant
    # strip exact zero roots
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    if len(q) == 1:
        return 0.0
    deriv = _poly_deriv(q)
    g = _poly_gcd(q, deriv)
    if len(g) > 1:
        sf, rem = _poly_divmod(q, g)
        if rem:
            return None
    else:
        sf = [float(x) for x in q]
    coeffs = np.array([float(x) for x in sf])
    roots = np.roots(coeffs)
    # one Newton step per simple root to shed companion-matrix rounding
    dcoeffs = np.polyder(coeffs)
    val = np.polyval(coeffs, roots)
    dval = np.polyval(dcoeffs, roots)
    safe = np.abs(dval) > 1e-300
    roots[safe] = roots[safe] - val[safe] / dval[safe]
    return float(np.abs(roots).max())


def spectrum(M) -> Spectrum:
    """Full spectrum of a constant-row/column-sum matrix with the exact split.

    The nonleading part comes from the restriction to the zero-sum subspace,
    so the all-ones eigenvector is deflated exactly rather than matched
    numerically.  For order 1 the subleading modulus is 0 by convention.
    """
    raw = as_array(M)
    arr = raw.astype(float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DomainError(f"matrix must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n > 4096:
        raise CapacityError(f"order {n} exceeds the 4096 cap")
    if n == 1:
        return Spectrum(order=1, leading=complex(arr[0, 0]), nonleading=(), tau=0.0)
    rs, _ = _constant_sums(arr)
    v = _zero_sum_basis(n)
    restricted = v.T @ arr @ v
    symmetric = bool(np.allclose(arr, arr.T, rtol=0.0, atol=0.0))
    if symmetric:
        rest = np.linalg.eigvalsh((restricted + restricted.T) / 2).astype(complex)
    else:
        rest = np.linalg.eigvals(restricted)
    t = float(np.abs(rest).max())
    # Jordan blocks cost a backward-stable solver eps^(1/k) digits; integer
    # inputs admit an exact route through the characteristic polynomial
    # (symmetric inputs only need it to pin an exactly-zero subleading modulus)
    if (not symmetric or t < 1e-12) and np.issubdtype(raw.dtype, np.integer) and n <= _EXACT_MAX_ORDER:
        exact = _exact_nonleading_tau(raw, int(round(rs)))
        if exact is not None:
            t = exact
            if t == 0.0:
                rest = np.zeros(n - 1, dtype=complex)
    order_key = np.lexsort((-rest.real, -np.abs(rest)))
    rest = rest[order_key]
    return Spectrum(
        order=n,
        leading=complex(rs),
        nonleading=tuple(complex(z) for z in rest),
        tau=t,
    )


def tau(M) -> float:
    """Subleading modulus: max |lambda| over the zero-sum part of the spectrum."""
    return spectrum(M).tau


def exact_charpoly(M) -> tuple[int, ...]:
    """Integer characteristic polynomial coefficients, highest degree first.

    Faddeev-LeVerrier over Python ints; exact for any integer matrix of order
    up to 64.  Useful for verifying spectral multiset identities without
    floating point, e.g. that collapsing only appends zero eigenvalues.
    """
    arr = as_array(M)
    n = arr.shape[0]
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DomainError(f"matrix must be square, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise DomainError("exact characteristic polynomial needs integer entries")
    if n > 64:
        raise CapacityError(f"exact characteristic polynomial supports order <= 64, got {n}")
    a = np.array([[int(v) for v in row] for row in arr], dtype=object)
    work = np.eye(n, dtype=object)
    coeffs = [1]
    for k in range(1, n + 1):
        work = a @ work
        trace = int(np.trace(work))
        ck, rem = divmod(-trace, k)
        if rem:  # pragma: no cover - algebra guarantees divisibility
            raise RuntimeError("trace not divisible in Faddeev-LeVerrier recursion")
        coeffs.append(ck)
        work = work + ck * np.eye(n, dtype=object)
    return tuple(coeffs)


def mixing_rate(g: ComposedMap) -> float:
    """Correlation decay rate of the composition: max(1, tau(A)) / m.

    Equals 1 exactly when the composition is not topologically mixing; the
    exact arbiter for that dichotomy is the graph test on the fine matrix.
    """
    a = reduced_markov(g)
    return max(1.0, tau(a)) / g.m


def spectrum_to_csv(spec: Spectrum) -> str:
    """CSV form: header with order and row sum, then re,im rows sorted by
    descending modulus and then descending real part."""
    vals = sorted(spec.eigenvalues, key=lambda z: (-abs(z), -z.real))
    lines = [f"order={spec.order},rowsum={_fmt(spec.leading.real)}", "re,im"]
    lines.extend(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in vals)
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


# ---------------------------------------------------------------------------
# exact graph structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    """Graph-theoretic facts about a nonnegative matrix's digraph."""

    irreducible: bool
    primitive: bool
    period: int
    mu: Fraction | None = None
    kappa: int | None = None


def _adjacency_lists(adj: np.ndarray) -> list[np.ndarray]:
    return [np.flatnonzero(row) for row in adj]


def _reaches_all(succ: list[np.ndarray], start: int, n: int) -> bool:
    seen = np.zeros(n, dtype=bool)
    stack = list(succ[start])
    while stack:
        u = stack.pop()
        if not seen[u]:
            seen[u] = True
            stack.extend(succ[u])
    return bool(seen.all())


def _graph_structure(adj: np.ndarray) -> tuple[bool, int]:
    """(irreducible, period) by BFS; period 0 reported for reducible graphs."""
    n = adj.shape[0]
    succ = _adjacency_lists(adj)
    pred = _adjacency_lists(adj.T)
    if not (_reaches_all(succ, 0, n) and _reaches_all(pred, 0, n)):
        return False, 0
    level = np.full(n, -1, dtype=np.int64)
    level[0] = 0
    queue = [0]
    while queue:
        nxt = []
        for u in queue:
            for v in succ[u]:
                if level[v] < 0:
                    level[v] = level[u] + 1
                    nxt.append(int(v))
        queue = nxt
    g = 0
    for u in range(n):
        for v in succ[u]:
            g = gcd(g, int(level[u]) + 1 - int(level[v]))
    return True, abs(g)


def connectivity(M) -> StructureReport:
    """Exact irreducibility/primitivity via strong connectivity and cycle-length gcd."""
    arr = as_array(M)
    irr, period = _graph_structure(arr > 0)
    return StructureReport(irreducible=irr, primitive=irr and period == 1, period=period)


def row_relation_classes(M) -> tuple[tuple[int, ...], ...]:
    """Partition of the one-based column indices by co-occurrence within rows.

    Two columns are related when some row is positive in both; classes are the
    transitive closure, computed by union-find.
    """
    arr = as_array(M)
    n = arr.shape[1]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in arr:
        hits = np.flatnonzero(row)
        for other in hits[1:]:
            ra, rb = find(int(hits[0])), find(int(other))
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j + 1)
    return tuple(tuple(g) for g in sorted(groups.values(), key=lambda g: g[0]))


def irreducibility_index(M, denominator: int | None = None) -> Fraction:
    """Minimum total weight leaving any nontrivial vertex subset, exactly.

    The matrix is an integer matrix whose division by ``denominator`` is
    doubly stochastic (by default the constant row sum).  All 2^N - 2 cuts are
    enumerated; the result is 0 exactly when the matrix is reducible.
    """
    arr = as_array(M)
    n = arr.shape[0]
    if n > MU_MAX_ORDER:
        raise CapacityError(f"cut enumeration supports order <= {MU_MAX_ORDER}, got {n}")
    rows = arr.sum(axis=1)
    cols = arr.sum(axis=0)
    if np.ptp(rows) != 0 or np.ptp(cols) != 0 or rows[0] != cols[0]:
        raise DomainError("index of irreducibility needs equal constant row and column sums")
    denom = int(rows[0]) if denominator is None else int(denominator)
    if denom <= 0:
        raise DomainError(f"denominator must be positive, got {denom}")
    if n == 1:
        return Fraction(0)
    c = int(rows[0])
    a = arr.astype(np.int64)
    masks = np.arange(1, 2**n - 1, dtype=np.uint32)
    best = None
    chunk = 1 << 16
    bit = (1 << np.arange(n, dtype=np.uint32))
    for start in range(0, masks.size, chunk):
        mm = masks[start:start + chunk]
        member = (mm[:, None] & bit[None, :]) != 0
        memf = member.astype(np.int64)
        inside = ((memf @ a) * memf).sum(axis=1)
        cut = memf.sum(axis=1) * c - inside
        lo = int(cut.min())
        best = lo if best is None else min(best, lo)
    return Fraction(best, denom)


def longest_circuit(M) -> int:
    """Length of the longest simple directed cycle; self-loops count as length 1."""
    arr = as_array(M)
    n = arr.shape[0]
    if n > CIRCUIT_MAX_ORDER:
        raise CapacityError(f"circuit search supports order <= {CIRCUIT_MAX_ORDER}, got {n}")
    adj = arr > 0
    succ = [int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in adj]
    best = 1 if adj.diagonal().any() else 0
    # dp[mask] = bitset of end vertices reachable from the anchor (lowest bit of
    # mask) along simple paths covering exactly mask
    dp = [0] * (1 << n)
    for s in range(n):
        dp[1 << s] = 1 << s
    for mask in range(1, 1 << n):
        ends = dp[mask]
        if ends == 0:
            continue
        anchor = (mask & -mask).bit_length() - 1
        size = bin(mask).count("1")
        e = ends
        while e:
            v = (e & -e).bit_length() - 1
            e &= e - 1
            out = succ[v]
            if size >= 2 and (out >> anchor) & 1:
                best = max(best, size)
            free = out & ~mask
            while free:
                w = (free & -free).bit_length() - 1
                free &= free - 1
                if w > anchor:
                    dp[mask | (1 << w)] |= 1 << w
    return best


# ---------------------------------------------------------------------------
# classical eigenvalue bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class EigenvalueBounds:
    value: complex
    fiedler: BoundCheck
    fiedler_ptak: BoundCheck | None
    kellogg_stephens: BoundCheck


@dataclass(frozen=True)
class BoundReport:
    order: int
    denominator: int
    mu: Fraction
    kappa: int
    bounds: tuple[EigenvalueBounds, ...]

    @property
    def all_pass(self) -> bool:
        for b in self.bounds:
            if not b.fiedler.passed or not b.kellogg_stephens.passed:
                return False
            if b.fiedler_ptak is not None and not b.fiedler_ptak.passed:
                return False
        return True


def bound_report(M, denominator: int | None = None, slack: float = BOUND_SLACK) -> BoundReport:
    """Check three published bounds on every nonleading eigenvalue of M/denominator.

    Fiedler: |1 - lambda| >= 2 (1 - cos(pi/N)) mu.
    Fiedler-Ptak (odd N only): |1 + lambda| >= (1 - cos(pi/N)) mu.
    Kellogg-Stephens: Re + |Im| tan(pi/kappa) <= 1 for kappa > 2; for
    kappa <= 2 the spectrum must be real, so the check degenerates to
    Re <= 1 and Im = 0.
    """
    arr = as_array(M)
    n = arr.shape[0]
    mu = irreducibility_index(arr, denominator)
    kappa = longest_circuit(arr)
    denom = int(arr.sum(axis=1)[0]) if denominator is None else int(denominator)
    spec = spectrum(arr)
    muf = float(mu)
    fied_rhs = 2.0 * (1.0 - cos(pi / n)) * muf
    ptak_rhs = (1.0 - cos(pi / n)) * muf
    rows = []
    for lam_raw in spec.nonleading:
        lam = lam_raw / denom
        fied = BoundCheck(abs(1 - lam), fied_rhs, abs(1 - lam) >= fied_rhs - slack)
        ptak = None
        if n % 2 == 1:
            ptak = BoundCheck(abs(1 + lam), ptak_rhs, abs(1 + lam) >= ptak_rhs - slack)
        if kappa > 2:
            lhs = lam.real + abs(lam.imag) * tan(pi / kappa)
            ks = BoundCheck(lhs, 1.0, lhs <= 1.0 + slack)
        else:
            ks = BoundCheck(lam.real, 1.0, lam.real <= 1.0 + slack and abs(lam.imag) <= slack)
        rows.append(EigenvalueBounds(lam, fied, ptak, ks))
    return BoundReport(order=n, denominator=denom, mu=mu, kappa=kappa, bounds=tuple(rows))
