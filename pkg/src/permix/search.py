"""Maximisation of the subleading modulus over column permutations.

tperm(M) is the largest subleading modulus of M P(sigma) over the symmetric
group; scaling by the slope turns it into the worst correlation decay rate
over all interval exchanges.  Exhaustive enumeration streams permutations in
lexicographic order through batched eigensolves; ties at the optimum resolve
to the lexicographically smallest image vector, so results are deterministic
and independent of how the stream is chunked.  The restriction to
topologically mixing compositions is decided per permutation by the exact
graph test on the fine matrix, never by a spectral threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, permutations
from math import factorial

import numpy as np

from .errors import CapacityError, DomainError
from .maps import ComposedMap, IntervalPermutation, SlopeSignature
from .matrices import IntMatrix, as_array, fine_markov, reduced_markov
from .spectra import _graph_structure, _zero_sum_basis, tau

EXHAUSTIVE_MAX_CELLS = 9
TIE_TOL = 1e-12
_CHUNK = 16384


@dataclass(frozen=True)
class Strategy:
    """Search plan: exhaustive, seeded sampling, or the symmetric shortcut."""

    kind: str
    k: int | None = None
    seed: int | None = None

    @classmethod
    def exhaustive(cls) -> "Strategy":
        return cls("exhaustive")

    @classmethod
    def sampled(cls, k: int, seed: int) -> "Strategy":
        if k < 0:
            raise DomainError(f"sample count must be >= 0, got {k}")
        return cls("sampled", k=int(k), seed=int(seed))

    @classmethod
    def symmetric_shortcut(cls) -> "Strategy":
        return cls("symmetric_shortcut")

    def __str__(self) -> str:
        if self.kind == "sampled":
            return f"sampled(k={self.k},seed={self.seed})"
        return self.kind


@dataclass(frozen=True)
class SearchResult:
    """Optimum, a deterministic argmax, and how much work produced them."""

    value: float
    argmax: IntervalPermutation
    strategy: Strategy
    evaluated: int
    mixing_only: bool = False


def default_strategy(n: int) -> Strategy:
    """Exhaustive up to 7 cells, otherwise 10000 seeded samples."""
    return Strategy.exhaustive() if n <= 7 else Strategy.sampled(10000, 1)


def _perm_chunks(n: int, chunk: int = _CHUNK):
    """Yield (start_index, images_0based_int8_array) over S_n in lexicographic order."""
    it = permutations(range(n))
    start = 0
    while True:
        block = list(islice(it, chunk))
        if not block:
            return
        yield start, np.array(block, dtype=np.int8)
        start += len(block)


def _nth_permutation(n: int, index: int) -> tuple[int, ...]:
    """Images (one-based) of the index-th permutation of S_n in lexicographic order."""
    items = list(range(1, n + 1))
    out = []
    k = index
    for i in range(n, 0, -1):
        f = factorial(i - 1)
        out.append(items.pop(k // f))
        k %= f
    return tuple(out)


def _batch_taus(lmat: np.ndarray, v: np.ndarray, perms0: np.ndarray) -> np.ndarray:
    """Subleading moduli of M P(sigma) for a batch of 0-based image arrays.

    lmat is V^T M (deflated rows); column-permuting M by sigma permutes the
    columns of lmat the same way, so each restricted matrix is a gather plus
    one small matmul.
    """
    invs = np.argsort(perms0, axis=1)
    gathered = np.moveaxis(lmat[:, invs], 1, 0)  # (B, n-1, n)
    restricted = gathered @ v                    # (B, n-1, n-1)
    eig = np.linalg.eigvals(restricted)
    return np.abs(eig).max(axis=1)


def _fisher_yates(rng: np.random.Generator, n: int) -> np.ndarray:
    arr = np.arange(n, dtype=np.int8)
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        arr[i], arr[j] = arr[j], arr[i]
    return arr


def _sampled_perms(n: int, k: int, seed: int) -> np.ndarray:
    """Identity first, then k seeded Fisher-Yates draws (0-based images)."""
    rng = np.random.default_rng(seed)
    rows = [np.arange(n, dtype=np.int8)]
    rows.extend(_fisher_yates(rng, n) for _ in range(k))
    return np.stack(rows)


def _require_doubly_constant(M: IntMatrix) -> None:
    if M.row_sum is None or M.col_sum is None:
        raise DomainError("permutation search requires constant row and column sums")


def tperm_search(M: IntMatrix, strategy: Strategy | None = None) -> SearchResult:
    """Maximise the subleading modulus of M P(sigma) over permutations.

    Exhaustive search returns the exact optimum with the lexicographically
    smallest argmax among ties; sampling returns a reproducible lower bound
    with the identity always evaluated first; the symmetric shortcut is valid
    because a symmetric matrix already attains the optimum at the identity.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix(as_array(M))
    _require_doubly_constant(M)
    n = M.n
    strategy = strategy or default_strategy(n)

    if strategy.kind == "symmetric_shortcut":
        if not np.array_equal(M.a, M.a.T):
            raise DomainError("symmetric shortcut requires a symmetric matrix")
        return SearchResult(tau(M), IntervalPermutation.identity(n), strategy, evaluated=1)

    arr = M.a.astype(float)
    v = _zero_sum_basis(n)
    lmat = v.T @ arr

    if strategy.kind == "exhaustive":
        if n > EXHAUSTIVE_MAX_CELLS:
            raise CapacityError(
                f"exhaustive search is capped at {EXHAUSTIVE_MAX_CELLS} cells, got {n}"
            )
        taus = np.empty(factorial(n))
        for start, perms0 in _perm_chunks(n):
            taus[start:start + len(perms0)] = _batch_taus(lmat, v, perms0)
        best = float(taus.max())
        idx = int(np.flatnonzero(taus >= best - TIE_TOL)[0])
        return SearchResult(
            best, IntervalPermutation(_nth_permutation(n, idx)), strategy, evaluated=len(taus)
        )

    if strategy.kind == "sampled":
        perms0 = _sampled_perms(n, strategy.k or 0, strategy.seed or 0)
        taus = _batch_taus(lmat, v, perms0)
        best = float(taus.max())
        ties = np.flatnonzero(taus >= best - TIE_TOL)
        pick = min(ties, key=lambda i: tuple(perms0[i]))
        images = tuple(int(x) + 1 for x in perms0[pick])
        return SearchResult(
            best, IntervalPermutation(images), strategy, evaluated=len(perms0)
        )

    raise DomainError(f"unknown strategy kind {strategy.kind!r}")


def _mixing_feasibility(b_adj: np.ndarray, m: int, perms0: np.ndarray) -> np.ndarray:
    """Primitivity of B Q(sigma) for each permutation, by the exact graph test."""
    n = perms0.shape[1]
    offs = np.arange(m, dtype=np.int64)
    out = np.zeros(len(perms0), dtype=bool)
    for i, p0 in enumerate(perms0):
        inv = np.argsort(p0).astype(np.int64)
        qinv = (inv[:, None] * m + offs).ravel()
        irr, period = _graph_structure(b_adj[:, qinv])
        out[i] = irr and period == 1
    return out


def worst_mixing_rate(
    signature: SlopeSignature,
    n: int,
    mode: str = "all",
    strategy: Strategy | None = None,
) -> SearchResult:
    """Worst correlation decay rate over interval exchanges on n cells.

    mode="all" maximises over the whole symmetric group and rescales the raw
    optimum by max(1, .)/m.  mode="mixing_only" restricts to permutations
    whose composition is topologically mixing, decided per permutation by the
    exact graph test on the fine matrix, and errs when no permutation
    qualifies.
    """
    m = signature.m
    if n < m:
        raise DomainError(f"cell count N={n} must be >= branch count m={m}")
    if mode not in ("all", "mixing_only"):
        raise DomainError(f"mode must be 'all' or 'mixing_only', got {mode!r}")
    strategy = strategy or default_strategy(n)
    ident = IntervalPermutation.identity(n)
    a = reduced_markov(ComposedMap(signature, ident))

    if mode == "all":
        res = tperm_search(a, strategy)
        return SearchResult(
            max(1.0, res.value) / m, res.argmax, strategy, res.evaluated, mixing_only=False
        )

    b_adj = fine_markov(ComposedMap(signature, ident)).a > 0
    arr = a.a.astype(float)
    v = _zero_sum_basis(n)
    lmat = v.T @ arr

    if strategy.kind == "symmetric_shortcut":
        if not np.array_equal(a.a, a.a.T):
            raise DomainError("symmetric shortcut requires a symmetric reduced matrix")
        ok = _mixing_feasibility(b_adj, m, np.arange(n, dtype=np.int8)[None, :])
        if not ok[0]:
            raise DomainError("identity composition is not topologically mixing")
        return SearchResult(
            max(1.0, tau(a)) / m, ident, strategy, evaluated=1, mixing_only=True
        )

    if strategy.kind == "exhaustive":
        if n > EXHAUSTIVE_MAX_CELLS:
            raise CapacityError(
                f"exhaustive search is capped at {EXHAUSTIVE_MAX_CELLS} cells, got {n}"
            )
        total = factorial(n)
        taus = np.empty(total)
        feas = np.zeros(total, dtype=bool)
        for start, perms0 in _perm_chunks(n):
            stop = start + len(perms0)
            taus[start:stop] = _batch_taus(lmat, v, perms0)
            feas[start:stop] = _mixing_feasibility(b_adj, m, perms0)
        if not feas.any():
            raise DomainError("no permutation yields a topologically mixing composition")
        best = float(taus[feas].max())
        idx = int(np.flatnonzero(feas & (taus >= best - TIE_TOL))[0])
        return SearchResult(
            max(1.0, best) / m,
            IntervalPermutation(_nth_permutation(n, idx)),
            strategy,
            evaluated=total,
            mixing_only=True,
        )

    if strategy.kind == "sampled":
        perms0 = _sampled_perms(n, strategy.k or 0, strategy.seed or 0)
        taus = _batch_taus(lmat, v, perms0)
        feas = _mixing_feasibility(b_adj, m, perms0)
        if not feas.any():
            raise DomainError(
                "no sampled permutation yields a topologically mixing composition"
            )
        best = float(taus[feas].max())
        ties = np.flatnonzero(feas & (taus >= best - TIE_TOL))
        pick = min(ties, key=lambda i: tuple(perms0[i]))
        images = tuple(int(x) + 1 for x in perms0[pick])
        return SearchResult(
            max(1.0, best) / m,
            IntervalPermutation(images),
            strategy,
            evaluated=len(perms0),
            mixing_only=True,
        )

    raise DomainError(f"unknown strategy kind {strategy.kind!r}")


def gram_bound(M) -> float:
    """sqrt of the subleading modulus of M^T M: an upper bound for tperm(M)."""
    arr = as_array(M).astype(np.int64)
    return float(np.sqrt(tau(IntMatrix(arr.T @ arr))))


def mixing_compositions(signature: SlopeSignature, n: int):
    """Iterate topologically mixing compositions in lexicographic permutation order.

    Yields (permutation, nonleading eigenvalues of the reduced matrix of the
    composition).  Feasibility is the exact graph test on the fine matrix.
    """
    m = signature.m
    if n < m:
        raise DomainError(f"cell count N={n} must be >= branch count m={m}")
    if n > EXHAUSTIVE_MAX_CELLS:
        raise CapacityError(
            f"exhaustive enumeration is capped at {EXHAUSTIVE_MAX_CELLS} cells, got {n}"
        )
    ident = IntervalPermutation.identity(n)
    a = reduced_markov(ComposedMap(signature, ident)).a.astype(float)
    b_adj = fine_markov(ComposedMap(signature, ident)).a > 0
    v = _zero_sum_basis(n)
    lmat = v.T @ a
    for _, perms0 in _perm_chunks(n):
        feas = _mixing_feasibility(b_adj, m, perms0)
        if not feas.any():
            continue
        sel = perms0[feas]
        invs = np.argsort(sel, axis=1)
        gathered = np.moveaxis(lmat[:, invs], 1, 0)
        eig = np.linalg.eigvals(gathered @ v)
        for row, evs in zip(sel, eig):
            perm = IntervalPermutation(tuple(int(x) + 1 for x in row))
            yield perm, tuple(complex(z) for z in evs)
