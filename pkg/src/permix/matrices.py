"""Integer matrices attached to the maps: Markov transition structure and friends.

Everything here is exact.  The fine transition matrix lives on the Nm-cell
partition and records which fine cells are covered by the image of each fine
cell; its block collapse is the N-cell reduced matrix with entries in
{0,1,2}.  Structured constructors cover permutation matrices, their block
expansion, the backwards identity, symmetric offset circulants and their
folded sums, the block lift/collapse pair, and the orientation-doubled matrix
whose upper-left quarter reproduces the zigzag reduced matrix.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .errors import CapacityError, DomainError, StructuralError
from .maps import ComposedMap, IntervalPermutation, SlopeSignature, canonical_signatures

MAX_ORDER = 4096


class IntMatrix:
    """Square nonnegative integer matrix with cached constant row/column sums."""

    __slots__ = ("a", "_row_sum", "_col_sum")

    def __init__(self, a) -> None:
        arr = np.asarray(a)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DomainError(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] > MAX_ORDER:
            raise CapacityError(f"order {arr.shape[0]} exceeds the {MAX_ORDER} cap")
        if not np.issubdtype(arr.dtype, np.integer):
            rounded = np.rint(arr)
            if not np.array_equal(rounded, arr):
                raise DomainError("entries must be integers")
            arr = rounded
        arr = arr.astype(np.int64)
        if (arr < 0).any():
            raise DomainError("entries must be nonnegative")
        arr.setflags(write=False)
        self.a = arr
        self._row_sum: int | None | bool = False  # False = not yet computed
        self._col_sum: int | None | bool = False

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def row_sum(self) -> int | None:
        """The constant row sum, or None when rows differ."""
        if self._row_sum is False:
            sums = self.a.sum(axis=1)
            self._row_sum = int(sums[0]) if (sums == sums[0]).all() else None
        return self._row_sum

    @property
    def col_sum(self) -> int | None:
        if self._col_sum is False:
            sums = self.a.sum(axis=0)
            self._col_sum = int(sums[0]) if (sums == sums[0]).all() else None
        return self._col_sum

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return np.array_equal(self.a, other.a)
        return NotImplemented

    def __hash__(self):  # pragma: no cover - mutability guard only
        raise TypeError("IntMatrix is not hashable")

    def __repr__(self) -> str:
        return f"IntMatrix(n={self.n}, rows={self.a.tolist()!r})"


def as_array(M) -> np.ndarray:
    """Accept an IntMatrix or anything array-like; return the ndarray view."""
    return M.a if isinstance(M, IntMatrix) else np.asarray(M)


def matrix_to_csv(M: IntMatrix) -> str:
    """CSV form: first line ``n=<order>,rowsum=<c>``, then the integer rows."""
    rs = M.row_sum
    lines = [f"n={M.n},rowsum={'' if rs is None else rs}"]
    lines.extend(",".join(str(int(v)) for v in row) for row in M.a)
    return "\n".join(lines) + "\n"


def _branch_image(sig: SlopeSignature, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # affine image of [lo,hi] under the branch containing the (open) interval
    m = sig.m
    mid = (lo + hi) / 2
    j = int(m * mid) + 1
    if sig.epsilons[j - 1] == 1:
        a, b = m * lo - (j - 1), m * hi - (j - 1)
    else:
        a, b = j - m * lo, j - m * hi
    return (a, b) if a <= b else (b, a)


def fine_markov(g: ComposedMap) -> IntMatrix:
    """0/1 transition matrix of the composition on the Nm-cell partition.

    Entry (i,j) is 1 exactly when the open j-th fine cell is contained in the
    image of the i-th fine cell.  All interval arithmetic is exact rational,
    so the result is a combinatorial fact, not a numerical one.  Every row
    holds m consecutive ones (the image of a fine cell is one full coarse
    cell) and every column sums to m.
    """
    m, n = g.m, g.n
    nm = n * m
    out = np.zeros((nm, nm), dtype=np.int64)
    cell = Fraction(1, nm)
    for i in range(nm):
        lo, hi = _branch_image(g.signature, i * cell, (i + 1) * cell)
        # the image sits inside a single coarse cell; shift it by the exchange
        u = int(n * ((lo + hi) / 2)) + 1
        shift = Fraction(g.perm(u) - u, n)
        lo, hi = lo + shift, hi + shift
        for q in range(nm):
            if lo <= q * cell and (q + 1) * cell <= hi:
                out[i, q] = 1
    return IntMatrix(out)


def reduced_markov(g: ComposedMap) -> IntMatrix:
    """N x N reduced matrix: sum each m-row block of the fine matrix at block-leading columns.

    Entries lie in {0,1,2}; rows and columns all sum to m.
    """
    m, n = g.m, g.n
    b = fine_markov(g).a
    lead_cols = b[:, ::m]                      # (nm, n)
    a = lead_cols.reshape(n, m, n).sum(axis=1)  # sum rows within each coarse cell
    return IntMatrix(a)


def permutation_matrix(perm: IntervalPermutation) -> IntMatrix:
    """P with P[i, sigma(i)] = 1 (one-based sigma)."""
    n = perm.n
    p = np.zeros((n, n), dtype=np.int64)
    p[np.arange(n), np.asarray(perm.images) - 1] = 1
    return IntMatrix(p)


def block_permutation_matrix(perm: IntervalPermutation, m: int) -> IntMatrix:
    """The Nm x Nm expansion of P with identity/zero m x m blocks."""
    if m < 1:
        raise DomainError(f"block size must be >= 1, got {m}")
    return IntMatrix(np.kron(permutation_matrix(perm).a, np.eye(m, dtype=np.int64)))


def backwards_identity(n: int) -> IntMatrix:
    """Anti-diagonal identity; left multiplication reverses rows, right reverses columns."""
    if n < 1:
        raise DomainError(f"order must be >= 1, got {n}")
    return IntMatrix(np.eye(n, dtype=np.int64)[::-1])


def _circulant_offset(m: int, n: int) -> int:
    # chosen so the m consecutive offsets are symmetric around 0 mod n
    return (1 - m) // 2 if m % 2 == 1 else (1 - m + n) // 2


def symmetric_circulant(m: int, n: int) -> IntMatrix:
    """Circulant 0/1 matrix with m ones per row in symmetric consecutive offsets.

    Requires 1 <= m <= n and gcd(m,n)=1 (which also makes the offset integral).
    """
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if gcd(m, n) != 1:
        raise DomainError(f"m and n must be coprime, got gcd({m},{n})={gcd(m, n)}")
    delta = _circulant_offset(m, n)
    c = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for r in range(m):
            c[i, (i + delta + r) % n] = 1
    return IntMatrix(c)


def folded_circulant(m: int, n: int) -> IntMatrix:
    """C + C J: the circulant plus its column reversal.  Symmetric with row sums 2m."""
    c = symmetric_circulant(m, n).a
    return IntMatrix(c + c[:, ::-1])


def structured_matrix(kind: str, **params) -> IntMatrix:
    """Dispatch by kind: P, Q, J, C, or D (long names accepted).

    P needs perm; Q needs perm and m; J needs n; C and D need m and n coprime.
    """
    key = {
        "p": "P", "permutation": "P",
        "q": "Q", "block_permutation": "Q",
        "j": "J", "backwards_identity": "J",
        "c": "C", "circulant": "C",
        "d": "D", "folded_circulant": "D",
    }.get(kind.lower())
    if key is None:
        raise DomainError(f"unknown structured matrix kind {kind!r}")
    if key == "P":
        return permutation_matrix(params["perm"])
    if key == "Q":
        return block_permutation_matrix(params["perm"], params["m"])
    if key == "J":
        return backwards_identity(params["n"])
    if key == "C":
        return symmetric_circulant(params["m"], params["n"])
    return folded_circulant(params["m"], params["n"])


def lift(M, d: int) -> IntMatrix:
    """Replace each entry by a constant d x d block.  Scales the subleading modulus by d."""
    if d < 1:
        raise DomainError(f"block size must be >= 1, got {d}")
    arr = as_array(M)
    return IntMatrix(np.kron(arr, np.ones((d, d), dtype=np.int64)))


def collapse(M, d: int) -> IntMatrix:
    """Inverse of lift on matrices with identical columns inside each d x d block.

    Each block becomes the sum of one of its columns; the subleading modulus
    is unchanged.  Raises StructuralError naming the first offending block if
    the column structure is violated.
    """
    arr = as_array(M)
    n = arr.shape[0]
    if d < 1:
        raise DomainError(f"block size must be >= 1, got {d}")
    if n % d != 0:
        raise DomainError(f"order {n} is not a multiple of block size {d}")
    nb = n // d
    blocks = arr.reshape(nb, d, nb, d)
    same = (blocks == blocks[:, :, :, :1]).all(axis=(1, 3))
    if not same.all():
        i, j = np.argwhere(~same)[0]
        raise StructuralError(
            f"columns differ inside block ({i + 1},{j + 1}); cannot collapse with d={d}"
        )
    return IntMatrix(blocks[:, :, :, 0].sum(axis=1))


def doubled_matrix(signature: SlopeSignature, n: int) -> IntMatrix:
    """Orientation-doubled matrix on 2N cells for the given branch count.

    Built as A + A J from the all-up map's reduced matrix on 2N cells.  It
    commutes with the backwards identity in the absorbing sense (JE = E = EJ),
    its upper-left N x N quarter is the zigzag reduced matrix on N cells, and
    its subleading modulus is twice the zigzag one.  Only the branch count of
    the supplied signature matters.
    """
    m = signature.m
    if n < m:
        raise DomainError(f"cell count N={n} must be >= branch count m={m}")
    sf = canonical_signatures(m).sf
    a2 = reduced_markov(ComposedMap(sf, IntervalPermutation.identity(2 * n))).a
    return IntMatrix(a2 + a2 @ backwards_identity(2 * n).a)
