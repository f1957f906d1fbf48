"""Matrices over Z_k and the fair 2x2 predicate."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from fairquads import rng
from fairquads.errors import DimensionError, ModulusError


def check_modulus(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ModulusError(f"modulus must be an integer >= 2, got {k!r}")
    return int(k)


@dataclass(frozen=True)
class ZkMatrix:
    """An ``n_rows x n_cols`` matrix with entries in ``{0, .., k-1}``, stored row-major."""

    k: int
    n_rows: int
    n_cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.k)
        if self.n_rows < 0 or self.n_cols < 0:
            raise DimensionError("negative dimension")
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.n_rows * self.n_cols:
            raise DimensionError(
                f"{len(entries)} entries for a {self.n_rows}x{self.n_cols} matrix")
        bad = [e for e in entries if not 0 <= e < self.k]
        if bad:
            raise ModulusError(f"entry {bad[0]} outside Z_{self.k}")

    @classmethod
    def from_rows(cls, k: int, rows: Sequence[Sequence[int]]) -> "ZkMatrix":
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(k, len(rows), n_cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_array(cls, k: int, arr) -> "ZkMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        return cls(k, arr.shape[0], arr.shape[1], tuple(arr.ravel().tolist()))

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.entries, dtype=np.int64).reshape(self.n_rows, self.n_cols)
        a.setflags(write=False)
        return a

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.n_cols + j]

    def rows(self) -> list[tuple[int, ...]]:
        c = self.n_cols
        return [self.entries[r * c:(r + 1) * c] for r in range(self.n_rows)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ZkMatrix":
        rows, cols = list(rows), list(cols)
        return ZkMatrix(self.k, len(rows), len(cols),
                        tuple(self[r, c] for r in rows for c in cols))

    def with_entry(self, i: int, j: int, value: int) -> "ZkMatrix":
        e = list(self.entries)
        e[i * self.n_cols + j] = value
        return ZkMatrix(self.k, self.n_rows, self.n_cols, tuple(e))


def _require_at_least_2x2(M: ZkMatrix):
    if M.n_rows < 2 or M.n_cols < 2:
        raise DimensionError(f"need at least 2x2, got {M.n_rows}x{M.n_cols}")


def is_fair(M: ZkMatrix) -> bool:
    """True iff the 2x2 matrix has equal diagonal and antidiagonal sums mod k."""
    if M.n_rows != 2 or M.n_cols != 2:
        raise DimensionError(f"is_fair needs a 2x2 matrix, got {M.n_rows}x{M.n_cols}")
    a, b, c, d = M.entries
    return (a + d - b - c) % M.k == 0


def find_fair_submatrix(M: ZkMatrix) -> tuple[int, int, int, int] | None:
    """Lexicographically smallest ``(i, j, p, q)`` with rows i<j, columns p<q fair.

    Rows i, j and columns p, q are fair exactly when the row difference
    ``x[i] - x[j]`` takes the same value at p and q, so each row pair is one pass
    over the columns remembering the first column for each difference value.
    """
    _require_at_least_2x2(M)
    k, rows = M.k, M.rows()
    for i in range(M.n_rows):
        for j in range(i + 1, M.n_rows):
            first: dict[int, int] = {}
            best = None
            for col, (u, v) in enumerate(zip(rows[i], rows[j])):
                d = (u - v) % k
                if d in first:
                    cand = (first[d], col)
                    if best is None or cand < best:
                        best = cand
                else:
                    first[d] = col
            if best is not None:
                return (i, j) + best
    return None


def random_matrix(n: int, m: int, k: int, seed: int = rng.DEFAULT_SEED) -> ZkMatrix:
    """``n x m`` matrix with i.i.d. uniform entries from the SplitMix64 stream ``seed``."""
    check_modulus(k)
    if n < 2 or m < 2:
        raise DimensionError(f"random_matrix needs n, m >= 2, got {n}x{m}")
    vals = rng.uniform_ints(seed, 0, n * m, k)
    return ZkMatrix(k, n, m, tuple(vals.tolist()))


def has_fair_batch(X: np.ndarray, k: int) -> np.ndarray:
    """Vectorized existence test over a batch of shape ``(N, rows, cols)``.

    Uses the fact that a sum of distinct powers of two equals their bitwise OR,
    and differs from it as soon as two exponents coincide.
    """
    if k > 62:
        raise ModulusError("batch test supports k <= 62")
    N, r, _ = X.shape
    found = np.zeros(N, dtype=bool)
    one = np.int64(1)
    for i in range(r):
        for j in range(i + 1, r):
            bits = np.left_shift(one, (X[:, i, :] - X[:, j, :]) % k)
            found |= bits.sum(axis=1) != np.bitwise_or.reduce(bits, axis=1)
    return found
