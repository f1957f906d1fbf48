"""Exhaustive and sampled scans for fair submatrices.

Work is cut into fixed index chunks, independent of the worker count, and merged
in chunk order, so totals and the first counterexample never depend on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from fairquads import rng
from fairquads.zk.matrix import ZkMatrix, check_modulus, has_fair_batch

CHUNK = 1 << 18


@dataclass(frozen=True)
class ScanResult:
    rows: int
    cols: int
    k: int
    cases: int
    failures: int
    first_failure: ZkMatrix | None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _decode(start: int, stop: int, cells: int, k: int) -> np.ndarray:
    # case index -> base-k digits, most significant digit is cell 0
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, cells), dtype=np.int64)
    for pos in range(cells - 1, -1, -1):
        out[:, pos] = idx % k
        idx //= k
    return out


def _exhaustive_chunk(args):
    rows, cols, k, start, stop = args
    X = _decode(start, stop, rows * cols, k).reshape(-1, rows, cols)
    miss = np.flatnonzero(~has_fair_batch(X, k))
    first = X[miss[0]].tolist() if miss.size else None
    return int(miss.size), first


def _sampled_chunk(args):
    rows, cols, k, seed, start, stop = args
    cells = rows * cols
    X = rng.uniform_ints(seed, start * cells, (stop - start) * cells, k)
    X = X.reshape(-1, rows, cols)
    miss = np.flatnonzero(~has_fair_batch(X, k))
    first = X[miss[0]].tolist() if miss.size else None
    return int(miss.size), first


def _run(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _merge(rows, cols, k, cases, parts) -> ScanResult:
    failures = sum(f for f, _ in parts)
    first = next((ZkMatrix.from_rows(k, m) for _, m in parts if m is not None), None)
    return ScanResult(rows, cols, k, cases, failures, first)


def scan_exhaustive(rows: int, cols: int, k: int, workers: int = 1) -> ScanResult:
    """Check every ``rows x cols`` matrix over Z_k for a fair 2x2 submatrix.

    Matrices are numbered by reading their entries row-major as base-k digits;
    ``first_failure`` is the lowest-numbered matrix without a fair submatrix.
    """
    check_modulus(k)
    cases = k ** (rows * cols)
    tasks = [(rows, cols, k, s, min(s + CHUNK, cases)) for s in range(0, cases, CHUNK)]
    return _merge(rows, cols, k, cases, _run(_exhaustive_chunk, tasks, workers))


def scan_sampled(rows: int, cols: int, k: int, samples: int, seed: int,
                 workers: int = 1) -> ScanResult:
    """Same check on ``samples`` matrices drawn consecutively from stream ``seed``."""
    check_modulus(k)
    tasks = [(rows, cols, k, seed, s, min(s + CHUNK, samples))
             for s in range(0, samples, CHUNK)]
    return _merge(rows, cols, k, samples, _run(_sampled_chunk, tasks, workers))


def count_fair_2x2(k: int) -> int:
    """Number of fair matrices among all k**4 2x2 matrices over Z_k."""
    check_modulus(k)
    return sum(1 for a, b, c, d in product(range(k), repeat=4) if (a + d - b - c) % k == 0)


def lemma1(k: int, workers: int = 1) -> ScanResult:
    """All 2 x (k+1) matrices over Z_k."""
    return scan_exhaustive(2, k + 1, k, workers)


def lemma2(k: int, workers: int = 1) -> ScanResult:
    """All 3 x k matrices over Z_k; only meaningful as a proof for even k."""
    return scan_exhaustive(3, k, k, workers)
