"""Descent from a random matrix towards fewer fair submatrices."""
from __future__ import annotations

import numpy as np

from fairquads.errors import FairquadsError
from fairquads.zk.matrix import ZkMatrix, random_matrix
from fairquads.zk.quads import (ProfileSet, QuadSystem, family_k2, family_k3,
                                quads_from_matrix, verify_profiles)


def lemma_backed(P: ProfileSet, k: int) -> bool:
    """True when quads_from_matrix(X) covers P for every matrix X over Z_k."""
    allowed = set(family_k2(k))
    if k % 2 == 0:
        allowed |= set(family_k3(k))
    return set(P) <= allowed


def entry_fair_counts(X: np.ndarray, k: int, r: int, c: int) -> np.ndarray:
    """For each value v, how many fair quads use cell (r, c) if it held v.

    Rows r, s and columns c, d are fair iff ``x[r,c] == x[s,c] + x[r,d] - x[s,d]``.
    """
    rows = np.delete(np.arange(X.shape[0]), r)
    cols = np.delete(np.arange(X.shape[1]), c)
    target = (X[rows, c][:, None] + X[r, cols][None, :] - X[np.ix_(rows, cols)]) % k
    return np.bincount(target.ravel(), minlength=k)


def local_search_minimize(n: int, m: int, k: int, P: ProfileSet, seed: int,
                          budget: int | None = None) -> tuple[ZkMatrix, QuadSystem]:
    """First-improvement descent on the number of fair 2x2 submatrices.

    Cells are visited cyclically in row-major order; at each cell the smallest
    value that strictly lowers the count is taken. Stops after a full cycle with
    no improvement, or after ``budget`` cell evaluations.
    """
    if not lemma_backed(P, k):
        raise FairquadsError(
            f"profiles {P} are not guaranteed covered by fair-avoiding matrices over Z_{k}")
    P.check_feasible(n, m)
    X = random_matrix(n, m, k, seed).array.copy()
    cells = n * m
    idle = evaluations = pos = 0
    while idle < cells and (budget is None or evaluations < budget):
        r, c = divmod(pos, m)
        counts = entry_fair_counts(X, k, r, c)
        cur = X[r, c]
        evaluations += 1
        better = np.flatnonzero(counts < counts[cur])
        if better.size:
            X[r, c] = better[0]
            idle = 0
        else:
            idle += 1
        pos = (pos + 1) % cells
    M = ZkMatrix.from_array(k, X)
    Q = quads_from_matrix(M)
    report = verify_profiles(Q, P)
    if not report.passed:
        raise AssertionError(f"coverage lost after local search: {report.failures()}")
    return M, Q
