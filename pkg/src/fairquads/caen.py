"""The 4-graph on A u B built from a binary matrix by the parity rule.

Edges are every 4-subset of A, every 4-subset of B, and the mixed quads
``{a_i, a_j, b_p, b_q}`` whose four matrix entries have even sum. The pure
classes are kept implicit. Vertices are numbered A first (0..n-1), then B
(n..n+m-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from fairquads.errors import DimensionError, ModulusError
from fairquads.zk import Quad, QuadSystem, ZkMatrix


@dataclass(frozen=True)
class FourGraph:
    n: int
    m: int
    e22: QuadSystem

    @property
    def e40_count(self) -> int:
        return comb(self.n, 4)

    @property
    def e04_count(self) -> int:
        return comb(self.m, 4)

    @property
    def edge_count(self) -> int:
        return self.e40_count + self.e04_count + len(self.e22)

    def has_edge(self, vertices) -> bool:
        """Membership test for a 4-set of combined vertex labels."""
        A = sorted(v for v in vertices if v < self.n)
        B = sorted(v - self.n for v in vertices if v >= self.n)
        if len(A) + len(B) != 4:
            raise ValueError("need exactly 4 vertices")
        if len(A) in (0, 4):
            return True
        return len(A) == 2 and (A[0], A[1], B[0], B[1]) in self.e22


def build_caen(X: ZkMatrix) -> FourGraph:
    if X.k != 2:
        raise ModulusError(f"parity construction needs a binary matrix, got k={X.k}")
    if X.n_rows < 2 or X.n_cols < 2:
        raise DimensionError(f"need at least 2x2, got {X.n_rows}x{X.n_cols}")
    rows = X.rows()
    e22 = [Quad(i, j, p, q)
           for i, j in combinations(range(X.n_rows), 2)
           for p, q in combinations(range(X.n_cols), 2)
           if (rows[i][p] + rows[i][q] + rows[j][p] + rows[j][q]) % 2 == 0]
    return FourGraph(X.n_rows, X.n_cols, QuadSystem(X.n_rows, X.n_cols, tuple(e22)))


def verify_cover5(H: FourGraph) -> tuple[int, ...] | None:
    """First 5-set (lexicographic over combined labels) spanning no edge, else None.

    Returning None is the statement that H has independence number at most 4.
    """
    n, m = H.n, H.m
    if n + m < 5:
        raise DimensionError(f"need at least 5 vertices, got {n + m}")
    e22 = H.e22
    for S in combinations(range(n + m), 5):
        A = [v for v in S if v < n]
        if len(A) >= 4 or len(A) <= 1:
            continue
        B = [v - n for v in S if v >= n]
        if not any((i, j, p, q) in e22
                   for i, j in combinations(A, 2) for p, q in combinations(B, 2)):
            return S
    return None


def caen_density(H: FourGraph) -> Fraction:
    """Edge count over C(n+m, 4)."""
    return Fraction(H.edge_count, comb(H.n + H.m, 4))


def summary(H: FourGraph) -> dict:
    d = caen_density(H)
    return {
        "n": H.n, "m": H.m,
        "e22_count": len(H.e22), "e40_count": H.e40_count, "e04_count": H.e04_count,
        "density_num": d.numerator, "density_den": d.denominator,
        "covered": verify_cover5(H) is None,
    }
