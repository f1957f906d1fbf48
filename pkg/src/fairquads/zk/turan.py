"""Graph Turan numbers T(n, s, 2) and the product covering construction."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from fairquads.errors import FairquadsError, InfeasibleProfile
from fairquads.zk.quads import Profile, ProfileSet, Quad, QuadSystem


def _check(n: int, s: int):
    if n < 1 or s < 2:
        raise FairquadsError(f"need n >= 1 and s >= 2, got n={n}, s={s}")


def turan_t(n: int, s: int) -> int:
    """Fewest edges of an n-vertex graph whose independence number is below s.

    Closed form ``t*n - t*(t+1)/2 * (s-1)`` with ``t = n // (s-1)``. At integer
    ``n / (s-1)`` the other admissible choice ``t - 1`` gives the same value.
    """
    _check(n, s)
    t = n // (s - 1)
    return t * n - t * (t + 1) // 2 * (s - 1)


@dataclass(frozen=True)
class EdgeSet:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        es = sorted({tuple(sorted(map(int, e))) for e in self.edges})
        for u, v in es:
            if u == v or not 0 <= u < v < self.n:
                raise FairquadsError(f"bad edge ({u},{v}) for n={self.n}")
        object.__setattr__(self, "edges", tuple(es))

    def __len__(self):
        return len(self.edges)


def turan_parts(n: int, s: int) -> list[range]:
    """s-1 consecutive blocks of ``range(n)``, sizes differing by at most one, larger first."""
    _check(n, s)
    t, r = divmod(n, s - 1)
    parts, start = [], 0
    for idx in range(s - 1):
        size = t + 1 if idx < r else t
        parts.append(range(start, start + size))
        start += size
    return parts


def turan_extremal_graph(n: int, s: int) -> EdgeSet:
    """Disjoint union of s-1 near-equal cliques; it has ``turan_t(n, s)`` edges."""
    edges = [e for part in turan_parts(n, s) for e in combinations(part, 2)]
    return EdgeSet(n, tuple(edges))


def product_construction(n: int, m: int, profile) -> QuadSystem:
    """Every quad pairing an edge of the A-side extremal graph with one on the B side."""
    a, b = Profile(*profile).check()
    if n < a or m < b:
        raise InfeasibleProfile(f"profile ({a},{b}) infeasible for n={n}, m={m}")
    ga, gb = turan_extremal_graph(n, a), turan_extremal_graph(m, b)
    return QuadSystem(n, m, tuple(Quad(i, j, p, q) for i, j in ga.edges for p, q in gb.edges))


def union_product_construction(n: int, m: int, P: ProfileSet) -> QuadSystem:
    """Deduplicated union of per-profile products; covers every profile of P."""
    P.check_feasible(n, m)
    out = QuadSystem(n, m)
    for prof in P:
        out = out.union(product_construction(n, m, prof))
    return out
