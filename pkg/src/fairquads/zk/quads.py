"""Quadruple systems, covering profiles and coverage checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from fairquads.errors import DimensionError, FairquadsError, InfeasibleProfile
from fairquads.zk.matrix import ZkMatrix, _require_at_least_2x2, check_modulus


class Quad(NamedTuple):
    """The quadruple ``{a_i, a_j, b_p, b_q}`` with 0-based ``i < j`` and ``p < q``."""

    i: int
    j: int
    p: int
    q: int


@dataclass(frozen=True)
class QuadSystem:
    n: int
    m: int
    quads: tuple[Quad, ...] = ()

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DimensionError("negative side size")
        qs = sorted({Quad(*map(int, q)) for q in self.quads})
        for q in qs:
            if not (0 <= q.i < q.j < self.n and 0 <= q.p < q.q < self.m):
                raise DimensionError(f"{tuple(q)} out of range for n={self.n}, m={self.m}")
        object.__setattr__(self, "quads", tuple(qs))

    def __len__(self):
        return len(self.quads)

    def __iter__(self):
        return iter(self.quads)

    def __contains__(self, q):
        return Quad(*q) in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_qset")
        if s is None:
            s = frozenset(self.quads)
            object.__setattr__(self, "_qset", s)
        return s

    @classmethod
    def complete(cls, n: int, m: int) -> "QuadSystem":
        return cls(n, m, tuple(Quad(i, j, p, q)
                               for i, j in combinations(range(n), 2)
                               for p, q in combinations(range(m), 2)))

    def union(self, other: "QuadSystem") -> "QuadSystem":
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError("union of systems over different (n, m)")
        return QuadSystem(self.n, self.m, self.quads + other.quads)

    def transpose(self) -> "QuadSystem":
        """Swap the roles of A and B."""
        return QuadSystem(self.m, self.n, tuple(Quad(p, q, i, j) for i, j, p, q in self.quads))


# --- profiles ---------------------------------------------------------------

class Profile(NamedTuple):
    a: int
    b: int

    def check(self):
        if self.a < 2 or self.b < 2:
            raise FairquadsError(f"profile needs a, b >= 2, got {tuple(self)}")
        return self


@dataclass(frozen=True)
class ProfileSet:
    profiles: tuple[Profile, ...] = field(default=())

    def __post_init__(self):
        ps = sorted({Profile(*map(int, p)).check() for p in self.profiles})
        if not ps:
            raise FairquadsError("empty profile set")
        object.__setattr__(self, "profiles", tuple(ps))

    def __iter__(self):
        return iter(self.profiles)

    def __len__(self):
        return len(self.profiles)

    def __str__(self):
        return ";".join(f"{a},{b}" for a, b in self.profiles)

    def check_feasible(self, n: int, m: int):
        for a, b in self.profiles:
            if a > n or b > m:
                raise InfeasibleProfile(f"profile ({a},{b}) infeasible for n={n}, m={m}")

    def transpose(self) -> "ProfileSet":
        return ProfileSet(tuple(Profile(b, a) for a, b in self.profiles))


def family_k2(k: int) -> ProfileSet:
    """``{(2, k+1), (k+1, 2)}``."""
    check_modulus(k)
    return ProfileSet(((2, k + 1), (k + 1, 2)))


def family_k3(k: int) -> ProfileSet:
    """``{(2, k+1), (3, k), (k, 3), (k+1, 2)}``."""
    check_modulus(k)
    return ProfileSet(((2, k + 1), (3, k), (k, 3), (k + 1, 2)))


def parse_profiles(text: str) -> ProfileSet:
    """Parse ``"2,5;5,2"`` or a named family ``"k2:4"`` / ``"k3:4"``."""
    text = text.strip()
    try:
        if text[:3] in ("k2:", "k3:"):
            k = int(text[3:])
            return family_k2(k) if text[1] == "2" else family_k3(k)
        pairs = []
        for chunk in text.split(";"):
            if chunk.strip():
                a, b = chunk.split(",")
                pairs.append((int(a), int(b)))
    except ValueError as exc:
        if isinstance(exc, FairquadsError):
            raise
        raise FairquadsError(f"cannot parse profile spec {text!r}") from exc
    return ProfileSet(tuple(pairs))


# --- systems from matrices --------------------------------------------------

def _row_pair_diffs(X: np.ndarray, k: int):
    n = X.shape[0]
    for i in range(n):
        d = (X[i] - X[i + 1:]) % k
        for off, row in enumerate(d):
            yield i, i + 1 + off, row


def quads_from_matrix(X: ZkMatrix) -> QuadSystem:
    """All quads whose rows/columns cut a fair 2x2 submatrix out of ``X``."""
    _require_at_least_2x2(X)
    A = X.array
    upper = np.triu(np.ones((X.n_cols, X.n_cols), dtype=bool), 1)
    quads = []
    for i, j, d in _row_pair_diffs(A, X.k):
        ps, qs = np.nonzero((d[:, None] == d[None, :]) & upper)
        quads.extend(Quad(i, j, p, q) for p, q in zip(ps.tolist(), qs.tolist()))
    return QuadSystem(X.n_rows, X.n_cols, tuple(quads))


def fair_count(X: ZkMatrix) -> int:
    """``len(quads_from_matrix(X))`` without building the system."""
    _require_at_least_2x2(X)
    total = 0
    for _, _, d in _row_pair_diffs(X.array, X.k):
        c = np.bincount(d, minlength=X.k)
        total += int((c * (c - 1) // 2).sum())
    return total


# --- coverage ---------------------------------------------------------------

Witness = tuple[tuple[int, ...], tuple[int, ...]]


def _first_independent(adj: list[int], m: int, b: int) -> tuple[int, ...] | None:
    """Lexicographically first b-subset of range(m) with no edge of ``adj`` inside."""
    chosen: list[int] = []

    def rec(start: int, allowed: int) -> bool:
        if len(chosen) == b:
            return True
        need = b - len(chosen)
        for v in range(start, m - need + 1):
            if not (allowed >> v) & 1:
                continue
            if (allowed >> v).bit_count() < need:
                return False
            chosen.append(v)
            if rec(v + 1, allowed & ~adj[v]):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if rec(0, (1 << m) - 1) else None


def _pair_graphs(Q: QuadSystem) -> dict[tuple[int, int], list[int]]:
    # A-pair -> adjacency bitmasks of the graph on B formed by its quads
    graphs: dict[tuple[int, int], list[int]] = {}
    for i, j, p, q in Q.quads:
        adj = graphs.get((i, j))
        if adj is None:
            adj = graphs[(i, j)] = [0] * Q.m
        adj[p] |= 1 << q
        adj[q] |= 1 << p
    return graphs


def covers(Q: QuadSystem, profile) -> Witness | None:
    """First ``(A-subset, B-subset)`` of the profile's shape containing no quad of ``Q``.

    A-subsets are scanned in lexicographic order; for each one, the quads it
    contains define a graph on B, and the first uncovered B-subset is the
    lexicographically first independent b-set of that graph.
    Returns ``None`` when every such pair contains a quad.
    """
    a, b = Profile(*profile).check()
    if a > Q.n or b > Q.m:
        raise InfeasibleProfile(f"profile ({a},{b}) infeasible for n={Q.n}, m={Q.m}")
    graphs = _pair_graphs(Q)
    empty = [0] * Q.m
    for S in combinations(range(Q.n), a):
        adj = list(empty)
        for pair in combinations(S, 2):
            g = graphs.get(pair)
            if g is not None:
                adj = [x | y for x, y in zip(adj, g)]
        T = _first_independent(adj, Q.m, b)
        if T is not None:
            return S, T
    return None


@dataclass
class CoverageReport:
    results: dict[Profile, Witness | None]

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.results.values())

    def failures(self) -> dict[Profile, Witness]:
        return {p: w for p, w in self.results.items() if w is not None}

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "profiles": [
                {"a": p.a, "b": p.b,
                 "witness": None if w is None else {"A": list(w[0]), "B": list(w[1])}}
                for p, w in self.results.items()
            ],
        }


def verify_profiles(Q: QuadSystem, P: ProfileSet | Iterable) -> CoverageReport:
    if not isinstance(P, ProfileSet):
        P = ProfileSet(tuple(P))
    P.check_feasible(Q.n, Q.m)
    return CoverageReport({p: covers(Q, p) for p in P})
