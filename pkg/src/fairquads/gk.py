"""The graph G_k on functions Z_k -> Z_k, adjacent when their difference is a bijection.

G_k has k**k vertices, so nothing here materializes it. Clique search uses two
symmetries of the edge relation:

* translation ``f -> f + h`` for any function h, so a clique may be assumed to
  contain the zero function (its other members are then permutations);
* reordering the domain ``f -> f o pi``, which fixes zero and turns any
  permutation into the identity.

A clique with at least two vertices is therefore equivalent to one containing
zero and the identity, and its remaining members are permutations ``s`` with
``s - id`` also a permutation (orthomorphisms of Z_k). The search runs over the
graph those orthomorphisms induce.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path
from typing import Sequence

import numpy as np

from fairquads.errors import CapExceeded, ModulusError
from fairquads.zk.matrix import ZkMatrix, check_modulus

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
TRIANGLE_CAP = 5


@dataclass(frozen=True, order=True)
class FnVec:
    """A function Z_k -> Z_k given by its value vector ``(f(0), .., f(k-1))``."""

    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.k)
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.k or any(not 0 <= v < self.k for v in vals):
            raise ModulusError(f"{vals} is not a function Z_{self.k} -> Z_{self.k}")

    @classmethod
    def parse(cls, text: str) -> "FnVec":
        vals = tuple(int(x) for x in text.split(","))
        return cls(len(vals), vals)

    @classmethod
    def zero(cls, k: int) -> "FnVec":
        return cls(k, (0,) * k)

    @classmethod
    def identity(cls, k: int) -> "FnVec":
        return cls(k, tuple(range(k)))

    def __str__(self):
        return ",".join(map(str, self.values))

    def __add__(self, other: "FnVec") -> "FnVec":
        _same_k(self, other)
        return FnVec(self.k, tuple((a + b) % self.k for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "FnVec") -> "FnVec":
        _same_k(self, other)
        return FnVec(self.k, tuple((a - b) % self.k for a, b in zip(self.values, other.values)))

    def compose(self, perm: Sequence[int]) -> "FnVec":
        """``self o perm``."""
        return FnVec(self.k, tuple(self.values[p] for p in perm))

    def is_bijection(self) -> bool:
        return len(set(self.values)) == self.k


def _same_k(f: FnVec, g: FnVec):
    if f.k != g.k:
        raise ModulusError(f"functions over Z_{f.k} and Z_{g.k}")


def is_edge(f: FnVec, g: FnVec) -> bool:
    _same_k(f, g)
    k = f.k
    return len({(a - b) % k for a, b in zip(f.values, g.values)}) == k


def smallest_prime_factor(k: int) -> int:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


def canonical_clique(k: int) -> list[FnVec]:
    """The p(k) functions ``j -> i*j mod k`` for ``i < p(k)``, pairwise adjacent."""
    check_modulus(k)
    return [FnVec(k, tuple(i * j % k for j in range(k))) for i in range(smallest_prime_factor(k))]


def matrix_from_functions(fs: Sequence[FnVec]) -> ZkMatrix:
    """Stack value vectors as rows.

    The result has no fair 2x2 submatrix exactly when ``fs`` is a clique.
    """
    if not fs:
        raise ValueError("need at least one function")
    k = fs[0].k
    for f in fs:
        _same_k(fs[0], f)
    return ZkMatrix.from_rows(k, [f.values for f in fs])


# --- clique search ----------------------------------------------------------

class _OutOfBudget(Exception):
    pass


@dataclass
class CliqueResult:
    k: int
    size: int
    witness: tuple[FnVec, ...]
    exact: bool
    nodes: int = 0
    candidates: int = 0
    resumed_from: int = 0
    elapsed_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "size": self.size,
            "exact": self.exact,
            "witness": [str(f) for f in self.witness],
            "candidates": self.candidates,
            "nodes": self.nodes,
            "resumed_from": self.resumed_from,
        }


class _Budget:
    def __init__(self, nodes: int | None, deadline: float | None):
        self.cap = nodes
        self.deadline = deadline
        self.used = 0

    def tick(self):
        self.used += 1
        if self.cap is not None and self.used > self.cap:
            raise _OutOfBudget
        if self.deadline is not None and (self.used & 0x3FF) == 0 \
                and time.monotonic() > self.deadline:
            raise _OutOfBudget


def orthomorphisms(k: int, budget: _Budget | None = None) -> list[tuple[int, ...]]:
    """Permutations s of Z_k with ``s(j) - j`` also a permutation, in lexicographic order.

    If the budget runs out, raises ``_PartialEnumeration`` carrying the prefix found.
    """
    found: list[tuple[int, ...]] = []
    vals = [0] * k
    used = [False] * k
    diffs = [False] * k

    def rec(j: int):
        if budget is not None:
            budget.tick()
        if j == k:
            found.append(tuple(vals))
            return
        for v in range(k):
            d = (v - j) % k
            if used[v] or diffs[d]:
                continue
            used[v] = diffs[d] = True
            vals[j] = v
            rec(j + 1)
            used[v] = diffs[d] = False

    try:
        rec(0)
    except _OutOfBudget:
        raise _PartialEnumeration(found)
    return found


class _PartialEnumeration(Exception):
    def __init__(self, found):
        super().__init__()
        self.found = found


def _adjacency(C: np.ndarray, k: int) -> list[int]:
    """Bitmask adjacency (difference is a bijection) among the rows of ``C``."""
    N = len(C)
    full = (1 << k) - 1
    adj = [0] * N
    for i in range(N - 1):
        diff = (C[i] - C[i + 1:]) % k
        bits = np.bitwise_or.reduce(np.left_shift(np.int64(1), diff), axis=1)
        for off in np.flatnonzero(bits == full).tolist():
            j = i + 1 + off
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def _color_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of P in index order; colors come out nondecreasing."""
    order, colors = [], []
    U, color = P, 0
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            U &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


_ADJ: list[int] = []


def _init_worker(adj):
    global _ADJ
    _ADJ = adj


def _search_branch(args) -> tuple[list[int], int, bool]:
    """Largest clique containing vertex v inside {v} plus its later neighbours.

    Returns (clique, nodes used, completed). Only cliques larger than ``floor``
    are reported; the search is deterministic for a given node cap.
    """
    v, floor, ceiling, cap, deadline = args
    adj = _ADJ
    budget = _Budget(cap, deadline)
    best: list[int] = []
    best_size = floor

    def expand(R: list[int], P: int):
        nonlocal best, best_size
        budget.tick()
        order, colors = _color_sort(P, adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colors[idx] <= best_size:
                return
            u = order[idx]
            R.append(u)
            NP = P & adj[u]
            if NP:
                expand(R, NP)
            elif len(R) > best_size:
                best, best_size = list(R), len(R)
            R.pop()
            if best_size >= ceiling:
                return
            P &= ~(1 << u)

    later = adj[v] & ~((1 << (v + 1)) - 1)
    try:
        budget.tick()
        if later:
            expand([v], later)
        elif 1 > best_size:
            best, best_size = [v], 1
    except _OutOfBudget:
        return best, budget.used, False
    return best, budget.used, True


def _checkpoint_key(k: int, order: list[tuple[int, ...]]) -> str:
    h = hashlib.sha256(repr((k, order)).encode()).hexdigest()
    return h[:16]


def _load_checkpoint(path: Path, k: int, key: str):
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if state.get("version") != CHECKPOINT_VERSION or state.get("k") != k:
        raise ValueError(f"{path}: checkpoint is for a different run")
    if state.get("candidate_key") != key:
        raise ValueError(f"{path}: candidate ordering changed since checkpoint")
    return state


def _save_checkpoint(path: Path, state: dict):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(state, sort_keys=True, indent=1) + "\n")
    os.replace(tmp, path)


def max_clique(k: int, budget_nodes: int | None = None, budget_ms: float | None = None,
               workers: int = 1, checkpoint: str | os.PathLike | None = None,
               checkpoint_interval: float = 60.0) -> CliqueResult:
    """Clique number of G_k, by branch and bound over orthomorphisms of Z_k.

    ``exact`` is True only when the whole search space was exhausted. On a
    truncated run the canonical p(k)-clique (or anything larger found) is
    returned as a lower bound.

    Top-level branches are searched independently, so ``workers`` only changes
    wall time. With ``checkpoint`` set, completed branches are recorded in that
    JSON file and a later call with the same file resumes after them.
    """
    check_modulus(k)
    t0 = time.monotonic()
    deadline = None if budget_ms is None else t0 + budget_ms / 1000.0
    budget = _Budget(budget_nodes, deadline)
    canon = canonical_clique(k)
    floor = len(canon) - 2
    # any clique gives a (k x clique) matrix with no fair submatrix, so at most k rows
    ceiling = k - 2

    def result(extra: list[tuple[int, ...]], exact: bool, n_cand: int, resumed: int):
        if len(extra) > floor:
            fs = [FnVec.zero(k), FnVec.identity(k)] + [FnVec(k, s) for s in extra]
        else:
            fs = canon
        return CliqueResult(k, len(fs), tuple(sorted(fs)), exact, budget.used,
                            n_cand, resumed, time.monotonic() - t0)

    try:
        cands = orthomorphisms(k, budget)
    except _PartialEnumeration as part:
        log.info("budget spent while enumerating orthomorphisms (%d found)", len(part.found))
        cands, complete = part.found, False
    else:
        complete = True
    if not cands:
        return result([], complete, 0, 0)

    C = np.array(cands, dtype=np.int64)
    adj0 = _adjacency(C, k)
    # descending degree, ties by value vector (cands is already lexicographic)
    order = sorted(range(len(cands)), key=lambda i: (-adj0[i].bit_count(), i))
    pos = {old: new for new, old in enumerate(order)}
    adj = [0] * len(order)
    for old, new in pos.items():
        a, mask = adj0[old], 0
        while a:
            low = a & -a
            mask |= 1 << pos[low.bit_length() - 1]
            a ^= low
        adj[new] = mask
    ordered = [cands[i] for i in order]

    ck_path = Path(checkpoint) if checkpoint is not None else None
    key = _checkpoint_key(k, ordered)
    start, best = 0, []
    if ck_path is not None and complete:
        state = _load_checkpoint(ck_path, k, key)
        if state is not None:
            start = state["next_branch"]
            best = [tuple(s) for s in state["best_extra"]]
            log.info("resuming k=%d at branch %d/%d", k, start, len(ordered))
    resumed = start

    def save(next_branch: int):
        if ck_path is None or not complete:
            return
        _save_checkpoint(ck_path, {
            "version": CHECKPOINT_VERSION, "k": k, "candidate_key": key,
            "candidates": len(ordered), "next_branch": next_branch,
            "best_size": max(len(best) + 2, len(canon)), "best_extra": [list(s) for s in best],
            "done": next_branch >= len(ordered) or len(best) >= ceiling,
        })

    _init_worker(adj)
    pool = ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                               initargs=(adj,)) if workers > 1 else None
    last_save = time.monotonic()
    exhausted = not complete
    i = start
    try:
        while i < len(ordered) and len(best) < ceiling and not exhausted:
            batch = list(range(i, min(i + max(workers, 1), len(ordered))))
            remaining = None if budget.cap is None else budget.cap - budget.used
            tasks = [(v, floor, ceiling, remaining, deadline) for v in batch]
            outs = list(pool.map(_search_branch, tasks)) if pool else None
            for n_done, v in enumerate(batch):
                remaining = None if budget.cap is None else budget.cap - budget.used
                if outs is None or (remaining is not None and outs[n_done][1] > remaining):
                    # rerun with the exact remaining cap so results match a serial run
                    clique, used, done = _search_branch((v, floor, ceiling, remaining, deadline))
                else:
                    clique, used, done = outs[n_done]
                budget.used += used
                if len(clique) > len(best):
                    best = [ordered[u] for u in clique]
                if not done:
                    exhausted = True
                    break
                i = v + 1
                if len(best) >= ceiling:
                    break
            if time.monotonic() - last_save >= checkpoint_interval:
                save(i)
                last_save = time.monotonic()
    finally:
        if pool is not None:
            pool.shutdown()
    save(i)
    exact = not exhausted
    return result(best, exact, len(ordered), resumed)


# --- triangles --------------------------------------------------------------

def count_triangles(k: int) -> int:
    """Exact number of triangles in G_k, for ``k <= TRIANGLE_CAP``.

    Every vertex lies in the same number of triangles (translation), namely the
    number of adjacent pairs among the neighbours of zero, i.e. among the k!
    permutations. Hence ``k**k * pairs / 3``.
    """
    check_modulus(k)
    if k > TRIANGLE_CAP:
        raise CapExceeded(f"count_triangles refuses k={k} > {TRIANGLE_CAP}")
    perms = list(permutations(range(k)))
    pairs = sum(1 for s, t in combinations(perms, 2)
                if len({(a - b) % k for a, b in zip(s, t)}) == k)
    total, rem = divmod(k ** k * pairs, 3)
    assert rem == 0
    return total
