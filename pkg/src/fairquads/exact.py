"""Exact minimum covering quadruple systems on tiny instances, and bounds reports.

The minimum is found by branch and bound on the set-cover formulation: the
universe is every (A-subset, B-subset) that some profile demands be hit, and
each candidate quad covers the bad sets it lies inside.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from fairquads.errors import FairquadsError
from fairquads.zk import (ProfileSet, Quad, QuadSystem, family_k2, family_k3, fair_count,
                          local_search_minimize, random_matrix, turan_t,
                          union_product_construction, verify_profiles)

# exact search is attempted only below these sizes
MAX_CANDIDATES = 400
MAX_BAD_SETS = 5000

BadSet = tuple[tuple[int, ...], tuple[int, ...]]


def enumerate_bad_sets(n: int, m: int, P: ProfileSet) -> list[BadSet]:
    P.check_feasible(n, m)
    out = {(S, T) for a, b in P
           for S in combinations(range(n), a) for T in combinations(range(m), b)}
    return sorted(out)


@dataclass
class CoverInstance:
    n: int
    m: int
    P: ProfileSet
    bad_sets: list[BadSet]
    candidates: list[Quad]
    incidence: list[list[int]]  # bad set -> indices of candidates inside it

    @classmethod
    def build(cls, n: int, m: int, P: ProfileSet) -> "CoverInstance":
        bad = enumerate_bad_sets(n, m, P)
        cands = [Quad(i, j, p, q) for i, j in combinations(range(n), 2)
                 for p, q in combinations(range(m), 2)]
        index = {q: c for c, q in enumerate(cands)}
        inc = [sorted(index[Quad(i, j, p, q)] for i, j in combinations(S, 2)
                      for p, q in combinations(T, 2)) for S, T in bad]
        return cls(n, m, P, bad, cands, inc)


@dataclass
class CoverResult:
    size: int
    system: QuadSystem
    exact: bool
    nodes: int


class _OutOfBudget(Exception):
    pass


def _greedy_cover(cover_masks: list[int], universe: int) -> list[int]:
    chosen, covered = [], 0
    while covered != universe:
        c = max(range(len(cover_masks)), key=lambda c: ((cover_masks[c] & ~covered).bit_count(), -c))
        chosen.append(c)
        covered |= cover_masks[c]
    return chosen


def exact_min_cover(inst: CoverInstance, budget_nodes: int | None = None,
                    budget_ms: float | None = None) -> CoverResult:
    """Smallest quad system hitting every bad set of ``inst``.

    Branching picks the uncovered bad set with the fewest still-allowed
    coverers (ties: earliest bad set) and tries each coverer in turn, excluding
    the ones already tried. Two bounds prune a node, the larger wins:

    * a greedy packing of uncovered bad sets with pairwise disjoint coverer
      sets, each needing its own quad;
    * the pair count: with a profile (2, b), every A-pair must end up in at
      least T(m, b, 2) chosen quads, so each pair still owes its shortfall
      (and likewise for B-pairs under profiles (a, 2)).
    """
    B, C = len(inst.bad_sets), len(inst.candidates)
    universe = (1 << B) - 1
    cover_masks = [0] * C      # candidate -> bad sets it hits
    coverer_masks = [0] * B    # bad set -> candidates inside it
    for b, cs in enumerate(inst.incidence):
        if not cs:
            raise FairquadsError(f"bad set {inst.bad_sets[b]} has no candidate quad")
        for c in cs:
            cover_masks[c] |= 1 << b
            coverer_masks[b] |= 1 << c

    # per-pair demands from profiles with a side equal to 2
    need_a = max([turan_t(inst.m, b) for a, b in inst.P if a == 2] or [0])
    need_b = max([turan_t(inst.n, a) for a, b in inst.P if b == 2] or [0])
    a_pair, b_pair = {}, {}
    cand_a = [a_pair.setdefault((q.i, q.j), len(a_pair)) for q in inst.candidates]
    cand_b = [b_pair.setdefault((q.p, q.q), len(b_pair)) for q in inst.candidates]
    have_a, have_b = [0] * len(a_pair), [0] * len(b_pair)

    def pair_bound() -> int:
        owed_a = sum(need_a - h for h in have_a if h < need_a) if need_a else 0
        owed_b = sum(need_b - h for h in have_b if h < need_b) if need_b else 0
        return max(owed_a, owed_b)

    best = _greedy_cover(cover_masks, universe)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    nodes = 0

    def packing_bound(uncovered: int, allowed: int) -> int:
        used, count = 0, 0
        u = uncovered
        while u:
            low = u & -u
            b = low.bit_length() - 1
            u ^= low
            cs = coverer_masks[b] & allowed
            if not cs & used:
                used |= cs
                count += 1
        return count

    def rec(chosen: list[int], covered: int, allowed: int):
        nonlocal best, nodes
        nodes += 1
        if budget_nodes is not None and nodes > budget_nodes:
            raise _OutOfBudget
        if deadline is not None and (nodes & 0xFF) == 0 and time.monotonic() > deadline:
            raise _OutOfBudget
        uncovered = universe & ~covered
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + pair_bound() >= len(best):
            return
        if len(chosen) + packing_bound(uncovered, allowed) >= len(best):
            return
        pick, pick_count, u = -1, None, uncovered
        while u:
            low = u & -u
            b = low.bit_length() - 1
            u ^= low
            cnt = (coverer_masks[b] & allowed).bit_count()
            if pick_count is None or cnt < pick_count:
                pick, pick_count = b, cnt
                if cnt <= 1:
                    break
        if pick_count == 0:
            return
        opts = []
        cs = coverer_masks[pick] & allowed
        while cs:
            low = cs & -cs
            c = low.bit_length() - 1
            cs ^= low
            opts.append(c)
        opts.sort(key=lambda c: (-(cover_masks[c] & uncovered).bit_count(), c))
        for c in opts:
            chosen.append(c)
            have_a[cand_a[c]] += 1
            have_b[cand_b[c]] += 1
            rec(chosen, covered | cover_masks[c], allowed)
            have_a[cand_a[c]] -= 1
            have_b[cand_b[c]] -= 1
            chosen.pop()
            allowed &= ~(1 << c)

    exact = True
    try:
        rec([], 0, (1 << C) - 1)
    except _OutOfBudget:
        exact = False
    system = QuadSystem(inst.n, inst.m, tuple(inst.candidates[c] for c in best))
    return CoverResult(len(system), system, exact, nodes)


def exact_feasible(n: int, m: int, P: ProfileSet) -> bool:
    """Whether (n, m, P) is under the candidate and bad-set limits for exact search."""
    bad = sum(comb(n, a) * comb(m, b) for a, b in P)
    return comb(n, 2) * comb(m, 2) <= MAX_CANDIDATES and bad <= MAX_BAD_SETS


def lower_bound_pairs(n: int, m: int, P: ProfileSet) -> int:
    """Counting bound: each pair on one side meets a Turan graph's worth of quads."""
    best = 0
    for a, b in P:
        if a == 2 and b <= m:
            best = max(best, comb(n, 2) * turan_t(m, b))
        if b == 2 and a <= n:
            best = max(best, comb(m, 2) * turan_t(n, a))
    return best


def family(k: int, tag: str) -> ProfileSet:
    if tag == "k2":
        return family_k2(k)
    if tag == "k3":
        if k % 2:
            raise FairquadsError(f"family k3 needs even k, got k={k}")
        return family_k3(k)
    raise FairquadsError(f"unknown family {tag!r}")


@dataclass
class BoundsReport:
    n: int
    m: int
    k: int
    family: str
    lower_bound: int
    product_upper: int
    seeds: list[int]
    random_sample_sizes: list[int]
    local_search_sizes: list[int]
    best_matrix: int
    best_constructed: int
    exact: int | None
    exact_proven: bool
    theorem_density_reference: Fraction
    timings_s: dict = field(default_factory=dict)

    def check(self):
        assert self.lower_bound <= self.best_constructed <= self.product_upper
        if self.exact is not None:
            assert self.lower_bound <= self.exact <= self.best_constructed

    def to_dict(self) -> dict:
        d = asdict(self)
        ref = self.theorem_density_reference
        d["theorem_density_reference"] = {"num": ref.numerator, "den": ref.denominator,
                                          "value": float(ref)}
        return d

    CSV_COLUMNS = ("n", "m", "k", "family", "lower_bound", "exact", "best_constructed",
                   "best_matrix", "product_upper", "random_mean", "theorem_reference")

    def csv_row(self) -> list:
        mean = (sum(self.random_sample_sizes) / len(self.random_sample_sizes)
                if self.random_sample_sizes else "")
        return [self.n, self.m, self.k, self.family, self.lower_bound,
                "" if self.exact is None else self.exact, self.best_constructed,
                self.best_matrix, self.product_upper, mean,
                float(self.theorem_density_reference)]


def bounds_report(n: int, m: int, k: int, tag: str, seeds=(0,),
                  budget_nodes: int | None = 200_000, local_budget: int | None = None
                  ) -> BoundsReport:
    """Lower bound, constructions and (for tiny instances) the exact value.

    ``best_matrix`` is the smallest system from a random or locally optimized
    matrix over Z_k; ``best_constructed`` also admits the union-of-products system.
    """
    P = family(k, tag)
    P.check_feasible(n, m)
    seeds = list(seeds)
    timings = {}

    t = time.perf_counter()
    lower = lower_bound_pairs(n, m, P)
    upper = len(union_product_construction(n, m, P))
    timings["bounds"] = time.perf_counter() - t

    t = time.perf_counter()
    sampled = [fair_count(random_matrix(n, m, k, s)) for s in seeds]
    timings["random"] = time.perf_counter() - t

    t = time.perf_counter()
    local = [len(local_search_minimize(n, m, k, P, s, local_budget)[1]) for s in seeds]
    timings["local_search"] = time.perf_counter() - t

    best_matrix = min(sampled + local)
    exact, proven = None, False
    if exact_feasible(n, m, P):
        inst = CoverInstance.build(n, m, P)
        t = time.perf_counter()
        res = exact_min_cover(inst, budget_nodes)
        timings["exact"] = time.perf_counter() - t
        if res.exact:
            exact, proven = res.size, True
    rep = BoundsReport(
        n, m, k, tag, lower, upper, seeds, sampled, local, best_matrix,
        min(best_matrix, upper), exact, proven, Fraction(n * n * m * m, 4 * k), timings)
    rep.check()
    return rep


def check_witness(inst: CoverInstance, res: CoverResult) -> bool:
    return verify_profiles(res.system, inst.P).passed
