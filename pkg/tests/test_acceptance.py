"""Acceptance criteria, one test per criterion; each records a PASS/FAIL line."""
import json
import time
from contextlib import contextmanager
from itertools import combinations, product
from math import comb

import numpy as np
import pytest

import conftest
from fairquads import gk
from fairquads.caen import build_caen, caen_density, verify_cover5
from fairquads.exact import CoverInstance, bounds_report, exact_min_cover, lower_bound_pairs
from fairquads.zk import (ProfileSet, ZkMatrix, family_k2, family_k3, find_fair_submatrix,
                          quads_from_matrix, random_matrix, turan_t, union_product_construction,
                          verify_profiles)
from fairquads.zk.scans import count_fair_2x2, lemma1, lemma2

from oracles import (bitset_triangles, naive_cover5, naive_fair_quads, naive_min_cover,
                     naive_triangles, turan_bruteforce)


@contextmanager
def criterion(num, title):
    info = {}
    t = time.perf_counter()
    status = "FAIL"
    try:
        yield info
        status = "PASS"
    finally:
        detail = info.get("detail", "")
        line = f"[{status}] criterion {num:2d}: {title} ({time.perf_counter() - t:.2f}s) {detail}"
        conftest.ACCEPTANCE_LINES.append(line.rstrip())
        print(line)


def test_c01_two_row_exhaustive():
    with criterion(1, "every 2x(k+1) matrix over Z_k has a fair submatrix, k=2,3,4") as info:
        t = time.perf_counter()
        results = [lemma1(k) for k in (2, 3, 4)]
        elapsed = time.perf_counter() - t
        info["detail"] = f"cases={[r.cases for r in results]}"
        assert [r.cases for r in results] == [64, 6561, 4 ** 10]
        assert all(r.failures == 0 for r in results)
        assert elapsed < 30


@pytest.mark.slow
def test_c02_three_row_exhaustive():
    with criterion(2, "every 3xk matrix over Z_k has a fair submatrix, k=2,4") as info:
        t = time.perf_counter()
        results = [lemma2(k) for k in (2, 4)]
        elapsed = time.perf_counter() - t
        info["detail"] = f"cases={[r.cases for r in results]}"
        assert [r.cases for r in results] == [64, 4 ** 12]
        assert all(r.failures == 0 for r in results)
        assert elapsed < 60


def test_c03_odd_sharpness():
    with criterion(3, "rows i*j mod k have no fair submatrix, k=3,5,7,9"):
        for k in (3, 5, 7, 9):
            rows = [[i * j % k for j in range(k)] for i in range(3)]
            assert find_fair_submatrix(ZkMatrix.from_rows(k, rows)) is None
            assert naive_fair_quads(rows, k) == []


def test_c04_fair_2x2_count():
    with criterion(4, "fair 2x2 matrices over Z_k number k^3, k=2..7"):
        for k in range(2, 8):
            brute = sum((a + d - b - c) % k == 0 for a, b, c, d in product(range(k), repeat=4))
            assert count_fair_2x2(k) == brute == k ** 3


def test_c05_random_density():
    with criterion(5, "random 12x12 density near 1/k with valid coverage, k=2,3,4") as info:
        t = time.perf_counter()
        total = comb(12, 2) ** 2
        notes = []
        for k in (2, 3, 4):
            ratios = []
            for s in range(50):
                Q = quads_from_matrix(random_matrix(12, 12, k, seed=s))
                assert verify_profiles(Q, family_k2(k)).passed
                if k % 2 == 0:
                    assert verify_profiles(Q, family_k3(k)).passed
                ratios.append(len(Q) / total)
            mean, sd = np.mean(ratios), np.std(ratios, ddof=1)
            notes.append(f"k={k}: mean={mean:.4f} sd={sd:.4f}")
            assert abs(mean - 1 / k) <= 3 * sd
        info["detail"] = "; ".join(notes)
        assert time.perf_counter() - t < 60


def test_c06_sandwich():
    with criterion(6, "lower bound <= best constructed <= union product") as info:
        notes = []
        for n, m in ((8, 8), (10, 10), (12, 10)):
            for k in (2, 4):
                P = family_k2(k)
                rep = bounds_report(n, m, k, "k2", seeds=range(3))
                expected = max(comb(n, 2) * turan_t(m, k + 1), comb(m, 2) * turan_t(n, k + 1))
                upper = len(union_product_construction(n, m, P))
                assert rep.lower_bound == lower_bound_pairs(n, m, P) == expected
                assert rep.product_upper == upper
                assert rep.lower_bound <= rep.best_matrix <= upper
                assert rep.lower_bound <= rep.best_constructed <= upper
                notes.append(f"({n},{m},{k}):{rep.lower_bound}<={rep.best_matrix}<={upper}")
        info["detail"] = " ".join(notes)


def test_c07_turan_formula():
    with criterion(7, "turan_t matches exhaustive graph minimum, n<=6"):
        t = time.perf_counter()
        for n in range(2, 7):
            for s in range(2, n + 1):
                assert turan_t(n, s) == turan_bruteforce(n, s), (n, s)
        assert time.perf_counter() - t < 120


def test_c08_exact_solver():
    with criterion(8, "exact minimum systems match subset enumeration") as info:
        t = time.perf_counter()
        cases = [(2, 2, [(2, 2)], 1), (3, 3, [(2, 2)], 9)]
        cases += [(2, m, [(2, 3)], turan_t(m, 3)) for m in range(3, 7)]
        got = []
        for n, m, prof, want in cases:
            res = exact_min_cover(CoverInstance.build(n, m, ProfileSet(tuple(prof))))
            got.append(res.size)
            assert res.exact and res.size == want == naive_min_cover(n, m, prof)
        info["detail"] = f"values={got}"
        assert time.perf_counter() - t < 120


def test_c09_cliques():
    with criterion(9, "clique numbers of G_k, k=2..7") as info:
        t = time.perf_counter()
        want = {2: 2, 3: 3, 4: 2, 5: 5, 6: 2, 7: 7}
        got = {}
        for k, size in want.items():
            r = gk.max_clique(k)
            got[k] = r.size
            assert r.exact and r.size == size == len(r.witness)
            assert all(gk.is_edge(f, g) for f, g in combinations(r.witness, 2))
        info["detail"] = f"sizes={got}"
        assert time.perf_counter() - t < 600


@pytest.mark.longrun
def test_c10_clique_k9_with_resume(tmp_path):
    with criterion(10, "clique number of G_9 is 3, interrupted and resumed") as info:
        r = gk.max_clique(9)
        assert r.exact and r.size == 3
        assert all(gk.is_edge(f, g) for f, g in combinations(r.witness, 2))
        ck = tmp_path / "k9.json"
        # stop halfway through the branch phase, after candidate enumeration
        enum = gk._Budget(None, None)
        gk.orthomorphisms(9, enum)
        part = gk.max_clique(9, budget_nodes=(enum.used + r.nodes) // 2, checkpoint=ck,
                             checkpoint_interval=0)
        state = json.loads(ck.read_text())
        assert not part.exact and not state["done"] and state["next_branch"] > 0
        resumed = gk.max_clique(9, checkpoint=ck, checkpoint_interval=0)
        assert resumed.exact and resumed.size == 3
        assert resumed.resumed_from == state["next_branch"]
        info["detail"] = f"nodes={r.nodes} resumed at branch {state['next_branch']}"


def test_c11_triangles():
    with criterion(11, "triangle counts of G_2, G_3, G_4"):
        assert gk.count_triangles(2) == naive_triangles(2) == 0
        assert gk.count_triangles(4) == bitset_triangles(4) == 0
        assert gk.count_triangles(3) == naive_triangles(3)


def test_c12_parity_four_graph():
    with criterion(12, "parity 4-graph covers every 5-set; density near 5/16") as info:
        t = time.perf_counter()
        for s in range(100):
            H = build_caen(random_matrix(6, 6, 2, seed=s))
            assert verify_cover5(H) is None
        assert naive_cover5(6, 6, H.e22) is None
        dens = [float(caen_density(build_caen(random_matrix(20, 20, 2, seed=s))))
                for s in range(50)]
        info["detail"] = f"mean density={np.mean(dens):.4f}"
        assert abs(np.mean(dens) - 5 / 16) <= 0.02
        assert time.perf_counter() - t < 60
