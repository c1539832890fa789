import warnings
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from collapse_lab.collapse import Undecided
from collapse_lab.hypergraph import cov_complex, cov_facet_covers, disjointness_graph
from collapse_lab.extremal import (
    SetPairSystem,
    check_system,
    cov_witness_system,
    frankl_kalai_witness,
    int_witness_system,
    lemma_bound,
    max_system_search,
    verify_extremal_complexes,
    verify_lemma,
)
from collapse_lab.mes import d_prime, k_graph
from conftest import hypergraphs


def naive_max_system(r, p, ground, thr=0):
    """Longest pair sequence by plain depth-first search, no symmetry pruning."""
    sets_a = [frozenset(c) for n in range(r + 1) for c in combinations(ground, n)]
    sets_b = [frozenset(c) for n in range(p + 1) for c in combinations(ground, n)]
    pairs = [(a, b) for a in sets_a for b in sets_b if len(a & b) <= thr]
    best = 0

    def grow(chosen):
        nonlocal best
        best = max(best, len(chosen))
        for a, b in pairs:
            if all(len(x & b) > thr for x, _ in chosen):
                grow(chosen + [(a, b)])

    grow([])
    return best


class TestCheckSystem:
    def test_examples(self):
        assert check_system(SetPairSystem([(1,), (2,)], [(2,), (1,)], 1, 1), "frankl_kalai")
        assert not check_system(SetPairSystem([(1,), (2,)], [(1,), (1,)], 1, 1), "frankl_kalai")
        # A_1 misses B_2
        assert not check_system(SetPairSystem([(1,), (2,)], [(2,), (3,)], 1, 1), "frankl_kalai")
        assert not check_system(SetPairSystem([(1,), (2,)], [(2,), ()], 1, 1), "frankl_kalai")

    def test_size_caps(self):
        assert not check_system(SetPairSystem([(1, 2)], [()], 1, 1), "frankl_kalai")

    def test_furedi_threshold(self):
        ok = SetPairSystem([(1, 2), (1, 3)], [(1, 3), (1, 2)], 2, 2, t=1)
        assert check_system(ok, "furedi")
        assert not check_system(ok, "frankl_kalai")
        # |A_1 ∩ B_2| = 1 is not above t
        bad = SetPairSystem([(1, 2), (1, 3)], [(1, 3), (1, 4)], 2, 2, t=1)
        assert not check_system(bad, "furedi")

    def test_lnp(self):
        parts = ((1, 2), (3, 4))
        ok = SetPairSystem([(1, 3), (2, 4)], [(2, 4), (1, 3)], 2, 2, partition=parts)
        assert check_system(ok, "lnp")
        assert not check_system(SetPairSystem(ok.a_sets, ok.b_sets, 2, 2), "lnp")
        not_transversal = SetPairSystem([(1, 2), (2, 4)], [(3, 4), (1, 3)], 2, 2, partition=parts)
        assert not check_system(not_transversal, "lnp")
        meets_diagonal = SetPairSystem([(1, 3), (2, 4)], [(2, 4), (2, 3)], 2, 2, partition=parts)
        assert not check_system(meets_diagonal, "lnp")

    def test_unknown_lemma(self):
        with pytest.raises(ValueError):
            check_system(SetPairSystem([], [], 1, 1), "erdos")
        with pytest.raises(ValueError):
            lemma_bound("erdos", 1, 1)


class TestWitness:
    @pytest.mark.parametrize("r, p", [(r, p) for r in range(1, 7) for p in range(1, 7) if r + p <= 7])
    def test_frankl_kalai_witness_is_tight(self, r, p):
        w = frankl_kalai_witness(r, p)
        assert w.k == comb(r + p, r)
        assert check_system(w, "frankl_kalai")


class TestMaxSystemSearch:
    @pytest.mark.parametrize("r, p, g", [(1, 1, 2), (1, 1, 3), (2, 1, 3), (1, 2, 3), (2, 1, 4), (2, 2, 4)])
    def test_matches_naive_search(self, r, p, g):
        assert max_system_search("frankl_kalai", r, p, ground_size=g) == naive_max_system(r, p, range(1, g + 1))

    def test_furedi_matches_naive_search(self):
        found = max_system_search("furedi", 2, 2, 1, ground_size=4)
        assert found == naive_max_system(2, 2, range(1, 5), thr=1)
        assert found <= lemma_bound("furedi", 2, 2, 1)

    @pytest.mark.parametrize("r, p", [(1, 1), (2, 1), (1, 2)])
    def test_frankl_kalai_attained(self, r, p):
        assert max_system_search("frankl_kalai", r, p, ground_size=r + p + 1) == comb(r + p, r)

    @pytest.mark.parametrize("sizes, expected", [([2], 2), ([2, 2], 4), ([1, 2], 0), ([3], 2)])
    def test_lnp(self, sizes, expected):
        assert max_system_search("lnp", part_sizes=sizes) == expected

    def test_arguments(self):
        with pytest.raises(ValueError):
            max_system_search("frankl_kalai", 1, 1)
        with pytest.raises(ValueError):
            max_system_search("frankl_kalai", 1, 1, ground_size=9)
        with pytest.raises(ValueError):
            max_system_search("lnp", part_sizes=[2, 0])
        with pytest.raises(Undecided):
            max_system_search("frankl_kalai", 2, 2, ground_size=5, budget=10)

    def test_verify_lemma_report(self):
        rep = verify_lemma("frankl_kalai", 1, 1, ground_size=3)
        assert rep == {"lemma": "frankl_kalai", "params": {"r": 1, "p": 1, "t": 0, "ground": 3},
                       "k_found": 2, "bound": 2, "ok": True}
        assert verify_lemma("lnp", part_sizes=[2, 2])["bound"] == 4


class TestProofSystems:
    @settings(max_examples=60, deadline=None)
    @given(hypergraphs(max_ground=6, max_edges=7), st.integers(1, 2), st.integers(1, 2))
    def test_cov_staircase_gives_pair_system(self, H, p, t):
        if min(len(e) for e in H.edges) < t or t > min(H.rank, p):
            return
        X = cov_complex(H, p, t)
        _, witness = d_prime(X)
        system = cov_witness_system(H, p, witness, cov_facet_covers(H, p, t), t)
        assert check_system(system, "furedi" if t > 1 else "frankl_kalai")
        assert system.k <= lemma_bound("furedi", H.rank, p, t - 1)

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs(max_ground=6, max_edges=8), st.integers(1, 2))
    def test_int_staircase_gives_pair_system(self, H, t):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            G = disjointness_graph(H, t)
        if t > H.rank:
            return
        _, witness = k_graph(G)
        system = int_witness_system(H, witness, t)
        assert check_system(system, "furedi" if t > 1 else "frankl_kalai")
        assert system.k <= lemma_bound("furedi", H.rank, H.rank, t - 1)


class TestExtremalComplexes:
    @pytest.mark.parametrize("r, p, t", [(1, 1, 0), (2, 1, 0), (1, 2, 0), (2, 2, 1), (3, 2, 1)])
    def test_all_checks_pass(self, r, p, t):
        report = verify_extremal_complexes(r, p, t)
        assert report["ok"], report
        names = {c["name"] for c in report["checks"]}
        assert {"cov_simplex_boundary", "int_cross_polytope", "rpartite_cross_polytope"} <= names
        if t:
            assert {"h1_cov_simplex_boundary", "h2_int_cross_polytope"} <= names

    def test_sharpness_found_for_small_bounds(self):
        checks = {c["name"]: c for c in verify_extremal_complexes(2, 1)["checks"]}
        assert checks["cov_simplex_boundary"]["dimension"] == 2
        assert checks["cov_simplex_boundary"]["sharp"] is True
        assert checks["int_cross_polytope"]["dimension"] == 3
        assert checks["int_cross_polytope"]["sharp"] is True

    def test_invalid(self):
        with pytest.raises(ValueError):
            verify_extremal_complexes(0)
