"""Brute-force oracles and hypothesis strategies shared by the test modules.

The oracles work on frozensets straight from the definitions and share no
code with the package beyond the input types.
"""
from functools import lru_cache
from itertools import chain, combinations, permutations, product

import networkx as nx
import pytest
from hypothesis import strategies as st

from collapse_lab.complex import make_complex
from collapse_lab.hypergraph import Hypergraph


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, n) for n in range(len(items) + 1))


def brute_faces(facets):
    return {frozenset(s) for f in facets for s in powerset(f)}


def brute_maximal(faces):
    return {f for f in faces if not any(f < g for g in faces)}


def brute_tau(edges, t=1):
    ground = set().union(*edges) if edges else set()
    sizes = [len(C) for C in powerset(sorted(ground))
             if all(len(set(A) & set(C)) >= t for A in edges)]
    return min(sizes)


def brute_cov_faces(H, p, t=1):
    idx = range(len(H.edges))
    return {frozenset(F) for F in powerset(idx) if brute_tau([H.edges[i] for i in F], t) <= p}


def brute_int_faces(H, t=1):
    idx = [i for i, e in enumerate(H.edges) if len(e) >= t]
    return {
        frozenset(F) for F in powerset(idx)
        if all(len(set(H.edges[a]) & set(H.edges[b])) >= t for a, b in combinations(F, 2))
    }


def brute_d_prime(facets):
    """Largest k with facets s_1..s_{k+1} and v_i not in s_i, v_i in s_j (i < j)."""
    facets = [frozenset(f) for f in facets]
    verts = sorted(set().union(*facets))
    best = 0
    for k in range(1, len(verts) + 1):
        found = False
        for vs in permutations(verts, k):
            for sig in product(facets, repeat=k + 1):
                if all(vs[i] not in sig[i] for i in range(k)) and all(
                    vs[i] in sig[j] for i in range(k) for j in range(i + 1, k + 1)
                ):
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = k
    return best


def brute_k_graph(G):
    nodes = sorted(G.nodes)
    best = 0
    for k in range(1, len(nodes) // 2 + 1):
        ok = False
        for vs in permutations(nodes, k):
            if any(G.has_edge(a, b) for a, b in combinations(vs, 2)):
                continue
            for us in product(nodes, repeat=k):
                if all(G.has_edge(vs[i], us[i]) for i in range(k)) and all(
                    not G.has_edge(vs[i], us[j]) for i in range(k) for j in range(i + 1, k)
                ):
                    ok = True
                    break
            if ok:
                break
        if not ok:
            break
        best = k
    return best


def brute_mes_support(face, ordering):
    """Direct transcription of the minimal exclusion sequence rules."""
    face = frozenset(face)
    ordering = [frozenset(s) for s in ordering]
    i = next(n for n, s in enumerate(ordering) if face <= s)
    seq = []
    for j in range(i):
        old = [v for v in seq if v not in ordering[j]]
        seq.append(old[0] if old else min(face - ordering[j]))
    return set(seq)


def brute_d_collapsible(facets, d):
    """Naive search over every free face of size <= d, memoised on face sets."""

    @lru_cache(maxsize=None)
    def solve(faces):
        if not faces:
            return True
        maximal = brute_maximal(faces)
        for eta in faces:
            if len(eta) > d:
                continue
            above = [f for f in maximal if eta <= f]
            if len(above) != 1:
                continue
            tau = above[0]
            rest = frozenset(s for s in faces if not (eta <= s <= tau))
            if solve(rest):
                return True
        return False

    return solve(frozenset(brute_faces(facets)))


def brute_collapsibility(facets):
    d = 0
    while not brute_d_collapsible(facets, d):
        d += 1
    return d


# -- strategies --------------------------------------------------------------

@st.composite
def complexes(draw, max_vertices=5, max_facets=5):
    n = draw(st.integers(1, max_vertices))
    facets = draw(st.lists(
        st.frozensets(st.integers(0, n - 1), min_size=1, max_size=n),
        min_size=1, max_size=max_facets,
    ))
    return make_complex(sorted(tuple(sorted(f)) for f in facets))


@st.composite
def hypergraphs(draw, max_ground=6, max_rank=3, max_edges=8):
    n = draw(st.integers(1, max_ground))
    r = draw(st.integers(1, min(max_rank, n)))
    pool = [c for k in range(1, r + 1) for c in combinations(range(1, n + 1), k)]
    edges = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=min(max_edges, len(pool)), unique=True))
    return Hypergraph(tuple(edges))


@st.composite
def graphs(draw, max_nodes=7):
    n = draw(st.integers(0, max_nodes))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(chosen)
    return g


# -- named complexes ---------------------------------------------------------

TRIANGLE = [(1, 2), (1, 3), (2, 3)]
OCTAHEDRON = [
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 4),
    (1, 2, 5), (1, 3, 5), (2, 4, 5), (3, 4, 5),
]


@pytest.fixture
def triangle():
    return make_complex(TRIANGLE)


@pytest.fixture
def octahedron():
    return make_complex(OCTAHEDRON)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
