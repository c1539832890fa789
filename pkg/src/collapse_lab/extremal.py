"""Cross-intersecting set-pair systems and the extremal complexes.

Three set-pair lemmas are checked here:

* ``frankl_kalai``: |A_i| <= r, |B_i| <= p, A_i ∩ B_i = ∅ and A_i ∩ B_j ≠ ∅
  for i < j force k <= C(r+p, r).
* ``furedi``: the same with |A_i ∩ B_i| <= t and |A_i ∩ B_j| > t, giving
  k <= C(r+p-2t, r-t).
* ``lnp``: A_i, B_i transversals of an r-part partition with the disjointness
  conditions of ``frankl_kalai``, giving k <= 2^r.

``max_system_search`` is exact only for the ground set it is handed; it
says nothing about larger ground sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

from .collapse import DEFAULT_BUDGET, Undecided, is_d_collapsible
from .complex import Simplex, recognize_boundary_of_cross_polytope, recognize_boundary_of_simplex, to_mask
from .hypergraph import (
    Hypergraph,
    complete_r_partite,
    complete_uniform,
    cov_complex,
    family_h1,
    family_h2,
    int_complex,
)
from .mes import KgWitness, SxWitness

LEMMAS = ("frankl_kalai", "furedi", "lnp")


@dataclass(frozen=True)
class SetPairSystem:
    a_sets: tuple[Simplex, ...]
    b_sets: tuple[Simplex, ...]
    r: int
    p: int
    t: int = 0
    partition: Optional[tuple[Simplex, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "a_sets", tuple(tuple(sorted(a)) for a in self.a_sets))
        object.__setattr__(self, "b_sets", tuple(tuple(sorted(b)) for b in self.b_sets))
        if self.partition is not None:
            object.__setattr__(self, "partition", tuple(tuple(sorted(q)) for q in self.partition))

    @property
    def k(self) -> int:
        return len(self.a_sets)


def lemma_bound(lemma: str, r: int, p: int = 0, t: int = 0) -> int:
    if lemma == "frankl_kalai":
        return comb(r + p, r)
    if lemma == "furedi":
        return comb(r + p - 2 * t, r - t)
    if lemma == "lnp":
        return 2**r
    raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")


def _is_transversal(s: int, parts: Sequence[int]) -> bool:
    union = 0
    for q in parts:
        union |= q
        if (s & q).bit_count() != 1:
            return False
    return s & ~union == 0


def check_system(system: SetPairSystem, lemma: str) -> bool:
    """True iff every hypothesis of ``lemma`` holds for ``system``."""
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")
    if len(system.a_sets) != len(system.b_sets):
        return False
    A = [to_mask(a) for a in system.a_sets]
    B = [to_mask(b) for b in system.b_sets]
    t = system.t if lemma == "furedi" else 0
    if lemma == "lnp":
        if not system.partition:
            return False
        parts = [to_mask(q) for q in system.partition]
        if any(not _is_transversal(s, parts) for s in A + B):
            return False
    else:
        if any(a.bit_count() > system.r for a in A) or any(b.bit_count() > system.p for b in B):
            return False
    k = len(A)
    if any((A[i] & B[i]).bit_count() > t for i in range(k)):
        return False
    return all((A[i] & B[j]).bit_count() > t for i in range(k) for j in range(i + 1, k))


def frankl_kalai_witness(r: int, p: int) -> SetPairSystem:
    """r-subsets of [r+p] in lex order, each paired with its complement."""
    if r < 1 or p < 1:
        raise ValueError(f"need r, p >= 1, got r={r}, p={p}")
    ground = set(range(1, r + p + 1))
    a_sets = tuple(combinations(sorted(ground), r))
    b_sets = tuple(tuple(sorted(ground - set(a))) for a in a_sets)
    return SetPairSystem(a_sets, b_sets, r, p)


def _canonical_pair(a: int, b: int, touched: int, classes: Sequence[Sequence[int]]) -> bool:
    """Orbit representative under permutations of untouched elements in a class.

    Along each class's untouched elements (ascending) the membership type
    (both, A only, B only, neither) must be non-increasing.
    """
    for cls in classes:
        prev = 3
        for bit in cls:
            if touched & bit:
                continue
            kind = 3 if a & b & bit else 2 if a & bit else 1 if b & bit else 0
            if kind > prev:
                return False
            prev = kind
    return True


def _candidate_sets(lemma: str, size_cap: int, ground: Sequence[int], parts: Sequence[Sequence[int]]):
    if lemma == "lnp":
        return [sum(1 << v for v in choice) for choice in product(*parts)]
    return [to_mask(c) for n in range(size_cap + 1) for c in combinations(ground, n)]


def max_system_search(
    lemma: str,
    r: int = 1,
    p: int = 1,
    t: int = 0,
    ground_size: Optional[int] = None,
    part_sizes: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Largest k of a system satisfying ``lemma`` on a fixed small ground set.

    The ground set is {1, ..., ground_size}; for ``lnp`` it is the union of
    consecutive parts of sizes ``part_sizes`` and ``r`` is the number of parts.
    Raises Undecided past ``budget`` search nodes.
    """
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")
    if lemma == "lnp":
        if not part_sizes or any(s < 1 for s in part_sizes):
            raise ValueError("lnp needs part sizes, each >= 1")
        parts, start = [], 1
        for s in part_sizes:
            parts.append(list(range(start, start + s)))
            start += s
        ground = [v for q in parts for v in q]
        classes = [[1 << v for v in q] for q in parts]
        thr = 0
    else:
        if ground_size is None or not 0 <= ground_size <= 6:
            raise ValueError("ground_size must be given and at most 6 for exhaustive search")
        if r < 0 or p < 0:
            raise ValueError("set size caps must be non-negative")
        ground = list(range(1, ground_size + 1))
        parts = []
        classes = [[1 << v for v in ground]]
        thr = t if lemma == "furedi" else 0
    a_cands = _candidate_sets(lemma, r, ground, parts)
    b_cands = _candidate_sets(lemma, p, ground, parts)
    pairs = [(a, b) for a in a_cands for b in b_cands if (a & b).bit_count() <= thr]

    best = 0
    nodes = 0

    def extend(a_list: list[int], touched: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise Undecided(f"{lemma}: search budget of {budget} nodes exceeded")
        best = max(best, len(a_list))
        for a, b in pairs:
            if any((x & b).bit_count() <= thr for x in a_list):
                continue
            if not _canonical_pair(a, b, touched, classes):
                continue
            a_list.append(a)
            extend(a_list, touched | a | b)
            a_list.pop()

    extend([], 0)
    return best


def verify_lemma(
    lemma: str,
    r: int = 1,
    p: int = 1,
    t: int = 0,
    ground_size: Optional[int] = None,
    part_sizes: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    if lemma == "lnp":
        r = len(part_sizes or ())
        params = {"parts": list(part_sizes or ())}
    else:
        params = {"r": r, "p": p, "t": t, "ground": ground_size}
    found = max_system_search(lemma, r, p, t, ground_size, part_sizes, budget)
    bound = lemma_bound(lemma, r, p, t)
    return {"lemma": lemma, "params": params, "k_found": found, "bound": bound, "ok": found <= bound}


# -- systems extracted from staircase witnesses --------------------------------

def cov_witness_system(
    H: Hypergraph, p: int, witness: SxWitness, covers: dict[Simplex, Simplex], threshold: int = 1
) -> SetPairSystem:
    """Staircase edges plus ∅ against the covers of the staircase facets."""
    a_sets = tuple(H.edges[v] for v in witness.vertices) + ((),)
    b_sets = tuple(covers[f] for f in witness.facets)
    return SetPairSystem(a_sets, b_sets, H.rank, p, threshold - 1)


def int_witness_system(H: Hypergraph, witness: KgWitness, threshold: int = 1) -> SetPairSystem:
    """(A_1..A_k, B_k..B_1) against (B_1..B_k, A_k..A_1), nodes read as edges."""
    A = [H.edges[v] for v in witness.v]
    B = [H.edges[u] for u in witness.u]
    return SetPairSystem(
        tuple(A + B[::-1]), tuple(B + A[::-1]), H.rank, H.rank, threshold - 1
    )


# -- extremal complexes ----------------------------------------------------

def _sharpness(X, bound: int, search_limit: int, budget: int) -> Optional[bool]:
    """Exact check that X is bound-collapsible but not (bound-1)-collapsible."""
    if bound > search_limit:
        return None
    try:
        below, _ = is_d_collapsible(X, bound - 1, budget)
        at, _ = is_d_collapsible(X, bound, budget)
    except Undecided:
        return None
    return at and not below


def _check(name, X, recognizer, expected, search_limit, budget, **params) -> dict:
    found = recognizer(X)
    return {
        "name": name,
        "params": params,
        "vertices": len(X.vertices),
        "facets": len(X.masks),
        "expected_dimension": expected,
        "dimension": found,
        "ok": found == expected,
        "sharp": _sharpness(X, expected, search_limit, budget) if found == expected else None,
    }


def verify_extremal_complexes(
    r: int, p: int = 1, t: int = 0, search_limit: int = 3, budget: int = DEFAULT_BUDGET
) -> dict:
    """Rebuild the sharpness examples and recognise their sphere structure.

    ``sharp`` is the exact-search verdict (collapsible at the bound, not one
    below) when the bound is at most ``search_limit``, otherwise None.
    """
    if r < 1 or p < 1:
        raise ValueError(f"need r, p >= 1, got r={r}, p={p}")
    checks = [
        _check("cov_simplex_boundary", cov_complex(complete_uniform(r + p, r), p),
               recognize_boundary_of_simplex, comb(r + p, r) - 1, search_limit, budget, r=r, p=p),
        _check("int_cross_polytope", int_complex(complete_uniform(2 * r, r)),
               recognize_boundary_of_cross_polytope, comb(2 * r, r) // 2, search_limit, budget, r=r),
        _check("rpartite_cross_polytope", int_complex(complete_r_partite([2] * r)),
               recognize_boundary_of_cross_polytope, 2 ** (r - 1), search_limit, budget, r=r),
    ]
    if t > 0:
        if t <= min(r, p) - 1:
            checks.append(_check(
                "h1_cov_simplex_boundary", cov_complex(family_h1(r, p, t), p, t + 1),
                recognize_boundary_of_simplex, comb(r + p - 2 * t, r - t) - 1,
                search_limit, budget, r=r, p=p, t=t))
        if t <= r - 1:
            checks.append(_check(
                "h2_int_cross_polytope", int_complex(family_h2(r, t), t + 1),
                recognize_boundary_of_cross_polytope, comb(2 * (r - t), r - t) // 2,
                search_limit, budget, r=r, t=t))
    return {
        "params": {"r": r, "p": p, "t": t},
        "checks": checks,
        "ok": all(c["ok"] and c["sharp"] is not False for c in checks),
    }
