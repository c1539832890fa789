"""Upper bounds on collapsibility from minimal exclusion sequences.

Vertices are ordered by id throughout. An ordering is any sequence of faces
of the complex that together contain every face; the default is the facet
list in lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Iterable, Optional, Sequence

import networkx as nx

from .complex import Simplex, SimplicialComplex, from_mask, to_mask

OLD, NEW = "old", "new"


@dataclass(frozen=True)
class MesResult:
    face: Simplex
    first_index: int
    """0-based position of the first ordering entry containing ``face``;
    the sequence has exactly this many entries."""
    sequence: tuple[tuple[int, str], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.sequence)

    @property
    def support(self) -> Simplex:
        return tuple(sorted(set(self.vertices)))


@dataclass(frozen=True)
class SxWitness:
    """v_i not in facets[i], and v_i in facets[j] for every later j."""

    vertices: tuple[int, ...]
    facets: tuple[Simplex, ...]

    def is_valid(self, X: SimplicialComplex) -> bool:
        k = len(self.vertices)
        if len(self.facets) != k + 1:
            return False
        if any(to_mask(f) not in X.masks for f in self.facets):
            return False
        for i, v in enumerate(self.vertices):
            if v in self.facets[i]:
                return False
            if any(v not in self.facets[j] for j in range(i + 1, k + 1)):
                return False
        return True


@dataclass(frozen=True)
class KgWitness:
    v: tuple[int, ...]
    u: tuple[int, ...]

    def is_valid(self, G: nx.Graph) -> bool:
        k = len(self.v)
        if len(self.u) != k or len(set(self.v + self.u)) != 2 * k:
            return False
        adj = G.has_edge
        return (
            all(not adj(a, b) for i, a in enumerate(self.v) for b in self.v[i + 1:])
            and all(adj(self.v[i], self.u[i]) for i in range(k))
            and all(not adj(self.v[i], self.u[j]) for i in range(k) for j in range(i + 1, k))
        )


def lex_ordering(X: SimplicialComplex) -> list[Simplex]:
    return X.facets


def validate_ordering(X: SimplicialComplex, ordering: Sequence[Sequence[int]]) -> list[int]:
    """Masks of ``ordering``; raises ValueError unless it is a valid ordering."""
    masks = [to_mask(s) for s in ordering]
    for s, m in zip(ordering, masks):
        if not any(m & ~f == 0 for f in X.masks):
            raise ValueError(f"ordering entry {tuple(s)} is not a face of the complex")
    # entries are faces, so covering every facet means listing every facet
    missing = set(X.masks) - set(masks)
    if missing:
        raise ValueError(f"ordering does not contain facet(s) {sorted(from_mask(m) for m in missing)}")
    return masks


def _mes_masks(face: int, order: Sequence[int], record: Optional[list] = None) -> int:
    """Support mask of the exclusion sequence of ``face``; fills ``record`` if given."""
    support = 0
    chosen: list[int] = []
    for sigma in order:
        if face & ~sigma == 0:
            return support
        pick = 0
        for bit in chosen:
            if not bit & sigma:
                pick = bit
                break
        if pick:
            kind = OLD
        else:
            outside = face & ~sigma
            pick = outside & -outside
            kind = NEW
            support |= pick
        chosen.append(pick)
        if record is not None:
            record.append((pick.bit_length() - 1, kind))
    raise ValueError("face lies in no entry of the ordering")


def mes(X: SimplicialComplex, ordering: Sequence[Sequence[int]], face: Iterable[int]) -> MesResult:
    order = validate_ordering(X, ordering)
    face = tuple(sorted(face))
    fm = to_mask(face)
    if not any(fm & ~f == 0 for f in X.masks):
        raise ValueError(f"{face} is not a face of the complex")
    record: list[tuple[int, str]] = []
    _mes_masks(fm, order, record)
    return MesResult(face, len(record), tuple(record))


def d_of_ordering(X: SimplicialComplex, ordering: Optional[Sequence[Sequence[int]]] = None) -> int:
    """Largest support of an exclusion sequence over all faces of X."""
    if X.is_void:
        raise ValueError("the void complex has no faces")
    order = validate_ordering(X, X.facets if ordering is None else ordering)
    return max(_mes_masks(f, order).bit_count() for f in X.face_masks())


def best_ordering(X: SimplicialComplex, max_facets: int = 7) -> tuple[int, list[Simplex]]:
    """Facet ordering minimising ``d_of_ordering``, by trying all of them."""
    m = len(X.masks)
    if m > max_facets:
        raise ValueError(f"{m} facets: ordering search is limited to {max_facets}")
    faces = X.face_masks()
    best, best_order = None, None
    for perm in permutations(X.masks):
        d = max(_mes_masks(f, perm).bit_count() for f in faces)
        if best is None or d < best:
            best, best_order = d, perm
            if d == 0:
                break
    return best, [from_mask(s) for s in best_order]


def _staircase_search(grow):
    """Breadth-first search over sets built one element at a time.

    ``grow(P)`` yields ``(v, info)`` for each admissible next element. Whether
    an element may be added depends only on the set so far, so states are sets.
    """
    parent: dict[int, tuple[int, int, object]] = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for P in frontier:
            for v, info in grow(P):
                Q = P | (1 << v)
                if Q not in parent:
                    parent[Q] = (P, v, info)
                    nxt.append(Q)
        if not nxt:
            break
        frontier = sorted(nxt, key=from_mask)
    best = frontier[0]
    steps = []
    Q = best
    while parent[Q] is not None:
        P, v, info = parent[Q]
        steps.append((v, info))
        Q = P
    steps.reverse()
    return best.bit_count(), steps, best


def d_prime(X: SimplicialComplex) -> tuple[int, SxWitness]:
    """Largest staircase set: v_i outside facet i, inside every later facet."""
    if X.is_void:
        raise ValueError("d' is undefined for the void complex")
    facets = X.masks

    def grow(P):
        above = [f for f in facets if P & ~f == 0]
        union, inter = 0, ~0
        for f in above:
            union |= f
            inter &= f
        cand = union & ~inter
        while cand:
            bit = cand & -cand
            cand ^= bit
            # the step's facet must contain P and miss v
            sigma = next(f for f in above if not f & bit)
            yield bit.bit_length() - 1, sigma

    k, steps, top = _staircase_search(grow)
    last = next(f for f in facets if top & ~f == 0)
    return k, SxWitness(
        tuple(v for v, _ in steps),
        tuple(from_mask(s) for _, s in steps) + (from_mask(last),),
    )


def k_graph(G: nx.Graph) -> tuple[int, KgWitness]:
    """Largest independent v_1..v_k with partners u_i ~ v_i and v_i ≁ u_j for i < j."""
    nodes = sorted(G.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for a, b in G.edges:
        adj[index[a]] |= 1 << index[b]
        adj[index[b]] |= 1 << index[a]

    def grow(P):
        blocked = P
        q = P
        while q:
            bit = q & -q
            q ^= bit
            blocked |= adj[bit.bit_length() - 1]
        for i in range(len(nodes)):
            if (blocked >> i) & 1:
                continue
            partners = adj[i] & ~blocked
            if partners:
                yield i, (partners & -partners).bit_length() - 1

    k, steps, _ = _staircase_search(grow)
    return k, KgWitness(
        tuple(nodes[i] for i, _ in steps), tuple(nodes[u] for _, u in steps)
    )


@dataclass(frozen=True)
class TheoremBounds:
    cov_bound: Optional[int]
    int_bound: int
    rpartite_int_bound: int


def theorem_bounds(r: int, p: Optional[int] = None, t: int = 0) -> TheoremBounds:
    """Closed-form collapsibility bounds for rank-r hypergraph complexes.

    ``t`` is the shift in the thresholded versions (threshold t+1); t=0 is the
    plain covering / intersection complex. ``p=None`` skips the cover bound.
    """
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if not 0 <= t <= r - 1:
        raise ValueError(f"need 0 <= t <= r - 1, got r={r}, t={t}")
    cov = None
    if p is not None:
        if not t <= min(r, p) - 1:
            raise ValueError(f"need 0 <= t <= min(r, p) - 1, got r={r}, p={p}, t={t}")
        cov = comb(r + p - 2 * t, r - t) - 1
    return TheoremBounds(
        cov_bound=cov,
        int_bound=comb(2 * (r - t), r - t) // 2,
        rpartite_int_bound=2 ** (r - 1),
    )
