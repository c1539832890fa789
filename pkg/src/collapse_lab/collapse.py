"""Elementary d-collapses and an exact d-collapsibility search.

A step ``(eta, tau)`` removes every face sigma with eta ⊆ sigma ⊆ tau; both
ends are inclusive, so collapsing ``(∅, tau)`` on a single simplex leaves the
void complex.
"""
from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Optional, Union

from .complex import Simplex, SimplicialComplex, from_mask, to_mask

DEFAULT_BUDGET = 10**7


class Undecided(Exception):
    """A search exhausted its node budget before reaching an answer."""


@dataclass(frozen=True)
class CollapseStep:
    eta: Simplex
    tau: Simplex

    def to_json(self) -> dict:
        return {"eta": list(self.eta), "tau": list(self.tau)}


@dataclass(frozen=True)
class CollapseCertificate:
    d: int
    steps: tuple[CollapseStep, ...]

    def to_json(self) -> dict:
        return {"d": self.d, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data: Union[dict, str]) -> "CollapseCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        steps = tuple(
            CollapseStep(tuple(sorted(s["eta"])), tuple(sorted(s["tau"]))) for s in data["steps"]
        )
        return cls(int(data["d"]), steps)


def _carrier(facets: tuple[int, ...], eta: int) -> Optional[int]:
    """The unique facet containing ``eta``, or None."""
    found = None
    for f in facets:
        if eta & ~f == 0:
            if found is not None:
                return None
            found = f
    return found


def _collapse(facets: tuple[int, ...], eta: int, tau: int) -> tuple[int, ...]:
    others = tuple(f for f in facets if f != tau)
    fresh = []
    e = eta
    while e:
        bit = e & -e
        e ^= bit
        rest = tau & ~bit
        if not any(rest & ~o == 0 for o in others):
            fresh.append(rest)
    return others + tuple(fresh)


def free_faces(X: SimplicialComplex, d: int) -> list[CollapseStep]:
    """Every (eta, tau) with |eta| <= d and tau the only facet above eta."""
    if X.is_void:
        raise ValueError("the void complex has no faces")
    steps = []
    for tau in X.masks:
        others = [f for f in X.masks if f != tau]
        for size in range(min(d, tau.bit_count()) + 1):
            for eta in combinations(from_mask(tau), size):
                em = to_mask(eta)
                if not any(em & ~o == 0 for o in others):
                    steps.append(CollapseStep(eta, from_mask(tau)))
    steps.sort(key=lambda s: (len(s.eta), s.eta))
    return steps


def apply_collapse(X: SimplicialComplex, step: CollapseStep) -> SimplicialComplex:
    eta, tau = to_mask(step.eta), to_mask(step.tau)
    if eta & ~tau or _carrier(X.masks, eta) != tau:
        raise ValueError(f"{step.eta} is not a free face with carrier {step.tau}")
    return SimplicialComplex.from_masks(_collapse(X.masks, eta, tau))


@dataclass(frozen=True)
class GreedyOutcome:
    certificate: Optional[CollapseCertificate]
    stuck: Optional[SimplicialComplex]

    @property
    def collapsed(self) -> bool:
        return self.certificate is not None


def _greedy_steps(facets: tuple[int, ...], d: int) -> tuple[list[CollapseStep], tuple[int, ...]]:
    X = SimplicialComplex.from_masks(facets)
    steps = []
    while not X.is_void:
        free = free_faces(X, d)
        if not free:
            break
        steps.append(free[0])
        X = apply_collapse(X, free[0])
    return steps, X.masks


def greedy_collapse(X: SimplicialComplex, d: int) -> GreedyOutcome:
    """Always take the first free face. Getting stuck proves nothing."""
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    steps, rest = _greedy_steps(X.masks, d)
    if rest:
        return GreedyOutcome(None, SimplicialComplex(rest))
    return GreedyOutcome(CollapseCertificate(d, tuple(steps)), None)


def canonical_key(facets: tuple[int, ...], brute_limit: int = 24) -> tuple[int, ...]:
    """Facet masks after a label-independent relabelling where affordable.

    Vertex classes come from colour refinement on the vertex-facet incidence
    structure; within classes every ordering is tried when there are at most
    ``brute_limit`` combinations, else ties fall back to vertex id. Equal keys
    always mean isomorphic complexes.
    """
    vmask = 0
    for f in facets:
        vmask |= f
    verts = from_mask(vmask)
    colour = dict.fromkeys(verts, 0)
    n_classes = 1
    while True:
        fsig = {f: (f.bit_count(), tuple(sorted(colour[v] for v in from_mask(f)))) for f in facets}
        vsig = {v: (colour[v], tuple(sorted(fsig[f] for f in facets if f >> v & 1))) for v in verts}
        ranked = sorted(set(vsig.values()))
        rank = {sig: i for i, sig in enumerate(ranked)}
        colour = {v: rank[vsig[v]] for v in verts}
        if len(ranked) == n_classes:
            break
        n_classes = len(ranked)
    cells: list[list[int]] = [[] for _ in range(n_classes)]
    for v in verts:
        cells[colour[v]].append(v)
    if prod(factorial(len(c)) for c in cells) <= brute_limit:
        choices = [list(permutations(c)) for c in cells]
    else:
        choices = [[tuple(c)] for c in cells]
    best = None
    for arrangement in product(*choices):
        label: dict[int, int] = {}
        for cell in arrangement:
            for v in cell:
                label[v] = len(label)
        key = tuple(sorted(sum(1 << label[v] for v in from_mask(f)) for f in facets))
        if best is None or key < best:
            best = key
    return best


def _large_part(facets: tuple[int, ...], d: int) -> tuple[int, ...]:
    return tuple(f for f in facets if f.bit_count() > d)


def _drop_small(facets: tuple[int, ...], d: int, steps: list[tuple[int, int]]) -> tuple[int, ...]:
    """Delete facets of size <= d one at a time until none is left.

    The result is the complex generated by the facets larger than d. Any full
    collapse must eventually touch such a facet tau, and deleting tau alone
    d-collapses onto whatever that first touch would have left, while moves on
    other facets commute with it; so these deletions never lose a solution.
    """
    while True:
        small = next((f for f in facets if f.bit_count() <= d), None)
        if small is None:
            return facets
        steps.append((small, small))
        facets = _collapse(facets, small, small)


def _moves(facets: tuple[int, ...], d: int) -> list[tuple[int, int]]:
    """Branches from a state whose facets all exceed d in size.

    Removing [eta', tau] for eta ⊆ eta' ⊆ tau leaves a complex that still
    d-collapses onto the one left by [eta, tau], so per facet only the free
    faces of size exactly d are tried.
    """
    if len(facets) == 1:
        return [(0, facets[0])]
    moves = []
    for tau in facets:
        others = [f for f in facets if f != tau]
        for eta in combinations(from_mask(tau), d):
            em = to_mask(eta)
            if not any(em & ~o == 0 for o in others):
                moves.append((em, tau))
    return moves


class _Search:
    def __init__(self, d: int, budget: int, seed: Optional[int]):
        self.d = d
        self.budget = budget
        self.rng = random.Random(seed) if seed is not None else None
        self.failed: set[tuple[int, ...]] = set()
        self.failed_raw: set[tuple[int, ...]] = set()
        self.nodes = 0

    def run(self, facets: tuple[int, ...]) -> Optional[list[tuple[int, int]]]:
        """Moves on large facets leading to void, or None."""
        facets = _large_part(facets, self.d)
        if not facets:
            return []
        raw = tuple(sorted(facets))
        if raw in self.failed_raw:
            return None
        key = canonical_key(raw)
        if key in self.failed:
            self.failed_raw.add(raw)
            return None
        self.nodes += 1
        if self.nodes > self.budget:
            raise Undecided(f"d={self.d}: search budget of {self.budget} states exceeded")
        moves = _moves(facets, self.d)
        if self.rng is not None:
            self.rng.shuffle(moves)
        else:
            # largest interval first
            moves.sort(key=lambda m: (-(m[1].bit_count() - m[0].bit_count()), from_mask(m[1]), from_mask(m[0])))
        for eta, tau in moves:
            rest = self.run(_collapse(facets, eta, tau))
            if rest is not None:
                return [(eta, tau)] + rest
        self.failed.add(key)
        self.failed_raw.add(raw)
        return None


def _replay(facets: tuple[int, ...], d: int, moves: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Interleave the forced small-facet deletions with the searched moves."""
    steps: list[tuple[int, int]] = []
    facets = _drop_small(facets, d, steps)
    for eta, tau in moves:
        steps.append((eta, tau))
        facets = _drop_small(_collapse(facets, eta, tau), d, steps)
    if facets:
        raise AssertionError("replayed moves did not reach the void complex")
    return steps


def is_d_collapsible(
    X: SimplicialComplex,
    d: int,
    budget: int = DEFAULT_BUDGET,
    seed: Optional[int] = None,
) -> tuple[bool, Optional[CollapseCertificate]]:
    """Exact decision with a replayable certificate on success.

    Raises Undecided once more than ``budget`` distinct search states have been
    expanded. ``seed`` shuffles the branch order instead of the default
    largest-interval-first order.
    """
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, sum(1 << f.bit_count() for f in X.masks) + 1000))
    try:
        found = _Search(d, budget, seed).run(X.masks)
    finally:
        sys.setrecursionlimit(old_limit)
    if found is None:
        return False, None
    steps = tuple(CollapseStep(from_mask(e), from_mask(t)) for e, t in _replay(X.masks, d, found))
    return True, CollapseCertificate(d, steps)


def collapsibility(X: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> int:
    return collapsibility_with_certificate(X, budget)[0]


def collapsibility_with_certificate(
    X: SimplicialComplex, budget: int = DEFAULT_BUDGET
) -> tuple[int, CollapseCertificate]:
    """Least d for which X is d-collapsible, trying d = 0, 1, 2, ..."""
    if X.is_void:
        return 0, CollapseCertificate(0, ())
    top = max(f.bit_count() for f in X.masks)
    for d in range(top + 1):
        ok, cert = is_d_collapsible(X, d, budget)
        if ok:
            return d, cert
    raise AssertionError("every complex is (dim + 1)-collapsible")


def verify_certificate(X: SimplicialComplex, cert: CollapseCertificate) -> bool:
    """Replay ``cert`` on the full face set of X, independently of the search."""
    faces = set(X.face_masks())
    for step in cert.steps:
        eta, tau = to_mask(step.eta), to_mask(step.tau)
        if len(step.eta) > cert.d or eta & ~tau or eta not in faces or tau not in faces:
            return False
        above = [s for s in faces if eta & ~s == 0]
        if any(s & ~tau for s in above):
            return False
        faces.difference_update(above)
    return not faces
