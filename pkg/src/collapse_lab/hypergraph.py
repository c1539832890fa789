"""Hypergraphs and the complexes built from them.

Complex vertices are edge indices: vertex ``i`` of ``cov_complex(H, p)`` or
``int_complex(H)`` stands for ``H.edges[i]``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Optional, Sequence

import networkx as nx

from .complex import Simplex, SimplicialComplex, from_mask, to_mask


@dataclass(frozen=True)
class Hypergraph:
    edges: tuple[Simplex, ...]
    parts: Optional[tuple[Simplex, ...]] = None
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        for e in edges:
            if not e:
                raise ValueError("hypergraph edges must be nonempty")
            if len(set(e)) != len(e):
                raise ValueError(f"edge {e} repeats a vertex")
            if e[0] < 0:
                raise ValueError(f"edge {e}: vertex ids must be non-negative")
        if len(set(edges)) != len(edges):
            raise ValueError("hypergraph edges must be distinct")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_masks", tuple(to_mask(e) for e in edges))
        if self.parts is not None:
            parts = tuple(tuple(sorted(p)) for p in self.parts)
            seen: set[int] = set()
            for part in parts:
                if not part or seen & set(part):
                    raise ValueError("parts must be nonempty and pairwise disjoint")
                seen |= set(part)
            for e in edges:
                if any(len(set(e) & set(part)) != 1 for part in parts) or not set(e) <= seen:
                    raise ValueError(
                        f"edge {e} violates the r-partite condition |A∩V_i| = 1 for every part V_i"
                    )
            object.__setattr__(self, "parts", parts)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def ground_set(self) -> Simplex:
        ground = 0
        for m in self._masks:
            ground |= m
        if self.parts:
            ground |= to_mask(v for part in self.parts for v in part)
        return from_mask(ground)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def __len__(self) -> int:
        return len(self.edges)


# -- named families ----------------------------------------------------------

def complete_uniform(n: int, r: int) -> Hypergraph:
    """All r-subsets of {1, ..., n}."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    return Hypergraph(tuple(combinations(range(1, n + 1), r)))


def complete_r_partite(sides: Sequence[int]) -> Hypergraph:
    """All transversals of consecutive blocks of sizes ``sides`` on 1, 2, ..."""
    if not sides or any(s < 1 for s in sides):
        raise ValueError("every side must have size >= 1")
    parts, start = [], 1
    for s in sides:
        parts.append(tuple(range(start, start + s)))
        start += s
    return Hypergraph(tuple(product(*parts)), parts=tuple(parts))


def family_h1(r: int, p: int, t: int) -> Hypergraph:
    """{A ∪ [t] : A an (r-t)-subset of [r+p-t] minus [t]}; needs t <= min(r,p) - 1."""
    if not 0 <= t <= min(r, p) - 1:
        raise ValueError(f"need 0 <= t <= min(r, p) - 1, got r={r}, p={p}, t={t}")
    core = tuple(range(1, t + 1))
    rest = range(t + 1, r + p - t + 1)
    return Hypergraph(tuple(core + a for a in combinations(rest, r - t)))


def family_h2(r: int, t: int) -> Hypergraph:
    """{A ∪ [t] : A an (r-t)-subset of [2r-t] minus [t]}; needs t <= r - 1."""
    if not 0 <= t <= r - 1:
        raise ValueError(f"need 0 <= t <= r - 1, got r={r}, t={t}")
    core = tuple(range(1, t + 1))
    rest = range(t + 1, 2 * r - t + 1)
    return Hypergraph(tuple(core + a for a in combinations(rest, r - t)))


# -- covers ----------------------------------------------------------------

def _check_t(t: int):
    if t < 1:
        raise ValueError(f"threshold t must be >= 1, got {t}")


def covering_number(H: Hypergraph, t: int = 1) -> int:
    """Least size of a set meeting every edge in at least ``t`` vertices."""
    _check_t(t)
    if any(len(e) < t for e in H.edges):
        raise ValueError(f"no t-transversal exists: some edge has fewer than t={t} vertices")
    ground = H.ground_set
    for size in range(len(ground) + 1):
        for C in combinations(ground, size):
            c = to_mask(C)
            if all((m & c).bit_count() >= t for m in H.masks):
                return size
    raise AssertionError("unreachable: the ground set is a t-transversal")


def cov_facet_covers(H: Hypergraph, p: int, t: int = 1) -> dict[Simplex, Simplex]:
    """Map each facet of the covering complex to a witnessing set C with |C| <= p.

    Facets are the maximal families {A : |A ∩ C| >= t} over sets C of size
    min(p, |ground|); the first C in lexicographic order is kept as witness.
    """
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    _check_t(t)
    ground = H.ground_set
    found: dict[int, Simplex] = {}
    for C in combinations(ground, min(p, len(ground))):
        c = to_mask(C)
        face = 0
        for i, m in enumerate(H.masks):
            if (m & c).bit_count() >= t:
                face |= 1 << i
        found.setdefault(face, C)
    maximal = SimplicialComplex.from_masks(found)
    return {from_mask(f): found[f] for f in maximal.masks}


def cov_complex(H: Hypergraph, p: int, t: int = 1) -> SimplicialComplex:
    """Subfamilies of H admitting a t-transversal of size at most p."""
    return SimplicialComplex.from_masks(to_mask(f) for f in cov_facet_covers(H, p, t))


def _usable_edges(H: Hypergraph, t: int) -> list[int]:
    keep = [i for i, e in enumerate(H.edges) if len(e) >= t]
    if len(keep) < len(H.edges):
        dropped = [H.edges[i] for i in range(len(H.edges)) if i not in keep]
        warnings.warn(
            f"dropping edges smaller than t={t}, never t-intersecting with themselves: {dropped}",
            stacklevel=3,
        )
    return keep


def int_complex(H: Hypergraph, t: int = 1) -> SimplicialComplex:
    """Pairwise t-intersecting subfamilies, as cliques of the t-intersection graph."""
    _check_t(t)
    keep = _usable_edges(H, t)
    g = nx.Graph()
    g.add_nodes_from(keep)
    for i, j in combinations(keep, 2):
        if (H.masks[i] & H.masks[j]).bit_count() >= t:
            g.add_edge(i, j)
    cliques = [to_mask(c) for c in nx.find_cliques(g)] if keep else [0]
    return SimplicialComplex.from_masks(cliques)


def disjointness_graph(H: Hypergraph, t: int = 1) -> nx.Graph:
    """Graph on edge indices; i ~ j iff the edges share fewer than t vertices."""
    _check_t(t)
    keep = _usable_edges(H, t)
    g = nx.Graph()
    g.add_nodes_from(keep)
    g.add_edges_from(
        (i, j) for i, j in combinations(keep, 2)
        if (H.masks[i] & H.masks[j]).bit_count() < t
    )
    return g


def independence_complex(G: nx.Graph) -> SimplicialComplex:
    """Facets are the maximal independent sets of G."""
    if G.number_of_nodes() == 0:
        return SimplicialComplex((0,))
    if any(not isinstance(v, int) or v < 0 for v in G.nodes):
        raise ValueError("graph nodes must be non-negative integers")
    return SimplicialComplex.from_masks(
        to_mask(c) for c in nx.find_cliques(nx.complement(G))
    )


# -- text formats ------------------------------------------------------------

def _parse_parts(ranges: str, lineno: int) -> list[Simplex]:
    parts = []
    for chunk in ranges.split(","):
        chunk = chunk.strip()
        try:
            if "-" in chunk:
                lo, hi = (int(x) for x in chunk.split("-"))
                parts.append(tuple(range(lo, hi + 1)))
            else:
                parts.append((int(chunk),))
        except ValueError:
            raise ValueError(f"line {lineno}: bad part range {chunk!r}") from None
    return parts


def parse_hypergraph(text: str) -> Hypergraph:
    """One edge per line; optional ``#parts: 1-3,4-6`` header."""
    edges: list[Simplex] = []
    first_line: dict[Simplex, int] = {}
    parts = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("parts:"):
                parts = _parse_parts(body.split(":", 1)[1], lineno)
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: expected integer vertex ids, got {line!r}") from None
        if any(v < 0 for v in verts):
            raise ValueError(f"line {lineno}: vertex ids must be non-negative")
        if len(set(verts)) != len(verts):
            raise ValueError(f"line {lineno}: repeated vertex in edge")
        e = tuple(sorted(verts))
        if e in first_line:
            raise ValueError(f"line {lineno}: duplicate of the edge on line {first_line[e]}")
        first_line[e] = lineno
        edges.append(e)
    return Hypergraph(tuple(edges), parts=tuple(parts) if parts else None)


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def format_hypergraph(H: Hypergraph) -> str:
    lines = []
    if H.parts:
        lines.append("#parts: " + ",".join(
            f"{p[0]}-{p[-1]}" if list(p) == list(range(p[0], p[-1] + 1)) else
            ",".join(map(str, p)) for p in H.parts))
    lines += [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> nx.Graph:
    """Lines ``u v`` are edges, a lone ``v`` declares an isolated vertex."""
    g = nx.Graph()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: expected integer vertex ids, got {line!r}") from None
        if any(v < 0 for v in verts):
            raise ValueError(f"line {lineno}: vertex ids must be non-negative")
        if len(verts) == 1:
            g.add_node(verts[0])
        elif len(verts) == 2 and verts[0] != verts[1]:
            g.add_edge(*verts)
        else:
            raise ValueError(f"line {lineno}: expected one vertex or a pair of distinct vertices")
    return g


def read_graph(path: str | Path) -> nx.Graph:
    return parse_graph(Path(path).read_text())
