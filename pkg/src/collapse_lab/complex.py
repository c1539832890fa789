"""Finite simplicial complexes stored by their facets.

Faces are kept internally as integer bitmasks (bit ``v`` set iff vertex ``v``
is in the face); the public surface speaks in sorted vertex tuples.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

Simplex = tuple[int, ...]


def to_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        if v < 0:
            raise ValueError(f"vertex ids must be non-negative, got {v}")
        mask |= 1 << v
    return mask


@lru_cache(maxsize=1 << 16)
def from_mask(mask: int) -> Simplex:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including ``mask`` itself and 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def antichain(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop duplicates and dominated masks; result sorted lexicographically."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=from_mask))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facet antichain.

    ``masks == ()`` is the void complex (no faces at all) and ``masks == (0,)``
    is the empty complex ``{∅}``.
    """

    masks: tuple[int, ...]

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(antichain(masks))

    @property
    def facets(self) -> list[Simplex]:
        return [from_mask(m) for m in self.masks]

    @property
    def vertex_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    @property
    def vertices(self) -> Simplex:
        return from_mask(self.vertex_mask)

    @property
    def is_void(self) -> bool:
        return not self.masks

    @property
    def dimension(self) -> int:
        """Largest face size minus one; -1 for ``{∅}``."""
        if self.is_void:
            raise ValueError("the void complex has no dimension")
        return max(m.bit_count() for m in self.masks) - 1

    def face_masks(self) -> list[int]:
        seen: set[int] = set()
        for f in self.masks:
            seen.update(submasks(f))
        return sorted(seen, key=from_mask)

    def faces(self) -> list[Simplex]:
        """Every face, in lexicographic order by vertex id."""
        return [from_mask(m) for m in self.face_masks()]

    def __contains__(self, face: Iterable[int]) -> bool:
        return is_face(self, face)

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        return f"SimplicialComplex({self.facets})"


VOID = SimplicialComplex(())
EMPTY = SimplicialComplex((0,))


def make_complex(candidate_facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """The downward closure of ``candidate_facets``.

    An empty candidate list gives the void complex; ``[()]`` gives ``{∅}``.
    """
    return SimplicialComplex.from_masks(to_mask(f) for f in candidate_facets)


def full_simplex(vertices: Iterable[int]) -> SimplicialComplex:
    return SimplicialComplex((to_mask(vertices),))


def simplex_boundary(vertices: Sequence[int]) -> SimplicialComplex:
    full = to_mask(vertices)
    return SimplicialComplex.from_masks(full & ~(1 << v) for v in vertices)


def cross_polytope_boundary(pairs: Sequence[tuple[int, int]]) -> SimplicialComplex:
    facets: list[int] = [0]
    for a, b in pairs:
        facets = [f | (1 << a) for f in facets] + [f | (1 << b) for f in facets]
    return SimplicialComplex.from_masks(facets)


def is_face(X: SimplicialComplex, face: Iterable[int]) -> bool:
    m = to_mask(face)
    return any(m & ~f == 0 for f in X.masks)


def deletion(X: SimplicialComplex, v: int) -> SimplicialComplex:
    """Faces of ``X`` avoiding ``v``."""
    if X.is_void:
        return X
    bit = 1 << v
    return SimplicialComplex.from_masks(f & ~bit for f in X.masks)


def link(X: SimplicialComplex, v: int) -> SimplicialComplex:
    bit = 1 << v
    if not X.vertex_mask & bit:
        raise ValueError(f"vertex {v} is not a vertex of the complex")
    return SimplicialComplex.from_masks(f & ~bit for f in X.masks if f & bit)


def euler_characteristic(X: SimplicialComplex) -> int:
    if X.is_void:
        raise ValueError("Euler characteristic of the void complex is undefined")
    return sum(1 if m.bit_count() % 2 else -1 for m in X.face_masks() if m)


def recognize_boundary_of_simplex(X: SimplicialComplex) -> Optional[int]:
    """Dimension ``n-1`` of the simplex whose boundary ``X`` is, else None.

    Requires at least two vertices; ``{∅}`` and the void complex give None.
    """
    n = X.vertex_mask.bit_count()
    if n < 2 or len(X.masks) != n:
        return None
    if any(f.bit_count() != n - 1 for f in X.masks):
        return None
    # n distinct (n-1)-subsets of an n-set are all of them
    return n - 1


def antipodal_pairs(X: SimplicialComplex) -> Optional[list[tuple[int, int]]]:
    """Pair every vertex with the unique vertex it shares no facet with."""
    partner: dict[int, int] = {}
    for v in X.vertices:
        bit = 1 << v
        together = 0
        for f in X.masks:
            if f & bit:
                together |= f
        apart = X.vertex_mask & ~together
        if apart.bit_count() != 1:
            return None
        partner[v] = apart.bit_length() - 1
    if any(partner[partner[v]] != v for v in partner):
        return None
    return sorted({(min(v, w), max(v, w)) for v, w in partner.items()})


def recognize_boundary_of_cross_polytope(X: SimplicialComplex) -> Optional[int]:
    """Number ``k`` of antipodal pairs if ``X`` is a cross-polytope boundary."""
    if X.vertex_mask == 0:
        return None
    pairs = antipodal_pairs(X)
    if pairs is None:
        return None
    k = len(pairs)
    if len(X.masks) != 2**k:
        return None
    for f in X.masks:
        for a, b in pairs:
            if ((f >> a) & 1) + ((f >> b) & 1) != 1:
                return None
    return k


def relabel(X: SimplicialComplex, mapping: dict[int, int]) -> SimplicialComplex:
    return SimplicialComplex.from_masks(
        to_mask(mapping[v] for v in from_mask(f)) for f in X.masks
    )


# -- text and JSON formats -------------------------------------------------

def parse_facets(text: str) -> list[Simplex]:
    """Facet lines in file order.

    ``#void`` yields ``[]`` and ``#empty`` yields ``[()]``; other ``#`` lines
    are comments.
    """
    facets: list[Simplex] = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tag = line[1:].strip().lower()
            if tag in ("void", "empty"):
                if header is not None and header != tag:
                    raise ValueError(f"line {lineno}: conflicting header #{tag}")
                header = tag
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: expected integer vertex ids, got {line!r}") from None
        if any(v < 0 for v in verts):
            raise ValueError(f"line {lineno}: vertex ids must be non-negative")
        if len(set(verts)) != len(verts):
            raise ValueError(f"line {lineno}: repeated vertex in facet")
        facets.append(tuple(sorted(verts)))
    if header is not None:
        if facets:
            raise ValueError(f"#{header} complex cannot list facets")
        return [] if header == "void" else [()]
    if not facets:
        raise ValueError("no facets given; use '#void' or '#empty' explicitly")
    return facets


def parse_complex(text: str) -> SimplicialComplex:
    return make_complex(parse_facets(text))


def read_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def format_complex(X: SimplicialComplex) -> str:
    if X.is_void:
        return "#void\n"
    if X.masks == (0,):
        return "#empty\n"
    return "".join(" ".join(map(str, f)) + "\n" for f in X.facets)


def complex_to_json(X: SimplicialComplex) -> dict:
    return {"vertices": list(X.vertices), "facets": [list(f) for f in X.facets]}


def complex_from_json(data: dict | str) -> SimplicialComplex:
    if isinstance(data, str):
        data = json.loads(data)
    return make_complex(data["facets"])
