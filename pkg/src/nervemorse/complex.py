"""Finite abstract simplicial complexes stored by their facets.

Vertices are opaque string tokens. A face is a ``frozenset`` of tokens and
is never empty. Every complex keeps its facets in canonical order: by
dimension, then by the sorted vertex list.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

Vertex = str
Face = frozenset


class ComplexError(ValueError):
    """Malformed input to a complex constructor or operation."""


def check_token(token: object) -> Vertex:
    if not isinstance(token, str):
        raise ComplexError(f"vertex token must be a string, got {token!r}")
    if not token or not token.isprintable() or any(c.isspace() for c in token):
        raise ComplexError(f"malformed vertex token {token!r}")
    return token


def face_key(face: Iterable[Vertex]) -> tuple[int, tuple[Vertex, ...]]:
    """Canonical sort key: dimension first, then lexicographic vertex list."""
    verts = tuple(sorted(face))
    return len(verts), verts


def sorted_faces(faces: Iterable[Face]) -> list[Face]:
    return sorted(faces, key=face_key)


def _antichain(sets: Iterable[frozenset]) -> tuple[Face, ...]:
    # largest first so that a kept set is never absorbed later
    kept: list[frozenset] = []
    for s in sorted(set(sets), key=lambda f: (-len(f), sorted(f))):
        if s and not any(s <= k for k in kept):
            kept.append(s)
    return tuple(sorted_faces(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by an inclusion antichain of facets.

    Build instances with :func:`from_facets`; the constructor trusts its
    input to already be a canonical antichain.
    """

    facets: tuple[Face, ...] = ()

    @cached_property
    def vertex_set(self) -> frozenset[Vertex]:
        return frozenset().union(*self.facets)

    @cached_property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def _faces_by_dim(self) -> tuple[tuple[Face, ...], ...]:
        layers: list[set[Face]] = [set() for _ in range(self.dim + 1)]
        for facet in self.facets:
            for size in range(1, len(facet) + 1):
                layers[size - 1].update(frozenset(c) for c in combinations(facet, size))
        return tuple(tuple(sorted_faces(layer)) for layer in layers)

    def is_empty(self) -> bool:
        return not self.facets

    def faces(self, k: int) -> tuple[Face, ...]:
        """All ``k``-dimensional faces in canonical order."""
        if k < 0:
            raise ComplexError("dimension must be nonnegative")
        if k > self.dim:
            return ()
        return self._faces_by_dim[k]

    def all_faces(self) -> Iterator[Face]:
        for layer in self._faces_by_dim:
            yield from layer

    def face_counts(self) -> list[int]:
        return [len(layer) for layer in self._faces_by_dim]

    def num_faces(self) -> int:
        return sum(self.face_counts())

    def contains_face(self, face: Iterable[Vertex]) -> bool:
        face = frozenset(face)
        return bool(face) and any(face <= f for f in self.facets)

    def __contains__(self, face: object) -> bool:
        return isinstance(face, (set, frozenset)) and self.contains_face(face)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.face_counts()))

    def to_lists(self) -> list[list[Vertex]]:
        return [sorted(f) for f in self.facets]

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(sorted(f)) + "}" for f in self.facets)
        return f"SimplicialComplex([{body}])"


EMPTY = SimplicialComplex()


def from_facets(facet_list: Iterable[Iterable[Vertex]]) -> SimplicialComplex:
    """Complex whose faces are all nonempty subsets of the listed sets.

    Entries contained in other entries are absorbed and empty entries are
    dropped.
    """
    sets = []
    for entry in facet_list:
        if isinstance(entry, str):
            raise ComplexError(f"facet must be a collection of tokens, got {entry!r}")
        sets.append(frozenset(check_token(t) for t in entry))
    return SimplicialComplex(_antichain(sets))


def faces(K: SimplicialComplex, k: int) -> tuple[Face, ...]:
    return K.faces(k)


def intersect(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Faces common to ``A`` and ``B``, via pairwise facet intersections."""
    if A is B or A == B:
        return A
    return SimplicialComplex(_antichain(f & g for f in A.facets for g in B.facets))


def intersect_all(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    it = iter(complexes)
    try:
        result = next(it)
    except StopIteration:
        raise ComplexError("intersection of no complexes is undefined") from None
    for K in it:
        result = intersect(result, K)
    return result


def union(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(_antichain(A.facets + B.facets))


def union_all(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    facets: list[Face] = []
    for K in complexes:
        facets.extend(K.facets)
    return SimplicialComplex(_antichain(facets))


def is_subcomplex(A: SimplicialComplex, B: SimplicialComplex) -> bool:
    """True iff every facet of ``A`` is a face of ``B``."""
    return all(B.contains_face(f) for f in A.facets)


def induced(K: SimplicialComplex, vertices: Iterable[Vertex]) -> SimplicialComplex:
    """Vertex-induced subcomplex of ``K`` on ``vertices``."""
    keep = frozenset(vertices)
    return SimplicialComplex(_antichain(f & keep for f in K.facets))


def star(K: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    """Closed star ``{F : F | {v} in K}``, i.e. the closure of facets through ``v``."""
    if v not in K.vertex_set:
        raise ComplexError(f"vertex {v!r} is not in the complex")
    return SimplicialComplex(tuple(f for f in K.facets if v in f))


def cone_apexes(K: SimplicialComplex) -> frozenset[Vertex]:
    """Vertices ``v`` with ``star(K, v) == K``: those lying in every facet."""
    if K.is_empty():
        return frozenset()
    return frozenset.intersection(*K.facets)


def relabel(K: SimplicialComplex, prefix: str) -> SimplicialComplex:
    return SimplicialComplex(
        tuple(sorted_faces(frozenset(prefix + v for v in f) for f in K.facets))
    )


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Join ``A * B`` with vertices of ``A`` renamed ``L:v`` and of ``B`` ``R:v``.

    The empty complex is the unit: ``A * EMPTY`` is ``A`` relabelled.
    """
    left, right = relabel(A, "L:"), relabel(B, "R:")
    if left.is_empty():
        return right
    if right.is_empty():
        return left
    facets = (f | g for f in left.facets for g in right.facets)
    return SimplicialComplex(tuple(sorted_faces(facets)))
