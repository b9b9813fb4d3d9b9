"""Intersection posets of covers and order complexes of finite posets."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .complex import (
    SimplicialComplex,
    from_facets,
    intersect,
    is_subcomplex,
    sorted_faces,
    union_all,
)


class CoverError(ValueError):
    pass


class UnionMismatch(CoverError):
    """The cover members do not union to the ambient complex."""

    def __init__(self, missing: Sequence[frozenset], extra: Sequence[frozenset] = ()):
        self.missing = list(missing)
        self.extra = list(extra)
        parts = []
        if self.missing:
            shown = ", ".join("{" + ",".join(sorted(f)) + "}" for f in self.missing[:10])
            parts.append(f"{len(self.missing)} ambient facet(s) not covered: {shown}")
        if self.extra:
            shown = ", ".join("{" + ",".join(sorted(f)) + "}" for f in self.extra[:10])
            parts.append(f"{len(self.extra)} member facet(s) outside the ambient complex: {shown}")
        super().__init__("; ".join(parts))


@dataclass(frozen=True)
class Cover:
    ambient: SimplicialComplex
    members: tuple[tuple[str, SimplicialComplex], ...]

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.members]

    @property
    def spaces(self) -> list[SimplicialComplex]:
        return [K for _, K in self.members]

    def check(self) -> None:
        """Raise unless members are subcomplexes whose union is the ambient complex."""
        if not self.members:
            raise CoverError("a cover needs at least one member")
        extra = [
            f for K in self.spaces for f in K.facets if not self.ambient.contains_face(f)
        ]
        covered = union_all(self.spaces)
        missing = [f for f in self.ambient.facets if not covered.contains_face(f)]
        if missing or extra:
            raise UnionMismatch(missing, sorted_faces(set(extra)))


def make_cover(
    ambient: SimplicialComplex, members: Iterable[tuple[str, SimplicialComplex]]
) -> Cover:
    return Cover(ambient, tuple(members))


def index_set_key(index_set: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Shortlex order on index sets: size first, then lexicographic."""
    t = tuple(sorted(index_set))
    return len(t), t


def format_id(index_set: Iterable[int]) -> str:
    return "I{" + ",".join(str(i) for i in sorted(index_set)) + "}"


@dataclass(frozen=True)
class PosetElement:
    id: str
    space: SimplicialComplex
    index_sets: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Poset:
    """A finite poset on string-labelled elements.

    ``less`` holds every strict relation ``(a, b)`` meaning ``a < b``.
    """

    elements: tuple[str, ...]
    less: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def lt(self, a: str, b: str) -> bool:
        return (a, b) in self.less

    def restrict(self, keep: Iterable[str]) -> "Poset":
        keep = set(keep)
        elems = tuple(e for e in self.elements if e in keep)
        rel = frozenset((a, b) for a, b in self.less if a in keep and b in keep)
        return Poset(elems, rel)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class IntersectionPoset:
    """Distinct intersections of a cover, ordered by reverse inclusion.

    ``Y <= Y'`` whenever ``space(Y)`` contains ``space(Y')``, so the cover
    members sit at the bottom and the total intersection at the top.
    """

    cover: Cover
    elements: tuple[PosetElement, ...]
    order: Poset

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, element_id: str) -> PosetElement:
        for e in self.elements:
            if e.id == element_id:
                return e
        raise KeyError(element_id)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.elements]

    def lt(self, a: str, b: str) -> bool:
        return self.order.lt(a, b)

    def comparable_pairs(self) -> list[tuple[PosetElement, PosetElement]]:
        """All ``(Y, Z)`` with ``space(Y)`` strictly containing ``space(Z)``."""
        return [(y, z) for y in self.elements for z in self.elements if self.lt(y.id, z.id)]


def intersection_poset(cover: Cover) -> IntersectionPoset:
    """Build the poset of intersections over all nonempty index subsets.

    Elements are deduplicated by face-set equality and keep every index set
    that generates them; the id comes from the shortlex-least one.
    """
    cover.check()
    n = len(cover.members)
    spaces = cover.spaces
    found: dict[SimplicialComplex, list[tuple[int, ...]]] = {}
    # level-by-level so each intersection reuses one of size r - 1
    previous: dict[tuple[int, ...], SimplicialComplex] = {}
    for r in range(1, n + 1):
        current: dict[tuple[int, ...], SimplicialComplex] = {}
        for I in combinations(range(1, n + 1), r):
            space = spaces[I[0] - 1] if r == 1 else intersect(previous[I[:-1]], spaces[I[-1] - 1])
            current[I] = space
            found.setdefault(space, []).append(I)
        previous = current

    elements = []
    for space, index_sets in found.items():
        index_sets.sort(key=index_set_key)
        elements.append(PosetElement(format_id(index_sets[0]), space, tuple(index_sets)))
    elements.sort(key=lambda e: index_set_key(e.index_sets[0]))

    less = set()
    for y in elements:
        for z in elements:
            if y is not z and is_subcomplex(z.space, y.space):
                less.add((y.id, z.id))
    order = Poset(tuple(e.id for e in elements), frozenset(less))
    return IntersectionPoset(cover, tuple(elements), order)


def strict_down_set(P: IntersectionPoset | Poset, y: PosetElement | str) -> Poset:
    """Induced subposet of elements strictly below ``y``.

    In an intersection poset these are the spaces strictly containing
    ``space(y)``.
    """
    order = P.order if isinstance(P, IntersectionPoset) else P
    yid = y.id if isinstance(y, PosetElement) else y
    if yid not in order.elements:
        raise KeyError(f"{yid!r} is not an element of the poset")
    return order.restrict(e for e in order.elements if order.lt(e, yid))


def order_complex(Q: Poset) -> SimplicialComplex:
    """Complex of chains of ``Q``; facets are the maximal chains."""
    if not Q.elements:
        return SimplicialComplex()
    up: dict[str, list[str]] = {e: [] for e in Q.elements}
    for a, b in Q.less:
        up[a].append(b)
    # cover relations: a < b with nothing strictly between
    covers: dict[str, list[str]] = {}
    for a in Q.elements:
        above = set(up[a])
        covers[a] = sorted(
            b for b in above if not any(Q.lt(c, b) for c in above if c != b)
        )
    minimal = [e for e in Q.elements if not any(Q.lt(x, e) for x in Q.elements)]

    chains: list[list[str]] = []

    def extend(chain: list[str]) -> None:
        nxt = covers[chain[-1]]
        if not nxt:
            chains.append(list(chain))
            return
        for b in nxt:
            chain.append(b)
            extend(chain)
            chain.pop()

    for m in minimal:
        extend([m])
    return from_facets(chains)
