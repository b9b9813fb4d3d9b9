"""Discrete Morse matchings on simplicial complexes.

A matching is a set of pairs ``(sigma, tau)`` of faces with ``tau`` one
dimension above ``sigma``. It is a Morse matching when every face occurs in
at most one pair and the modified Hasse diagram (matched edges pointing up,
all other facet relations pointing down) has no directed cycle.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    Vertex,
    check_token,
    cone_apexes,
    face_key,
    sorted_faces,
)


class MorseError(ValueError):
    kind = "MorseError"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


def _fmt(face: Iterable[Vertex]) -> list[Vertex]:
    return sorted(face)


class NotAFace(MorseError):
    kind = "NotAFace"

    def __init__(self, face: Face):
        self.face = face
        super().__init__(f"{_fmt(face)} is not a face of the complex")

    def to_json(self) -> dict:
        return {**super().to_json(), "face": _fmt(self.face)}


class NotCodimensionOne(MorseError):
    kind = "NotCodimensionOne"

    def __init__(self, sigma: Face, tau: Face):
        self.pair = (sigma, tau)
        super().__init__(f"pair {_fmt(sigma)} < {_fmt(tau)} is not a codimension-one incidence")

    def to_json(self) -> dict:
        return {**super().to_json(), "pair": [_fmt(f) for f in self.pair]}


class DoublyMatched(MorseError):
    kind = "DoublyMatched"

    def __init__(self, face: Face, pairs: Sequence[tuple[Face, Face]]):
        self.face = face
        self.pairs = list(pairs)
        super().__init__(f"{_fmt(face)} occurs in more than one pair")

    def to_json(self) -> dict:
        return {
            **super().to_json(),
            "face": _fmt(self.face),
            "pairs": [[_fmt(s), _fmt(t)] for s, t in self.pairs],
        }


class CyclicMatching(MorseError):
    kind = "CyclicMatching"

    def __init__(self, cycle: Sequence[Face]):
        self.cycle = list(cycle)
        super().__init__(
            "matching has a closed V-path: " + " -> ".join(",".join(_fmt(f)) for f in self.cycle)
        )

    def to_json(self) -> dict:
        return {**super().to_json(), "cycle": [_fmt(f) for f in self.cycle]}


class BadInitial(MorseError):
    kind = "BadInitial"


class NotACone(MorseError):
    kind = "NotACone"


@dataclass(frozen=True)
class MorseMatching:
    pairs: frozenset[tuple[Face, Face]] = frozenset()

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[Face, Face]]:
        return sorted(self.pairs, key=lambda p: (face_key(p[0]), face_key(p[1])))

    def to_json(self) -> list[list[list[Vertex]]]:
        return [[_fmt(s), _fmt(t)] for s, t in self.sorted_pairs()]


def make_matching(pairs: Iterable[tuple[Iterable[Vertex], Iterable[Vertex]]]) -> MorseMatching:
    return MorseMatching(frozenset((frozenset(s), frozenset(t)) for s, t in pairs))


@dataclass(frozen=True)
class MorseData:
    critical: tuple[Face, ...]
    initial: Optional[Face]
    non_initial_dims: tuple[int, ...]

    def critical_dims(self) -> tuple[int, ...]:
        return tuple(len(f) - 1 for f in self.critical)

    def to_json(self) -> dict:
        return {
            "critical": [_fmt(f) for f in self.critical],
            "initial": _fmt(self.initial) if self.initial is not None else None,
            "non_initial_dims": list(self.non_initial_dims),
        }


def _check_shape(K: SimplicialComplex, M: MorseMatching) -> dict[Face, Face]:
    partner: dict[Face, Face] = {}
    seen: dict[Face, tuple[Face, Face]] = {}
    for sigma, tau in M.sorted_pairs():
        for f in (sigma, tau):
            if not K.contains_face(f):
                raise NotAFace(f)
        if not (sigma < tau and len(tau) == len(sigma) + 1):
            raise NotCodimensionOne(sigma, tau)
        for f in (sigma, tau):
            if f in seen:
                raise DoublyMatched(f, [seen[f], (sigma, tau)])
            seen[f] = (sigma, tau)
        partner[sigma] = tau
        partner[tau] = sigma
    return partner


def find_vpath_cycle(K: SimplicialComplex, partner: dict[Face, Face]) -> Optional[list[Face]]:
    """Return a closed V-path of the matching, or ``None`` if it is acyclic.

    A directed cycle of the modified Hasse diagram alternates between two
    adjacent dimensions, so each layer ``(p, p + 1)`` is searched separately
    on the graph whose nodes are the matched ``p``-faces: ``sigma -> sigma'``
    when ``sigma'`` is a facet of ``partner(sigma)`` other than ``sigma``.
    """
    for p in range(K.dim):
        succ: dict[Face, list[Face]] = {}
        for sigma in K.faces(p):
            tau = partner.get(sigma)
            if tau is None or len(tau) != len(sigma) + 1:
                continue
            succ[sigma] = sorted_faces(
                tau - {v} for v in tau if tau - {v} != sigma and (tau - {v}) in partner
                and len(partner[tau - {v}]) == len(tau)
            )
        cycle = _find_cycle(succ)
        if cycle is not None:
            out: list[Face] = []
            for sigma in cycle:
                out.extend((sigma, partner[sigma]))
            out.append(cycle[0])
            return out
    return None


def _find_cycle(succ: dict[Face, list[Face]]) -> Optional[list[Face]]:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in succ}
    for root in sorted_faces(succ):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                path.pop()
                continue
            if colour[nxt] == GREY:
                return path[path.index(nxt):]
            if colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def _census(
    K: SimplicialComplex, partner: dict[Face, Face], initial: Optional[Iterable[Vertex]]
) -> MorseData:
    critical = tuple(f for f in K.all_faces() if f not in partner)
    if K.is_empty():
        if initial:
            raise BadInitial("the empty complex has no initial cell")
        return MorseData((), None, ())
    vertices = sorted(next(iter(f)) for f in critical if len(f) == 1)
    if not vertices:
        # cannot happen for an acyclic matching on a nonempty complex
        raise MorseError("valid matching left no critical vertex")
    if initial is None:
        chosen = frozenset([vertices[0]])
    else:
        chosen = frozenset(initial)
        if len(chosen) != 1 or next(iter(chosen)) not in vertices:
            raise BadInitial(f"initial cell {_fmt(chosen)} is not a critical vertex")
    dims = sorted(len(f) - 1 for f in critical if f != chosen)
    return MorseData(critical, chosen, tuple(dims))


def validate_matching(
    K: SimplicialComplex, M: MorseMatching, initial: Optional[Iterable[Vertex]] = None
) -> MorseData:
    """Check ``M`` is an acyclic partial matching on ``K`` and take the critical census.

    The initial cell defaults to the least critical vertex.
    """
    partner = _check_shape(K, M)
    cycle = find_vpath_cycle(K, partner)
    if cycle is not None:
        raise CyclicMatching(cycle)
    return _census(K, partner, initial)


def cone_matching(K: SimplicialComplex, apex: Vertex) -> MorseMatching:
    """Pair every face ``F`` missing ``apex`` with ``F | {apex}``."""
    if apex not in cone_apexes(K):
        raise NotACone(f"{apex!r} is not a cone apex of the complex")
    a = frozenset([apex])
    pairs = frozenset((f, f | a) for f in K.all_faces() if apex not in f)
    return MorseMatching(pairs)


def greedy_matching(K: SimplicialComplex) -> MorseMatching:
    """Deterministic acyclic matching built from elementary collapses.

    Cones get the cone matching on their least apex. Otherwise free pairs
    are collapsed in canonical order; when none is left, the least
    top-dimensional face is declared critical and collapsing resumes.
    """
    apexes = cone_apexes(K)
    if apexes:
        return cone_matching(K, min(apexes))

    remaining = set(K.all_faces())
    cofaces: dict[Face, set[Face]] = {f: set() for f in remaining}
    for f in remaining:
        if len(f) > 1:
            for v in f:
                cofaces[f - {v}].add(f)

    order = {f: i for i, f in enumerate(sorted_faces(remaining))}
    pairs = []
    free = {f for f in remaining if len(cofaces[f]) == 1}

    def remove(f: Face) -> None:
        remaining.discard(f)
        free.discard(f)
        if len(f) > 1:
            for v in f:
                g = f - {v}
                cofaces[g].discard(f)
                if g in remaining:
                    if len(cofaces[g]) == 1:
                        free.add(g)
                    else:
                        free.discard(g)

    while remaining:
        if free:
            sigma = min(free, key=order.__getitem__)
            (tau,) = cofaces[sigma]
            pairs.append((sigma, tau))
            remove(tau)
            remove(sigma)
        else:
            top = max(len(f) for f in remaining)
            remove(min((f for f in remaining if len(f) == top), key=order.__getitem__))

    M = MorseMatching(frozenset(pairs))
    validate_matching(K, M)
    return M


def parse_face(entry: object) -> Face:
    if isinstance(entry, str) or not isinstance(entry, (list, tuple)):
        raise ComplexError(f"face must be a list of vertex tokens, got {entry!r}")
    try:
        return frozenset(check_token(t) for t in entry)
    except ComplexError:
        raise
    except TypeError as exc:
        raise ComplexError(str(exc)) from None


def matching_from_spec(
    K: SimplicialComplex,
    pair_list: Iterable[Sequence[object]],
    initial: Optional[Sequence[object]] = None,
) -> tuple[MorseMatching, MorseData]:
    """Parse ``[[sigma, tau], ...]`` vertex lists, validate, apply ``initial``."""
    pairs = []
    for entry in pair_list:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ComplexError(f"matching pair must be [sigma, tau], got {entry!r}")
        pairs.append((parse_face(entry[0]), parse_face(entry[1])))
    M = MorseMatching(frozenset(pairs))
    if len(M.pairs) != len(pairs):
        dup = Counter(pairs).most_common(1)[0][0]
        raise DoublyMatched(dup[0], [dup, dup])
    init = parse_face(initial) if initial is not None else None
    return M, validate_matching(K, M, init)
