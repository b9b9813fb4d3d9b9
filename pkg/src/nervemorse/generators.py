"""Standard complexes and covers: chessboard complexes, cycles, simplices, spheres."""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable

from .complex import SimplicialComplex, Vertex, cone_apexes, from_facets, star
from .gluing import ElementMatching, empty_entry
from .morse import MorseMatching, cone_matching, validate_matching
from .poset import Cover, intersection_poset, make_cover


def cell(i: int, j: int) -> Vertex:
    return f"r{i}c{j}"


def chessboard(m: int, n: int) -> SimplicialComplex:
    """Non-attacking rook placements on an ``m`` by ``n`` board."""
    if m < 0 or n < 0:
        raise ValueError("board dimensions must be nonnegative")
    k = min(m, n)
    if k == 0:
        return SimplicialComplex()
    facets = []
    for rows in combinations(range(1, m + 1), k):
        for cols in permutations(range(1, n + 1), k):
            facets.append([cell(i, j) for i, j in zip(rows, cols)])
    return from_facets(facets)


def star_cover(m: int) -> Cover:
    """Cover of the ``m x m`` chessboard complex by the stars of the first-column cells."""
    if m < 2:
        raise ValueError("star_cover needs m >= 2")
    board = chessboard(m, m)
    members = [(f"X{i}", star(board, cell(i, 1))) for i in range(1, m + 1)]
    return make_cover(board, members)


def cycle(k: int) -> SimplicialComplex:
    """The ``k``-cycle graph on vertices ``v0 .. v{k-1}``."""
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_facets([f"v{i}", f"v{(i + 1) % k}"] for i in range(k))


def simplex(vertices: Iterable[Vertex]) -> SimplicialComplex:
    return from_facets([list(vertices)])


def sphere_boundary(d: int) -> SimplicialComplex:
    """Boundary of the ``(d+1)``-simplex on vertices ``0 .. d+1``, a ``d``-sphere."""
    if d < 0:
        raise ValueError("sphere dimension must be nonnegative")
    verts = [str(i) for i in range(d + 2)]
    return from_facets(combinations(verts, d + 1))


def arc_cover(k: int, arcs: int = 3) -> Cover:
    """Cover ``cycle(k)`` by ``arcs`` paths, consecutive paths sharing an endpoint."""
    if not 2 <= arcs <= k:
        raise ValueError("need 2 <= arcs <= k")
    K = cycle(k)
    cuts = [round(i * k / arcs) for i in range(arcs + 1)]
    members = []
    for a in range(arcs):
        edges = [[f"v{i % k}", f"v{(i + 1) % k}"] for i in range(cuts[a], cuts[a + 1])]
        members.append((f"A{a + 1}", from_facets(edges)))
    return make_cover(K, members)


def facet_cover(K: SimplicialComplex) -> Cover:
    """Cover by the closed facets: each facet's star is the facet itself."""
    return make_cover(K, [(f"F{i + 1}", from_facets([f])) for i, f in enumerate(K.facets)])


def vertex_star_cover(K: SimplicialComplex) -> Cover:
    return make_cover(K, [(f"S{v}", star(K, v)) for v in sorted(K.vertex_set)])


def is_cycle_graph(K: SimplicialComplex) -> bool:
    if K.dim != 1 or len(K.facets) < 3:
        return False
    degree: dict[Vertex, int] = {}
    for e in K.facets:
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    if any(d != 2 for d in degree.values()) or len(K.facets) != len(degree):
        return False
    return len(_walk(K)) == len(degree)


def _walk(K: SimplicialComplex) -> list[Vertex]:
    nbrs: dict[Vertex, list[Vertex]] = {}
    for e in K.facets:
        a, b = sorted(e)
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    start = min(nbrs)
    walk = [start]
    prev, cur = None, start
    while True:
        nxt = min(v for v in nbrs[cur] if v != prev)
        if nxt == start or len(walk) > len(nbrs):
            return walk
        walk.append(nxt)
        prev, cur = cur, nxt


def cycle_matching(K: SimplicialComplex) -> MorseMatching:
    """Walk the cycle ``v0, v1, ...`` from its least vertex and pair ``vi`` with edge ``v(i-1) vi``.

    Leaves ``v0`` and the closing edge critical.
    """
    if not is_cycle_graph(K):
        raise ValueError("complex is not a cycle graph")
    w = _walk(K)
    pairs = frozenset(
        (frozenset([w[i]]), frozenset([w[i - 1], w[i]])) for i in range(1, len(w))
    )
    return MorseMatching(pairs)


def canonical_chessboard_assignment(cover: Cover) -> dict[str, ElementMatching]:
    """Hand-chosen matchings for ``star_cover(4)``.

    Cone matchings on the stars (apex at the first-column cell), the cycle
    matching on each pairwise intersection, the empty matching on the
    three-point triple intersections, nothing on the empty total.
    """
    if len(cover.members) != 4:
        raise ValueError("cover shape mismatch: expected the 4-member star cover")
    P = intersection_poset(cover)
    out: dict[str, ElementMatching] = {}
    for e in P.elements:
        I = e.index_sets[0]
        Y = e.space
        if len(I) == 1:
            apex = cell(I[0], 1)
            if apex not in cone_apexes(Y):
                raise ValueError(f"cover shape mismatch: {e.id} is not a cone on {apex}")
            M = cone_matching(Y, apex)
        elif len(I) == 2:
            if not is_cycle_graph(Y):
                raise ValueError(f"cover shape mismatch: {e.id} is not a cycle")
            M = cycle_matching(Y)
        elif len(I) == 3:
            if Y.dim != 0:
                raise ValueError(f"cover shape mismatch: {e.id} is not discrete")
            M = MorseMatching()
        else:
            if not Y.is_empty():
                raise ValueError("cover shape mismatch: total intersection is nonempty")
            out[e.id] = empty_entry()
            continue
        out[e.id] = ElementMatching(M, validate_matching(Y, M), "user")
    return out
