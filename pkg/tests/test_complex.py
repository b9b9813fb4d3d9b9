import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nervemorse.complex import (
    EMPTY,
    ComplexError,
    cone_apexes,
    from_facets,
    induced,
    intersect,
    is_subcomplex,
    join,
    star,
    union,
    union_all,
)
from nervemorse.generators import chessboard, star_cover
from nervemorse.homology import reduced_homology

from oracles import brute_chessboard_faces, chessboard_count, face_set

TRIANGLE_BOUNDARY = from_facets([["a", "b"], ["b", "c"], ["c", "a"]])

vertex = st.sampled_from([f"x{i}" for i in range(7)])
complexes = st.lists(st.sets(vertex, min_size=1, max_size=4), max_size=5).map(from_facets)


def is_antichain(K):
    return all(not (f < g) for f in K.facets for g in K.facets)


def test_from_facets_basic():
    K = from_facets([{"a", "b"}, {"b", "c"}])
    assert K.vertex_set == {"a", "b", "c"}
    assert set(K.facets) == {frozenset("ab"), frozenset("bc")}


def test_from_facets_absorbs_contained():
    assert from_facets([{"a", "b"}, {"a"}]).facets == (frozenset("ab"),)


def test_from_facets_empty():
    K = from_facets([])
    assert K.is_empty() and K == EMPTY and K.dim == -1


@pytest.mark.parametrize("bad", ["", "a b", "tab\t", "\x00"])
def test_from_facets_rejects_malformed_tokens(bad):
    with pytest.raises(ComplexError):
        from_facets([[bad]])


def test_from_facets_rejects_non_string():
    with pytest.raises(ComplexError):
        from_facets([[1, 2]])


def test_canonical_facet_order():
    K = from_facets([["z"], ["b", "c", "a"], ["d", "e"]])
    assert [sorted(f) for f in K.facets] == [["z"], ["d", "e"], ["a", "b", "c"]]


def test_faces_triangle_boundary():
    assert len(TRIANGLE_BOUNDARY.faces(1)) == 3
    assert len(TRIANGLE_BOUNDARY.faces(0)) == 3
    assert TRIANGLE_BOUNDARY.faces(5) == ()


def test_faces_hexagon_chessboard():
    K = chessboard(2, 3)
    assert len(K.faces(0)) == 6 and len(K.faces(1)) == 6


def test_faces_chessboard_4x4():
    K = chessboard(4, 4)
    assert K.face_counts() == [16, 72, 96, 24]
    assert sum(K.face_counts()) == 208
    assert [chessboard_count(4, 4, k) for k in range(1, 5)] == [16, 72, 96, 24]
    assert set(K.all_faces()) == brute_chessboard_faces(4, 4)


def test_faces_negative_dimension():
    with pytest.raises(ComplexError):
        TRIANGLE_BOUNDARY.faces(-1)


def test_intersect_identity():
    K = chessboard(3, 3)
    assert intersect(K, K) == K


def test_intersect_two_stars_is_hexagon():
    board = chessboard(4, 4)
    Y = intersect(star(board, "r1c1"), star(board, "r2c1"))
    assert Y.face_counts() == [6, 6]
    assert reduced_homology(Y).betti == {1: 1}


def test_intersect_all_four_stars_is_empty():
    cover = star_cover(4)
    Y = cover.spaces[0]
    for K in cover.spaces[1:]:
        Y = intersect(Y, K)
    assert Y.is_empty()


def test_union_of_star_cover_is_board():
    cover = star_cover(4)
    assert union_all(cover.spaces) == cover.ambient
    assert set(union_all(cover.spaces).facets) == set(chessboard(4, 4).facets)


def test_is_subcomplex_edge_cases():
    K = chessboard(2, 2)
    assert is_subcomplex(EMPTY, K)
    assert not is_subcomplex(K, EMPTY)
    assert is_subcomplex(from_facets([["r1c1"]]), K)


def test_star():
    cone = from_facets([["a", "b", "c"], ["a", "d"]])
    assert star(cone, "a") == cone
    S = star(chessboard(4, 4), "r1c1")
    assert len(S.vertex_set) == 10
    expected = {"r1c1"} | {f"r{i}c{j}" for i in range(2, 5) for j in range(2, 5)}
    assert S.vertex_set == expected
    # star = induced subcomplex on the same vertex set, by enumeration
    assert face_set(S) == face_set(induced(chessboard(4, 4), expected))
    isolated = from_facets([["a", "b"], ["z"]])
    assert star(isolated, "z") == from_facets([["z"]])


def test_star_missing_vertex():
    with pytest.raises(ComplexError):
        star(TRIANGLE_BOUNDARY, "q")


def test_cone_apexes():
    assert cone_apexes(from_facets([["a", "b", "c"]])) == {"a", "b", "c"}
    assert cone_apexes(TRIANGLE_BOUNDARY) == frozenset()
    assert cone_apexes(EMPTY) == frozenset()
    assert "r1c1" in cone_apexes(star(chessboard(4, 4), "r1c1"))


def test_join_identities():
    K = chessboard(2, 3)
    J = join(EMPTY, K)
    assert J.face_counts() == K.face_counts()
    assert all(v.startswith("R:") for v in J.vertex_set)
    assert join(K, EMPTY).face_counts() == K.face_counts()


def test_join_hexagon_with_two_points():
    J = join(chessboard(2, 3), from_facets([["p"], ["q"]]))
    assert reduced_homology(J).betti == {2: 1}


def test_join_three_points_with_hexagon():
    J = join(chessboard(1, 3), chessboard(2, 3))
    assert reduced_homology(J).betti == {2: 2}


def test_join_disjointifies_shared_labels():
    A = from_facets([["a"]])
    J = join(A, A)
    assert J.facets == (frozenset({"L:a", "R:a"}),)


@settings(max_examples=80, deadline=None)
@given(complexes, complexes, complexes)
def test_intersect_algebra(A, B, C):
    for K in (intersect(A, B), union(A, B)):
        assert is_antichain(K)
    assert face_set(intersect(A, B)) == face_set(A) & face_set(B)
    assert intersect(A, B) == intersect(B, A)
    assert intersect(intersect(A, B), C) == intersect(A, intersect(B, C))
    assert intersect(A, A) == A
    assert face_set(union(A, B)) == face_set(A) | face_set(B)
    assert is_subcomplex(A, B) == (face_set(A) <= face_set(B))


@settings(max_examples=60, deadline=None)
@given(complexes, complexes)
def test_join_properties(A, B):
    J = join(A, B)
    assert is_antichain(J)
    assert len(J.vertex_set) == len(A.vertex_set) + len(B.vertex_set)
    if not A.is_empty() and not B.is_empty():
        assert J.dim == A.dim + B.dim + 1
        if cone_apexes(A):
            assert cone_apexes(J)


@settings(max_examples=60, deadline=None)
@given(complexes, st.data())
def test_star_is_cone_on_v(K, data):
    if K.is_empty():
        return
    v = data.draw(st.sampled_from(sorted(K.vertex_set)))
    assert v in cone_apexes(star(K, v))
