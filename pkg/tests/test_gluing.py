import itertools

import pytest

from nervemorse.complex import cone_apexes, from_facets
from nervemorse.generators import (
    arc_cover,
    canonical_chessboard_assignment,
    chessboard,
    cycle,
    facet_cover,
    sphere_boundary,
    star_cover,
    vertex_star_cover,
)
from nervemorse.gluing import (
    ElementMatching,
    HypothesisViolation,
    MissingAssignment,
    auto_assignment,
    check_hypothesis,
    complete_assignment,
    decompose,
    verify,
)
from nervemorse.homology import HomologyProfile, reduced_homology
from nervemorse.morse import MorseMatching, validate_matching
from nervemorse.poset import intersection_poset, make_cover


@pytest.fixture(scope="module")
def chess():
    cover = star_cover(4)
    return cover, intersection_poset(cover), canonical_chessboard_assignment(cover)


def with_empty_hexagon(P, A, element_id="I{1,2}"):
    Y = P[element_id].space
    A = dict(A)
    A[element_id] = ElementMatching(MorseMatching(), validate_matching(Y, MorseMatching()))
    return A


def test_canonical_assignment_passes(chess):
    _, P, A = chess
    assert check_hypothesis(P, A).ok


def test_empty_hexagon_matching_violates(chess):
    _, P, A = chess
    A = with_empty_hexagon(P, A)
    assert A["I{1,2}"].data.non_initial_dims == (0,) * 5 + (1,) * 6
    report = check_hypothesis(P, A)
    assert not report.ok
    got = {(v.y, v.z, v.dim_y, v.dim_z) for v in report.violations}
    assert got == {("I{1,2}", "I{1,2,3}", 0, 0), ("I{1,2}", "I{1,2,4}", 0, 0)}


def test_single_member_cover_vacuous():
    K = cycle(5)
    cover = make_cover(K, [("X", K)])
    P = intersection_poset(cover)
    assert check_hypothesis(P, auto_assignment(P)).ok


def test_check_hypothesis_missing(chess):
    _, P, A = chess
    A = dict(A)
    del A["I{1}"]
    with pytest.raises(MissingAssignment):
        check_hypothesis(P, A)


def test_complete_assignment(chess):
    _, P, A = chess
    partial = {k: v for k, v in A.items() if k != "I{1}" and k != "I{1,2,3,4}"}
    with pytest.raises(MissingAssignment) as info:
        complete_assignment(P, partial)
    assert info.value.ids == ["I{1}"]
    full = complete_assignment(P, partial, auto=True)
    assert full["I{1}"].source == "cone"
    assert full["I{1,2,3,4}"].source == "empty"


def test_decompose_chessboard(chess):
    cover, _, A = chess
    D = decompose(cover, A)
    assert len(D.summands) == 15
    profiles = [s.profile for s in D.summands]
    assert profiles == (
        [HomologyProfile()] * 4 + [HomologyProfile({2: 1})] * 6
        + [HomologyProfile({2: 2})] * 4 + [HomologyProfile({2: 1})]
    )
    assert D.total == HomologyProfile({2: 15})
    assert not D.forced
    assert verify(cover, D).matches


def test_decompose_refuses_on_violation(chess):
    cover, P, A = chess
    bad = with_empty_hexagon(P, A)
    with pytest.raises(HypothesisViolation) as info:
        decompose(cover, bad)
    assert len(info.value.report.violations) == 2
    D = decompose(cover, bad, force=True)
    assert D.forced and D.total == HomologyProfile({2: 15})


def test_single_member_endpoint():
    K = chessboard(3, 4)
    cover = make_cover(K, [("X", K)])
    D = decompose(cover)
    assert len(D.summands) == 1
    assert D.summands[0].join.face_counts() == K.face_counts()
    assert D.total == reduced_homology(K)
    assert verify(cover, D).matches


def test_arc_cover_nerve_endpoint():
    cover = arc_cover(6, 3)
    P = intersection_poset(cover)
    assert all(cone_apexes(e.space) for e in P.elements if not e.space.is_empty())
    total = P["I{1,2,3}"]
    assert total.space.is_empty()
    D = decompose(cover)
    s = D.summand("I{1,2,3}")
    assert s.link.face_counts() == [6, 6]
    assert D.total == HomologyProfile({1: 1}) == reduced_homology(cycle(6))
    assert verify(cover, D).matches


@pytest.mark.parametrize("cover", [star_cover(3), facet_cover(sphere_boundary(2))])
def test_cone_summands_trivial(cover):
    D = decompose(cover)
    for s in D.summands:
        if not s.space.is_empty() and cone_apexes(s.space):
            assert s.profile.is_trivial()
    assert verify(cover, D).matches


def test_vertex_star_cover_of_sphere_violates():
    # closed vertex stars of the tetrahedron boundary meet in its 1-skeleton
    cover = vertex_star_cover(sphere_boundary(2))
    P = intersection_poset(cover)
    top = P.elements[-1]
    assert top.space.face_counts() == [4, 6]
    report = check_hypothesis(P, auto_assignment(P))
    assert not report.ok
    assert all((v.dim_y, v.dim_z) == (1, 1) for v in report.violations)


def test_facet_cover_of_sphere():
    cover = facet_cover(sphere_boundary(2))
    D = decompose(cover)
    assert len(D.summands) == 15
    assert D.total == HomologyProfile({2: 1})


def test_member_order_invariance():
    cover = star_cover(3)
    base = sorted(map(str, (s.profile for s in decompose(cover).summands)))
    for perm in itertools.permutations(cover.members):
        permuted = make_cover(cover.ambient, perm)
        D = decompose(permuted)
        assert sorted(map(str, (s.profile for s in D.summands))) == base
        assert D.total == decompose(cover).total


def test_initial_choice_does_not_change_verdict():
    cover = arc_cover(7, 3)
    P = intersection_poset(cover)
    A = auto_assignment(P)
    ok = check_hypothesis(P, A).ok
    for e in P.elements:
        em = A[e.id]
        for f in em.data.critical:
            if len(f) == 1:
                alt = dict(A)
                alt[e.id] = ElementMatching(em.matching, validate_matching(e.space, em.matching, f))
                assert check_hypothesis(P, alt).ok == ok


def test_two_arc_cover_of_cycle():
    # two arcs meet in two points: dims {0} on the intersection, vacuous on the arcs
    cover = arc_cover(6, 2)
    D = decompose(cover)
    assert D.hypothesis.ok
    assert D.total == HomologyProfile({1: 1})


def test_verify_reports_mismatch():
    K = cycle(4)
    # claim K is covered trivially but hand a decomposition of a different cover
    D = decompose(make_cover(from_facets([["a", "b"]]), [("X", from_facets([["a", "b"]]))]))
    res = verify(make_cover(K, [("X", K)]), D)
    assert not res.matches
    assert res.degrees[1]["direct_betti"] == 1 and res.degrees[1]["glued_betti"] == 0
