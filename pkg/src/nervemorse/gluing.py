"""Gluing Morse matchings over a cover into a wedge-of-joins decomposition.

Given a cover of ``X`` and a Morse matching on every space of its
intersection poset ``P``, the decomposition is

    X ~ wedge over Y in P of  Y * order_complex(P_<Y)

provided that for every strictly nested pair ``Y > Z`` of spaces each
non-initial critical cell of ``Y`` has larger dimension than each
non-initial critical cell of ``Z``. The result is checked here at the level
of reduced integral homology.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .complex import SimplicialComplex, cone_apexes, join
from .homology import HomologyProfile, reduced_homology, wedge_profile
from .morse import MorseData, MorseMatching, cone_matching, greedy_matching, validate_matching
from .poset import Cover, IntersectionPoset, intersection_poset, order_complex, strict_down_set


class MissingAssignment(KeyError):
    def __init__(self, ids):
        self.ids = list(ids)
        super().__init__("no matching supplied for poset element(s): " + ", ".join(self.ids))

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class ElementMatching:
    matching: MorseMatching
    data: MorseData
    source: str = "user"


MorseAssignment = Mapping[str, ElementMatching]


@dataclass(frozen=True)
class Violation:
    y: str
    z: str
    dim_y: int
    dim_z: int

    def to_json(self) -> dict:
        return {"y": self.y, "z": self.z, "dim_y": self.dim_y, "dim_z": self.dim_z}


@dataclass(frozen=True)
class HypothesisReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


class HypothesisViolation(ValueError):
    def __init__(self, report: HypothesisReport):
        self.report = report
        shown = ", ".join(f"{v.y}>{v.z} ({v.dim_y} <= {v.dim_z})" for v in report.violations[:5])
        super().__init__(f"{len(report.violations)} hypothesis violation(s): {shown}")


def empty_entry() -> ElementMatching:
    return ElementMatching(MorseMatching(), MorseData((), None, ()), "empty")


def auto_entry(space: SimplicialComplex) -> ElementMatching:
    """Cone matching on the least apex when there is one, otherwise greedy."""
    if space.is_empty():
        return empty_entry()
    apexes = cone_apexes(space)
    if apexes:
        M = cone_matching(space, min(apexes))
        source = "cone"
    else:
        M = greedy_matching(space)
        source = "greedy"
    return ElementMatching(M, validate_matching(space, M), source)


def auto_assignment(P: IntersectionPoset) -> dict[str, ElementMatching]:
    return {e.id: auto_entry(e.space) for e in P.elements}


def complete_assignment(
    P: IntersectionPoset, assignment: MorseAssignment, auto: bool = False
) -> dict[str, ElementMatching]:
    """Fill gaps: the empty space always, other spaces only when ``auto``."""
    full: dict[str, ElementMatching] = {}
    missing = []
    for e in P.elements:
        if e.id in assignment:
            full[e.id] = assignment[e.id]
        elif e.space.is_empty():
            full[e.id] = empty_entry()
        elif auto:
            full[e.id] = auto_entry(e.space)
        else:
            missing.append(e.id)
    if missing:
        raise MissingAssignment(missing)
    return full


def check_hypothesis(P: IntersectionPoset, assignment: MorseAssignment) -> HypothesisReport:
    """Compare non-initial critical dimensions across every strictly nested pair.

    The pair ``(Y, Z)`` with ``space(Y)`` strictly containing ``space(Z)``
    passes when ``min(dims(Y)) > max(dims(Z))``; it passes vacuously when
    either side has no non-initial critical cell.
    """
    missing = [e.id for e in P.elements if e.id not in assignment]
    if missing:
        raise MissingAssignment(missing)
    violations = []
    for y, z in P.comparable_pairs():
        dy = assignment[y.id].data.non_initial_dims
        dz = assignment[z.id].data.non_initial_dims
        if dy and dz and min(dy) <= max(dz):
            violations.append(Violation(y.id, z.id, min(dy), max(dz)))
    return HypothesisReport(tuple(violations))


@dataclass(frozen=True)
class Summand:
    id: str
    space: SimplicialComplex
    link: SimplicialComplex
    join: SimplicialComplex
    profile: HomologyProfile


@dataclass(frozen=True)
class Decomposition:
    poset: IntersectionPoset
    assignment: Mapping[str, ElementMatching]
    hypothesis: HypothesisReport
    summands: tuple[Summand, ...]
    total: HomologyProfile
    forced: bool = False

    def summand(self, element_id: str) -> Summand:
        for s in self.summands:
            if s.id == element_id:
                return s
        raise KeyError(element_id)


@dataclass(frozen=True)
class Verification:
    matches: bool
    direct: HomologyProfile
    glued: HomologyProfile
    degrees: tuple[dict, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "matches": self.matches,
            "direct_profile": self.direct.to_json(),
            "total_profile": self.glued.to_json(),
            "degrees": list(self.degrees),
        }


def build_summands(P: IntersectionPoset) -> tuple[Summand, ...]:
    out = []
    for e in P.elements:
        link = order_complex(strict_down_set(P, e))
        J = join(e.space, link)
        out.append(Summand(e.id, e.space, link, J, reduced_homology(J)))
    return tuple(out)


def decompose(
    cover: Cover,
    assignment: Union[MorseAssignment, str, None] = "auto",
    force: bool = False,
    poset: Optional[IntersectionPoset] = None,
) -> Decomposition:
    """Run the gluing pipeline on ``cover``.

    ``assignment`` maps element ids to matchings, or is ``"auto"``. A failed
    hypothesis raises :class:`HypothesisViolation` unless ``force`` is set,
    in which case the decomposition is still built and flagged as forced.
    """
    P = poset if poset is not None else intersection_poset(cover)
    if assignment is None or assignment == "auto":
        full = auto_assignment(P)
    else:
        full = complete_assignment(P, assignment)
    report = check_hypothesis(P, full)
    if not report.ok and not force:
        raise HypothesisViolation(report)
    summands = build_summands(P)
    total = wedge_profile(s.profile for s in summands)
    return Decomposition(P, full, report, summands, total, forced=not report.ok)


def verify(cover: Cover, D: Decomposition) -> Verification:
    """Compare the glued total with the directly computed homology of the ambient complex.

    Agreement is consistent with the decomposition; it is not a proof of
    homotopy equivalence.
    """
    direct = reduced_homology(cover.ambient)
    glued = D.total
    top = max([*direct.betti, *direct.torsion, *glued.betti, *glued.torsion], default=-1)
    degrees = []
    for k in range(top + 1):
        degrees.append(
            {
                "degree": k,
                "direct_betti": direct.betti_at(k),
                "glued_betti": glued.betti_at(k),
                "direct_torsion": list(direct.torsion.get(k, ())),
                "glued_torsion": list(glued.torsion.get(k, ())),
            }
        )
    return Verification(direct == glued, direct, glued, tuple(degrees))
