"""Command-line front end.

Subcommands::

    nerve-morse homology FILE.cx
    nerve-morse decompose COVER.json [--matchings FILE | --auto-matchings] [--force] [--out FILE]
    nerve-morse check-matching FILE.cx MATCHING.json
    nerve-morse chessboard M N [--cover] [--matchings] [--out-dir DIR]

JSON goes to stdout, human messages to stderr.

Exit codes: 0 success, 2 bad input, 3 hypothesis violated, 4 homology
mismatch, 5 invalid matching.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .complex import ComplexError
from .generators import canonical_chessboard_assignment, chessboard, star_cover
from .gluing import (
    Decomposition,
    HypothesisReport,
    MissingAssignment,
    auto_assignment,
    check_hypothesis,
    complete_assignment,
    decompose,
    verify,
)
from .homology import reduced_homology
from .io import (
    ParseError,
    assignment_to_json,
    cover_to_json,
    read_assignment,
    read_cover,
    read_cx,
    read_single_matching,
    write_cx,
)
from .morse import MorseError, matching_from_spec
from .poset import CoverError, IntersectionPoset, intersection_poset

SCHEMA = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_MISMATCH = 4
EXIT_BAD_MATCHING = 5

VERDICT_MATCH = "consistent with the gluing decomposition at the level of integral homology"
VERDICT_MISMATCH = "homology of the glued decomposition differs from the direct computation"


def _emit(obj: object, out: Optional[Path] = None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out is not None:
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _err(msg: str) -> None:
    print(f"nerve-morse: {msg}", file=sys.stderr)


def poset_json(P: IntersectionPoset) -> list[dict]:
    return [
        {
            "id": e.id,
            "index_sets": [list(I) for I in e.index_sets],
            "face_counts": e.space.face_counts(),
            "below": [y.id for y in P.elements if P.lt(y.id, e.id)],
        }
        for e in P.elements
    ]


def report_json(
    P: IntersectionPoset,
    hypothesis: HypothesisReport,
    D: Optional[Decomposition] = None,
) -> dict:
    report: dict = {
        "schema": SCHEMA,
        "poset": poset_json(P),
        "hypothesis": hypothesis.to_json(),
        "summands": [],
        "total_profile": None,
        "direct_profile": None,
        "verified": False,
        "forced": False,
    }
    if D is None:
        report["verdict"] = "hypothesis violated; decomposition not computed (use --force)"
        return report
    for s in D.summands:
        em = D.assignment[s.id]
        report["summands"].append(
            {
                "id": s.id,
                "matching_source": em.source,
                "initial": sorted(em.data.initial) if em.data.initial is not None else None,
                "non_initial_dims": list(em.data.non_initial_dims),
                "y_faces": s.space.face_counts(),
                "link_faces": s.link.face_counts(),
                "join_faces": s.join.face_counts(),
                "join_profile": s.profile.to_json(),
            }
        )
    check = verify(P.cover, D)
    report["total_profile"] = D.total.to_json()
    report["direct_profile"] = check.direct.to_json()
    report["comparison"] = list(check.degrees)
    report["verified"] = check.matches
    report["forced"] = D.forced
    verdict = VERDICT_MATCH if check.matches else VERDICT_MISMATCH
    if D.forced:
        verdict += " (forced: hypothesis violated, not backed by the theorem)"
    report["verdict"] = verdict
    return report


def cmd_homology(args: argparse.Namespace) -> int:
    K = read_cx(args.file)
    _emit(reduced_homology(K).to_json())
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    if args.matchings is None and not args.auto_matchings:
        _err("either --matchings FILE or --auto-matchings is required")
        return EXIT_INPUT
    cover = read_cover(args.cover)
    P = intersection_poset(cover)
    if args.matchings is not None:
        user = read_assignment(args.matchings, P)
        assignment = complete_assignment(P, user, auto=args.auto_matchings)
    else:
        assignment = auto_assignment(P)

    hyp = check_hypothesis(P, assignment)
    out = Path(args.out) if args.out else None
    if not hyp.ok and not args.force:
        _err(f"hypothesis violated on {len(hyp.violations)} comparable pair(s)")
        _emit(report_json(P, hyp), out)
        return EXIT_HYPOTHESIS

    D = decompose(cover, assignment, force=True, poset=P)
    report = report_json(P, hyp, D)
    _emit(report, out)
    if not report["verified"]:
        _err(VERDICT_MISMATCH)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_check_matching(args: argparse.Namespace) -> int:
    K = read_cx(args.complex)
    spec = read_single_matching(args.matching)
    try:
        _, data = matching_from_spec(K, spec.get("pairs", []), spec.get("initial"))
    except MorseError as exc:
        _err(str(exc))
        _emit({"valid": False, **exc.to_json()})
        return EXIT_BAD_MATCHING
    _emit({"valid": True, **data.to_json()})
    return EXIT_OK


def cmd_chessboard(args: argparse.Namespace) -> int:
    m, n = args.m, args.n
    if m < 0 or n < 0:
        _err("board dimensions must be nonnegative")
        return EXIT_INPUT
    if (args.cover or args.matchings) and (m != n or m < 2):
        _err("--cover needs a square board with m >= 2")
        return EXIT_INPUT
    if args.matchings and m != 4:
        _err("--matchings is only defined for the 4 x 4 star cover")
        return EXIT_INPUT
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    cx_name = f"chessboard_{m}x{n}.cx"
    written = {"complex": str(outdir / cx_name)}
    write_cx(chessboard(m, n), outdir / cx_name, f"chessboard complex {m} x {n}")
    if args.cover or args.matchings:
        cover = star_cover(m)
        cover_path = outdir / f"star_cover_{m}.json"
        cover_path.write_text(json.dumps(cover_to_json(cover, cx_name), indent=2) + "\n")
        written["cover"] = str(cover_path)
        if args.matchings:
            assignment = canonical_chessboard_assignment(cover)
            match_path = outdir / f"star_cover_{m}_matchings.json"
            match_path.write_text(json.dumps(assignment_to_json(assignment), indent=2) + "\n")
            written["matchings"] = str(match_path)
    _emit(written)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nerve-morse",
        description="Wedge-of-joins decompositions of simplicial complexes from covers "
        "and discrete Morse matchings, checked against integral homology.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="reduced integral homology of a .cx file")
    p.add_argument("file")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("decompose", help="run the gluing pipeline on a cover file")
    p.add_argument("cover")
    p.add_argument("--matchings", help="per-element matchings JSON")
    p.add_argument("--auto-matchings", action="store_true",
                   help="fill elements without a matching by cone or greedy matchings")
    p.add_argument("--force", action="store_true",
                   help="compute the decomposition even if the hypothesis fails")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-matching", help="validate a Morse matching on a complex")
    p.add_argument("complex")
    p.add_argument("matching")
    p.set_defaults(func=cmd_check_matching)

    p = sub.add_parser("chessboard", help="write a chessboard complex (and its star cover)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--cover", action="store_true", help="also write the first-column star cover")
    p.add_argument("--matchings", action="store_true",
                   help="also write the hand-chosen matchings (4 x 4 only)")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_chessboard)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ComplexError, CoverError, MissingAssignment, MorseError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except OSError as exc:
        _err(f"{exc.filename}: {exc.strerror}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
