"""Reading and writing complex (``.cx``), cover and matchings files."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Optional, Union

from .complex import ComplexError, SimplicialComplex, check_token, from_facets, induced
from .gluing import ElementMatching
from .morse import MorseError, matching_from_spec
from .poset import Cover, IntersectionPoset, make_cover

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message: str, path: Optional[PathLike] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = str(path) if path is not None else "<input>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")


def parse_cx(text: str, path: Optional[PathLike] = None) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facets.append([check_token(t) for t in line.split()])
        except ComplexError as exc:
            raise ParseError(str(exc), path, lineno) from None
    return from_facets(facets)


def read_cx(path: PathLike) -> SimplicialComplex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8 text ({exc.reason})", path) from None
    return parse_cx(text, path)


def format_cx(K: SimplicialComplex, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [" ".join(f) for f in K.to_lists()]
    return "\n".join(lines) + "\n"


def write_cx(K: SimplicialComplex, path: PathLike, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_cx(K, comment), encoding="utf-8")


def _load_json(path: PathLike) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None


def cover_from_json(data: object, base: Path, path: Optional[PathLike] = None) -> Cover:
    """Build a cover; a relative ``ambient`` path resolves against ``base``."""
    if not isinstance(data, dict) or "ambient" not in data or "members" not in data:
        raise ParseError('cover must be an object with "ambient" and "members"', path)
    ambient_path = Path(data["ambient"])
    if not ambient_path.is_absolute():
        ambient_path = base / ambient_path
    ambient = read_cx(ambient_path)
    members = []
    for k, entry in enumerate(data["members"]):
        if not isinstance(entry, dict):
            raise ParseError(f"member {k} must be an object", path)
        name = str(entry.get("name", f"X{k + 1}"))
        try:
            if "facets" in entry:
                K = from_facets(entry["facets"])
            elif "induced_on" in entry:
                K = induced(ambient, [check_token(v) for v in entry["induced_on"]])
            else:
                raise ParseError(f'member {name!r} needs "facets" or "induced_on"', path)
        except (ComplexError, TypeError) as exc:
            raise ParseError(f"member {name!r}: {exc}", path) from None
        members.append((name, K))
    if not members:
        raise ParseError("cover has no members", path)
    return make_cover(ambient, members)


def read_cover(path: PathLike) -> Cover:
    path = Path(path)
    return cover_from_json(_load_json(path), path.parent, path)


def cover_to_json(cover: Cover, ambient_ref: str) -> dict:
    return {
        "ambient": ambient_ref,
        "members": [{"name": name, "facets": K.to_lists()} for name, K in cover.members],
    }


def assignment_from_json(
    data: object, P: IntersectionPoset, path: Optional[PathLike] = None
) -> dict[str, ElementMatching]:
    """Validate per-element matchings from a parsed matchings file.

    Unknown ids are rejected. Missing ids are left out; the caller decides
    whether to fill them automatically.
    """
    if not isinstance(data, Mapping):
        raise ParseError("matchings file must be a JSON object keyed by poset element id", path)
    known = set(P.ids)
    unknown = sorted(set(data) - known)
    if unknown:
        raise ParseError("unknown poset element id(s): " + ", ".join(unknown), path)
    out = {}
    for e in P.elements:
        if e.id not in data:
            continue
        entry = data[e.id]
        if not isinstance(entry, Mapping):
            raise ParseError(f"entry {e.id!r} must be an object", path)
        try:
            M, md = matching_from_spec(e.space, entry.get("pairs", []), entry.get("initial"))
        except (ComplexError, MorseError) as exc:
            raise ParseError(f"entry {e.id!r}: {exc}", path) from None
        out[e.id] = ElementMatching(M, md, "user")
    return out


def read_assignment(path: PathLike, P: IntersectionPoset) -> dict[str, ElementMatching]:
    return assignment_from_json(_load_json(path), P, path=path)


def assignment_to_json(assignment: Mapping[str, ElementMatching]) -> dict:
    out = {}
    for key, em in assignment.items():
        entry: dict = {"pairs": em.matching.to_json()}
        if em.data.initial is not None:
            entry["initial"] = sorted(em.data.initial)
        out[key] = entry
    return out


def read_single_matching(path: PathLike) -> dict:
    """A standalone matching: ``{"pairs": [...], "initial": [v]}``."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError("matching file must be a JSON object", path)
    return data

