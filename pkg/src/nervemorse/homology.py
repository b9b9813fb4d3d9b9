"""Reduced simplicial homology over the integers via Smith normal form.

All arithmetic is on Python ints; nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

from .complex import SimplicialComplex


@dataclass(frozen=True)
class IntegerMatrix:
    """Sparse exact integer matrix: ``entries[(i, j)]`` holds nonzero values."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = int(v)
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


MatrixLike = Union[IntegerMatrix, Sequence[Sequence[int]]]


class SNFCertificateError(AssertionError):
    """The Smith normal form self-check failed."""


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def _dense_snf(A: list[list[int]]) -> list[int]:
    """Invariant factors of a dense matrix, certified by ``U A V == D``.

    ``U`` and ``V`` accumulate only elementary unimodular operations (swaps,
    sign flips, adding integer multiples), so a matching product certifies
    the result.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return []
    D = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def swap_rows(a: int, b: int) -> None:
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a: int, b: int) -> None:
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (pivot is None or abs(v) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
                    if abs(v) == 1:
                        break
            if pivot is not None and abs(D[pivot[0]][pivot[1]]) == 1:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot exists; move it into place
                best = min(
                    [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                    + [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                )
                _, i, j = best
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    diag = [D[i][i] for i in range(t)]
    check = _matmul(_matmul(U, A), V)
    for i in range(m):
        for j in range(n):
            expect = diag[i] if i == j and i < t else 0
            if check[i][j] != expect:
                raise SNFCertificateError("U A V does not reproduce the diagonal form")
    return diag


def smith_normal_form(A: MatrixLike) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ... | dr`` of ``A`` and its rank ``r``.

    Unit pivots are eliminated first on a sparse representation; each such
    step multiplies by a unimodular matrix and contributes a factor 1. The
    remaining block, which contains no unit entry, goes through a dense
    elimination whose transforms are checked explicitly.
    """
    if not isinstance(A, IntegerMatrix):
        A = IntegerMatrix.from_dense(A)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in A.entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)

    units = 0
    while True:
        pivot = None
        # fewest-entries unit pivot keeps fill-in low
        for i in sorted(rows, key=lambda r: (len(rows[r]), r)):
            for j in sorted(rows[i]):
                if rows[i][j] in (1, -1):
                    pivot = (i, j)
                    break
            if pivot is not None:
                break
        if pivot is None:
            break
        pi, pj = pivot
        prow = rows.pop(pi)
        p = prow[pj]
        for i in sorted(cols[pj] - {pi}):
            row = rows[i]
            q = row[pj] * p  # p is +-1, so this is row[pj] / p
            for j, v in prow.items():
                new = row.get(j, 0) - q * v
                if new:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = new
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
            if not row:
                del rows[i]
        for j in prow:
            cols[j].discard(pi)
        # column operations clear the rest of the pivot row without touching other rows
        del cols[pj]
        units += 1

    rest_rows = sorted(rows)
    rest_cols = sorted(j for j, s in cols.items() if s)
    cidx = {j: k for k, j in enumerate(rest_cols)}
    block = [[0] * len(rest_cols) for _ in rest_rows]
    for k, i in enumerate(rest_rows):
        for j, v in rows[i].items():
            block[k][cidx[j]] = v
    diag = [1] * units + _dense_snf(block)
    for a, b in zip(diag, diag[1:]):
        if b % a:
            raise SNFCertificateError("invariant factors fail the divisibility chain")
    return diag, len(diag)


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """Boundary map from ``k``-faces (columns) to ``(k-1)``-faces (rows).

    Orientation follows the sorted vertex order: removing the vertex in
    position ``i`` contributes sign ``(-1)**i``.
    """
    if k < 1:
        raise ValueError("boundary_matrix needs k >= 1")
    lower = {f: i for i, f in enumerate(K.faces(k - 1))}
    upper = K.faces(k)
    entries = {}
    for j, face in enumerate(upper):
        verts = sorted(face)
        for i, v in enumerate(verts):
            entries[(lower[face - {v}], j)] = -1 if i % 2 else 1
    return IntegerMatrix(len(lower), len(upper), entries)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: Betti numbers and torsion per degree.

    Only degrees with nonzero data are stored.
    """

    betti: Mapping[int, int] = field(default_factory=dict)
    torsion: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "betti", {k: v for k, v in sorted(self.betti.items()) if v})
        object.__setattr__(
            self, "torsion", {k: tuple(sorted(v)) for k, v in sorted(self.torsion.items()) if v}
        )

    def betti_at(self, k: int) -> int:
        return self.betti.get(k, 0)

    def is_trivial(self) -> bool:
        return not self.betti and not self.torsion

    def to_json(self) -> dict:
        return {
            "betti": {str(k): v for k, v in self.betti.items()},
            "torsion": {str(k): list(v) for k, v in self.torsion.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "HomologyProfile":
        return cls(
            {int(k): int(v) for k, v in data.get("betti", {}).items()},
            {int(k): tuple(int(x) for x in v) for k, v in data.get("torsion", {}).items()},
        )

    def __str__(self) -> str:
        parts = [f"b{k}={v}" for k, v in self.betti.items()]
        parts += [f"T{k}={list(v)}" for k, v in self.torsion.items()]
        return "HomologyProfile(" + (", ".join(parts) or "trivial") + ")"


def reduced_homology(K: SimplicialComplex) -> HomologyProfile:
    if K.is_empty():
        return HomologyProfile()
    counts = K.face_counts()
    top = len(counts) - 1
    # rank of the augmentation map to the empty face
    ranks = {0: 1}
    torsion: dict[int, tuple[int, ...]] = {}
    for k in range(1, top + 1):
        diag, r = smith_normal_form(boundary_matrix(K, k))
        ranks[k] = r
        big = tuple(d for d in diag if d > 1)
        if big:
            torsion[k - 1] = big
    betti = {k: counts[k] - ranks[k] - ranks.get(k + 1, 0) for k in range(top + 1)}
    return HomologyProfile(betti, torsion)


def wedge_profile(profiles: Iterable[HomologyProfile]) -> HomologyProfile:
    """Degreewise direct sum of reduced homology."""
    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for prof in profiles:
        for k, v in prof.betti.items():
            betti[k] = betti.get(k, 0) + v
        for k, v in prof.torsion.items():
            torsion.setdefault(k, []).extend(v)
    return HomologyProfile(betti, {k: _normalize_torsion(v) for k, v in torsion.items()})


def _normalize_torsion(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Rewrite a list of cyclic orders as invariant factors with a divisibility chain.

    The direct sum Z/a + Z/b equals Z/gcd(a,b) + Z/lcm(a,b), applied until
    the chain condition holds.
    """
    vals = sorted(c for c in coeffs if c > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals = sorted(v for v in vals if v > 1)
    return tuple(vals)
