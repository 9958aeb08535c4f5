"""The lattice data model: exact Gram matrices plus structural operations.

A lattice is stored as its rational Gram matrix, never as a basis matrix.
Families whose printed bases contain square roots still have exact rational
Grams, so this representation keeps every invariant computation exact.
Float bases are an ingestion convenience only; see lattice_from_float_basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotSymmetric, RationalizationFailed
from .ratlinalg import (
    RatMatrix,
    block_diag,
    format_rational,
    ldl_decompose,
    parse_rational,
    rat_det,
)

BASIS_GRAM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Lattice:
    """Rank-n lattice given by a symmetric positive-definite rational Gram matrix."""

    name: str
    rank: int
    gram: RatMatrix
    provenance: str = ""

    def det_gram(self) -> Fraction:
        return rat_det(self.gram)

    def __repr__(self) -> str:
        return f"Lattice({self.name!r}, rank={self.rank})"


def lattice_from_gram(name: str, gram, provenance: str = "") -> Lattice:
    """Validate a Gram matrix (symmetric, positive definite) and wrap it."""
    if not isinstance(gram, RatMatrix):
        gram = RatMatrix.from_rows(gram)
    if gram.rows != gram.cols or gram.rows < 1:
        raise ValueError("Gram matrix must be square and nonempty")
    if not gram.is_symmetric():
        raise NotSymmetric(f"Gram of {name!r} is not symmetric")
    ldl_decompose(gram)  # raises NotPositiveDefinite on a bad pivot
    return Lattice(name=name, rank=gram.rows, gram=gram, provenance=provenance)


@dataclass(frozen=True)
class FloatBasis:
    """Columns of a floating basis in some ambient dimension >= rank."""

    columns: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not self.columns:
            raise ValueError("empty basis")
        dim = len(self.columns[0])
        if any(len(c) != dim for c in self.columns):
            raise ValueError("ragged basis columns")
        if len(self.columns) > dim:
            raise ValueError("more columns than ambient dimension")

    @property
    def ambient_dim(self) -> int:
        return len(self.columns[0])

    @property
    def rank(self) -> int:
        return len(self.columns)

    def float_gram(self) -> list[list[float]]:
        return [
            [sum(a * b for a, b in zip(ci, cj)) for cj in self.columns]
            for ci in self.columns
        ]


def _float_det(m: list[list[float]]) -> float:
    a = [row[:] for row in m]
    n = len(a)
    det = 1.0
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(a[r][c]))
        if abs(a[p][c]) < 1e-300:
            return 0.0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return det


def lattice_from_float_basis(
    name: str, basis: FloatBasis | Sequence[Sequence[float]], max_denominator: int = 10**6,
    provenance: str = "",
) -> Lattice:
    """Build an exact lattice from a floating basis.

    Each Gram entry is replaced by its best rational approximation with
    denominator at most max_denominator.  If that approximation is farther
    than 1e-9 from the floating value, the input is rejected rather than
    silently rounded.
    """
    if not isinstance(basis, FloatBasis):
        basis = FloatBasis(tuple(tuple(float(x) for x in col) for col in basis))
    g = basis.float_gram()
    if abs(_float_det(g)) <= 1e-12:
        raise ValueError("basis columns are not numerically independent")
    n = basis.rank
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            approx = Fraction(g[i][j]).limit_denominator(max_denominator)
            if abs(float(approx) - g[i][j]) > BASIS_GRAM_TOLERANCE:
                raise RationalizationFailed(
                    f"Gram entry ({i},{j})={g[i][j]!r} has no denominator-{max_denominator} "
                    "approximation within 1e-9"
                )
            out[i][j] = out[j][i] = approx
    return lattice_from_gram(name, out, provenance=provenance or "rationalized float basis")


def direct_sum(l1: Lattice, l2: Lattice) -> Lattice:
    """Orthogonal direct sum: block-diagonal Gram."""
    gram = block_diag(l1.gram, l2.gram)
    return Lattice(
        name=f"{l1.name}(+){l2.name}",
        rank=l1.rank + l2.rank,
        gram=gram,
        provenance="orthogonal direct sum",
    )


def scale_gram(lat: Lattice, factor) -> Lattice:
    f = Fraction(factor)
    if f <= 0:
        raise ValueError("scale factor must be positive")
    return Lattice(lat.name, lat.rank, lat.gram.scaled(f), lat.provenance)


def normalize_min_norm(lat: Lattice) -> Lattice:
    """Rescale so the minimal norm squared is exactly 1."""
    from .minvec import minimal_norm_sq  # local import: minvec depends on this module

    m = minimal_norm_sq(lat)
    if m == 1:
        return lat
    return Lattice(lat.name, lat.rank, lat.gram.scaled(Fraction(1) / m), lat.provenance)


def principal_sublattice(lat: Lattice, indices: Sequence[int]) -> Lattice:
    """Restrict the Gram to an ordered subset of basis indices (0-based)."""
    idx = list(indices)
    if not idx:
        raise ValueError("index set must be nonempty")
    if len(set(idx)) != len(idx) or any(not (0 <= i < lat.rank) for i in idx):
        raise ValueError(f"bad index set {indices!r} for rank {lat.rank}")
    rows = [[lat.gram[i, j] for j in idx] for i in idx]
    return Lattice(
        name=f"{lat.name}|{tuple(idx)}",
        rank=len(idx),
        gram=RatMatrix.from_rows(rows),
        provenance="principal sublattice",
    )


def reorder_basis(lat: Lattice, perm: Sequence[int]) -> Lattice:
    """Conjugate the Gram by a permutation of the basis (0-based)."""
    p = list(perm)
    if sorted(p) != list(range(lat.rank)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{lat.rank - 1}")
    rows = [[lat.gram[p[i], p[j]] for j in range(lat.rank)] for i in range(lat.rank)]
    return Lattice(lat.name, lat.rank, RatMatrix.from_rows(rows), lat.provenance)


# ---------------------------------------------------------------------------
# JSON serialization
#
# Schema: { "name": str, "rank": int, "gram": [["p/q", ...], ...],
#           "basis": optional [[float, ...], ...] (columns), "provenance": str }
# "gram" is authoritative; when "basis" is present its dot products must
# reproduce the Gram within 1e-9 per entry or loading fails.
# ---------------------------------------------------------------------------


def lattice_to_json_dict(lat: Lattice, basis: FloatBasis | None = None) -> dict:
    d = {
        "name": lat.name,
        "rank": lat.rank,
        "gram": [[format_rational(e) for e in lat.gram.row(i)] for i in range(lat.rank)],
        "provenance": lat.provenance,
    }
    if basis is not None:
        d["basis"] = [list(col) for col in basis.columns]
    return d


def lattice_from_json_dict(d: dict) -> Lattice:
    try:
        name = str(d["name"])
        rank = int(d["rank"])
        gram_rows = [[parse_rational(e) for e in row] for row in d["gram"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed lattice JSON: {exc}") from exc
    if len(gram_rows) != rank or any(len(r) != rank for r in gram_rows):
        raise ValueError("gram shape does not match rank")
    lat = lattice_from_gram(name, gram_rows, provenance=str(d.get("provenance", "")))
    if "basis" in d and d["basis"] is not None:
        fb = FloatBasis(tuple(tuple(float(x) for x in col) for col in d["basis"]))
        if fb.rank != rank:
            raise ValueError("basis column count does not match rank")
        g = fb.float_gram()
        for i in range(rank):
            for j in range(rank):
                if abs(g[i][j] - float(lat.gram[i, j])) > BASIS_GRAM_TOLERANCE:
                    raise ValueError(
                        f"basis does not reproduce gram at ({i},{j}): "
                        f"{g[i][j]!r} vs {lat.gram[i, j]}"
                    )
    return lat


def save_lattice(lat: Lattice, path: str, basis: FloatBasis | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lattice_to_json_dict(lat, basis), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_lattice(path: str) -> Lattice:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_json_dict(json.load(fh))
