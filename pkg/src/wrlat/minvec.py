"""Exact shortest-vector machinery: minimal norm, minimal vectors, kissing number.

The enumerator is a depth-first search over integer coordinates driven by an
exact LDL factorization of the Gram matrix.  All level bounds are computed
with integer square roots of rational radicands, so there is no floating
point anywhere on this path and the returned sets are provably complete.
A box-scan brute-force oracle is provided for cross-validation in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import DimensionGuardExceeded, PairCountGuardExceeded
from .lattice import Lattice
from .ratlinalg import RatMatrix, format_rational, int_sqrt_floor, ldl_decompose, rat_rank

DEFAULT_MAX_DIM = 12
DEFAULT_PAIR_GUARD_FACTOR = 10
BRUTE_FORCE_POINT_GUARD = 10**8


@dataclass(frozen=True)
class MinimalVectorSet:
    """One canonical representative per +/- pair of minimal vectors.

    Representatives have their first nonzero coefficient positive and are
    sorted lexicographically; the full minimal set has size 2 * len(pairs).
    """

    norm_sq: Fraction
    pairs: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return 2 * len(self.pairs)

    def to_json_dict(self) -> dict:
        return {
            "norm_sq": format_rational(self.norm_sq),
            "pairs": [list(u) for u in self.pairs],
        }


def _canonical_pair(u: tuple[int, ...]) -> tuple[int, ...]:
    for x in u:
        if x != 0:
            return u if x > 0 else tuple(-y for y in u)
    return u


def _level_range(center: Fraction, radicand: Fraction) -> tuple[int, int]:
    """Integer x with (x + center)^2 <= radicand, as an inclusive interval."""
    if radicand < 0:
        return 1, 0
    a, b = center.numerator, center.denominator
    w = int_sqrt_floor(radicand * b * b)
    lo = -((w + a) // b)
    hi = (w - a) // b
    return lo, hi


def _dfs(gram: RatMatrix, bound: Fraction, shrink: bool, on_vector=None):
    """Core exact enumerator.

    Explores the half-space where the highest-index nonzero coordinate is
    positive.  With shrink=True the bound tightens whenever a strictly
    shorter nonzero vector is found and the final bound is returned; with
    shrink=False every vector of squared norm exactly `bound` is reported
    through on_vector.
    """
    n = gram.rows
    fac = ldl_decompose(gram)
    low = fac.unit_lower.to_rows()
    diag = list(fac.diag)
    x = [0] * n
    state = {"bound": bound}

    def rec(k: int, partial: Fraction, higher_zero: bool):
        if k < 0:
            q = partial
            if shrink:
                if 0 < q < state["bound"]:
                    state["bound"] = q
            elif q == bound and not higher_zero:
                on_vector(tuple(x))
            return
        center = sum(low[j][k] * x[j] for j in range(k + 1, n) if x[j])
        remaining = state["bound"] - partial
        lo, hi = _level_range(center, remaining / diag[k])
        if higher_zero:
            lo = max(lo, 0)
        for xk in range(lo, hi + 1):
            t = center + xk
            contrib = diag[k] * t * t
            if partial + contrib > state["bound"]:
                continue
            x[k] = xk
            rec(k - 1, partial + contrib, higher_zero and xk == 0)
        x[k] = 0

    rec(n - 1, Fraction(0), True)
    return state["bound"]


def _check_dim(lat: Lattice, max_dim: int) -> None:
    if lat.rank > max_dim:
        raise DimensionGuardExceeded(
            f"rank {lat.rank} exceeds the enumeration guard {max_dim}"
        )


@lru_cache(maxsize=4096)
def _min_norm_cached(lat: Lattice) -> Fraction:
    start = min(lat.gram[i, i] for i in range(lat.rank))
    return _dfs(lat.gram, start, shrink=True)


def minimal_norm_sq(lat: Lattice, max_dim: int = DEFAULT_MAX_DIM) -> Fraction:
    """Exact squared minimal norm, min over nonzero integer u of u^T G u."""
    _check_dim(lat, max_dim)
    return _min_norm_cached(lat)


@lru_cache(maxsize=1024)
def _min_vectors_cached(lat: Lattice, pair_guard_factor: int) -> MinimalVectorSet:
    norm = _min_norm_cached(lat)
    limit = pair_guard_factor * lat.rank * lat.rank
    found: list[tuple[int, ...]] = []

    def collect(u: tuple[int, ...]) -> None:
        found.append(_canonical_pair(u))
        if len(found) > limit:
            raise PairCountGuardExceeded(
                f"more than {limit} minimal pairs for {lat.name!r}"
            )

    _dfs(lat.gram, norm, shrink=False, on_vector=collect)
    return MinimalVectorSet(norm_sq=norm, pairs=tuple(sorted(found)))


def minimal_vectors(
    lat: Lattice,
    max_dim: int = DEFAULT_MAX_DIM,
    pair_guard_factor: int = DEFAULT_PAIR_GUARD_FACTOR,
) -> MinimalVectorSet:
    """Complete canonical set of minimal vectors, one per +/- pair.

    Completeness: every integer u with u^T G u equal to the minimal norm is
    listed up to sign.  Guards fail loudly instead of truncating.
    """
    _check_dim(lat, max_dim)
    return _min_vectors_cached(lat, pair_guard_factor)


def kissing_number(lat: Lattice) -> int:
    return minimal_vectors(lat).count


def is_well_rounded(lat: Lattice) -> bool:
    """True iff the minimal vectors span: rank of their coefficient matrix is n."""
    mvs = minimal_vectors(lat)
    if len(mvs.pairs) < lat.rank:
        return False
    mat = RatMatrix.from_rows([list(u) for u in mvs.pairs])
    return rat_rank(mat) == lat.rank


def brute_force_min_vectors(lat: Lattice, box: int) -> MinimalVectorSet:
    """Exhaustive scan of the coefficient box [-box, box]^n.

    Test oracle for the enumerator; exact (runs on an integer-scaled copy of
    the Gram matrix) but exponential, hence the point-count guard.
    """
    n = lat.rank
    if box < 1:
        raise ValueError("box must be >= 1")
    if box**n > BRUTE_FORCE_POINT_GUARD:
        raise DimensionGuardExceeded(f"box {box}^{n} exceeds the brute-force guard")
    scale = math.lcm(*[e.denominator for e in lat.gram.entries])
    gi = [[int(lat.gram[i, j] * scale) for j in range(n)] for i in range(n)]
    best: int | None = None
    vecs: list[tuple[int, ...]] = []
    for u in product(range(-box, box + 1), repeat=n):
        q = 0
        for i in range(n):
            ui = u[i]
            if ui:
                row = gi[i]
                q += ui * sum(row[j] * u[j] for j in range(n))
        if q == 0:
            continue
        if best is None or q < best:
            best, vecs = q, [u]
        elif q == best:
            vecs.append(u)
    assert best is not None
    pairs = sorted({_canonical_pair(u) for u in vecs})
    return MinimalVectorSet(norm_sq=Fraction(best, scale), pairs=tuple(pairs))
