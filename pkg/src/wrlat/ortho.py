"""Angles between basis vectors and spans; near-orthogonality verdicts.

A basis ordering b_0, ..., b_{n-1} has an angle profile: entry i is the
squared cosine of the angle between b_{i+1} and the span of b_0..b_i.  An
ordering is *weakly* theta-orthogonal when every profile entry stays at or
below cos^2(theta); the basis is *theta-orthogonal* when every ordering is.
All comparisons happen on squared cosines, which are exact rationals.

Verdicts are relative to the stored basis.  For the strict class the
optional search over bases of minimal vectors is complete (a basis that is
nearly orthogonal consists of minimal vectors), for the weak class it is a
documented heuristic; membership_report also applies the kissing-number and
coherence bounds that decide some cases outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DimensionGuardExceeded, NotWellRounded, SubsetGuardExceeded
from .lattice import Lattice, lattice_from_gram
from .minvec import is_well_rounded, minimal_vectors
from .ratlinalg import RatMatrix, format_rational, rat_det, rat_solve

PI_THIRD_COS_SQ = Fraction(1, 4)
DEFAULT_ORDERING_DIM_GUARD = 9
DEFAULT_SUBSET_GUARD = 50_000


def cos_sq_angle_to_span(lat: Lattice, v: int, span: Sequence[int]) -> Fraction:
    """Squared cosine of the angle between basis vector v and span{b_i : i in span}.

    Solves the projection system G_SS x = G_Sv exactly; the value is
    (G_vS . x) / g_vv.  Indices are 0-based.
    """
    idx = list(span)
    if not idx:
        raise ValueError("span must be nonempty")
    if v in idx:
        raise ValueError("vector must not lie in the span index set")
    a = RatMatrix.from_rows([[lat.gram[i, j] for j in idx] for i in idx])
    rhs = [lat.gram[i, v] for i in idx]
    x = rat_solve(a, rhs)
    if x is None:  # impossible for a valid (positive-definite) lattice
        raise ValueError("span Gram is singular")
    num = sum(r * xi for r, xi in zip(rhs, x))
    return num / lat.gram[v, v]


@dataclass(frozen=True)
class AngleProfile:
    ordering: tuple[int, ...]
    cos_sq: tuple[Fraction, ...]


def angle_profile(lat: Lattice, ordering: Sequence[int]) -> AngleProfile:
    """Profile of squared cosines along one ordering (a permutation of 0..n-1)."""
    perm = tuple(ordering)
    if sorted(perm) != list(range(lat.rank)):
        raise ValueError(f"{ordering!r} is not a permutation of 0..{lat.rank - 1}")
    values = tuple(
        cos_sq_angle_to_span(lat, perm[i], perm[:i]) for i in range(1, lat.rank)
    )
    return AngleProfile(ordering=perm, cos_sq=values)


def is_weakly_theta_orthogonal(
    lat: Lattice,
    ordering: Sequence[int],
    cos_sq_threshold: Fraction = PI_THIRD_COS_SQ,
) -> bool:
    """True iff every profile entry of this ordering is <= cos_sq_threshold."""
    thr = Fraction(cos_sq_threshold)
    if not 0 <= thr <= 1:
        raise ValueError("threshold must be a squared cosine in [0, 1]")
    profile = angle_profile(lat, ordering)
    return all(c <= thr for c in profile.cos_sq)


@dataclass(frozen=True)
class OrthoViolation:
    ordering: tuple[int, ...]
    level: int  # position of the offending vector within the ordering
    cos_sq: Fraction


@dataclass(frozen=True)
class OrthoVerdict:
    weakly: bool
    strictly: bool
    witness_ordering: tuple[int, ...] | None
    violation: OrthoViolation | None

    def to_json_dict(self) -> dict:
        return {
            "weakly": self.weakly,
            "strictly": self.strictly,
            "witness": list(self.witness_ordering) if self.witness_ordering else None,
            "violation": None
            if self.violation is None
            else {
                "ordering": list(self.violation.ordering),
                "level": self.violation.level,
                "cos_sq": format_rational(self.violation.cos_sq),
            },
        }


def is_theta_orthogonal(
    lat: Lattice,
    cos_sq_threshold: Fraction = PI_THIRD_COS_SQ,
    max_dim: int = DEFAULT_ORDERING_DIM_GUARD,
) -> OrthoVerdict:
    """Quantify over all n! orderings, with pruning.

    The profile entry for a vector depends only on the *set* of vectors
    placed before it, so the search runs over subsets: a subset is reachable
    when some ordering of it stays within the threshold, and a reachable
    prefix whose extension violates the threshold prunes everything beyond.
    Verdict is deterministic; witnesses replay under angle_profile.
    """
    thr = Fraction(cos_sq_threshold)
    if not 0 <= thr <= 1:
        raise ValueError("threshold must be a squared cosine in [0, 1]")
    n = lat.rank
    if n > max_dim:
        raise DimensionGuardExceeded(f"rank {n} exceeds the orderings guard {max_dim}")
    if n == 1:
        return OrthoVerdict(True, True, (0,), None)

    cos_sq_memo: dict[tuple[int, int], Fraction] = {}

    def cos2(mask: int, v: int) -> Fraction:
        key = (mask, v)
        if key not in cos_sq_memo:
            span = [i for i in range(n) if mask >> i & 1]
            cos_sq_memo[key] = cos_sq_angle_to_span(lat, v, span)
        return cos_sq_memo[key]

    full = (1 << n) - 1
    reachable = {1 << v for v in range(n)}
    violations: list[tuple[int, int, int]] = []  # (popcount, mask, v)
    by_count: dict[int, list[int]] = {1: sorted(reachable)}
    for size in range(1, n):
        nxt: list[int] = []
        for mask in by_count.get(size, []):
            for v in range(n):
                if mask >> v & 1:
                    continue
                if cos2(mask, v) <= thr:
                    m2 = mask | (1 << v)
                    if m2 not in reachable:
                        reachable.add(m2)
                        nxt.append(m2)
                else:
                    violations.append((size, mask, v))
        if nxt:
            by_count[size + 1] = sorted(nxt)

    weakly = full in reachable
    strictly = not violations

    def lex_chain(target_mask: int) -> tuple[int, ...] | None:
        """Lexicographically smallest in-threshold ordering of the bits of target_mask."""
        dead: set[int] = set()

        def go(mask: int, chain: list[int]):
            if mask == target_mask:
                return tuple(chain)
            if mask in dead:
                return None
            for v in range(n):
                if target_mask >> v & 1 and not mask >> v & 1:
                    if mask == 0 or cos2(mask, v) <= thr:
                        chain.append(v)
                        res = go(mask | (1 << v), chain)
                        if res is not None:
                            return res
                        chain.pop()
            dead.add(mask)
            return None

        return go(0, [])

    witness = lex_chain(full) if weakly else None

    violation = None
    if violations:
        violations.sort(
            key=lambda t: (t[0], tuple(i for i in range(n) if t[1] >> i & 1), t[2])
        )
        size, mask, v = violations[0]
        prefix = lex_chain(mask)
        assert prefix is not None  # the mask was reachable
        rest = sorted(i for i in range(n) if i != v and not mask >> i & 1)
        violation = OrthoViolation(
            ordering=prefix + (v,) + tuple(rest),
            level=size,
            cos_sq=cos2(mask, v),
        )
    return OrthoVerdict(weakly, strictly, witness, violation)


@dataclass(frozen=True)
class MembershipReport:
    """Class-membership verdicts for a well-rounded lattice.

    stored_basis is the verdict for the lattice's own basis ordering set.
    in_weak / in_strict are three-valued: True/False when decided by a basis
    certificate, the kissing-number bounds, or the coherence rule; None when
    undecided.  The minimal-basis search decides in_strict completely.
    """

    stored_basis: OrthoVerdict
    kissing_number: int
    in_weak: bool | None
    in_strict: bool | None
    searched: bool
    search_weak_witness: tuple[tuple[int, ...], ...] | None
    search_strict_witness: tuple[tuple[int, ...], ...] | None
    reasons: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "stored_basis": self.stored_basis.to_json_dict(),
            "kissing_number": self.kissing_number,
            "in_weak": self.in_weak,
            "in_strict": self.in_strict,
            "searched": self.searched,
            "search_weak_witness": [list(u) for u in self.search_weak_witness]
            if self.search_weak_witness
            else None,
            "search_strict_witness": [list(u) for u in self.search_strict_witness]
            if self.search_strict_witness
            else None,
            "reasons": list(self.reasons),
        }


def minimal_basis_subsets(lat: Lattice, subset_guard: int = DEFAULT_SUBSET_GUARD):
    """Yield (subset, det) for every n-subset of minimal pairs with nonzero
    coefficient determinant.  Determinant +-1 means the subset is a basis of
    the lattice; callers assert the unimodularity property on the rest."""
    mvs = minimal_vectors(lat)
    n = lat.rank
    total = 1
    k = len(mvs.pairs)
    for i in range(n):
        total = total * (k - i) // (i + 1)
    if total > subset_guard:
        raise SubsetGuardExceeded(f"{total} candidate subsets exceed guard {subset_guard}")
    for subset in combinations(mvs.pairs, n):
        d = rat_det(RatMatrix.from_rows([list(u) for u in subset]))
        if d != 0:
            yield subset, d


def _gram_of_coefficient_basis(lat: Lattice, subset) -> RatMatrix:
    n = lat.rank
    g = lat.gram
    rows = []
    for u in subset:
        gu = [sum(g[a, b] * u[a] for a in range(n)) for b in range(n)]
        rows.append([sum(gu[b] * w[b] for b in range(n)) for w in subset])
    return RatMatrix.from_rows(rows)


def membership_report(
    lat: Lattice,
    search_minimal_bases: bool = False,
    cos_sq_threshold: Fraction = PI_THIRD_COS_SQ,
    subset_guard: int = DEFAULT_SUBSET_GUARD,
) -> MembershipReport:
    from .invariants import coherence  # deferred: invariants does not import this module

    if not is_well_rounded(lat):
        raise NotWellRounded(f"{lat.name!r} is not well-rounded")
    n = lat.rank
    mvs = minimal_vectors(lat)
    kiss = mvs.count
    stored = is_theta_orthogonal(lat, cos_sq_threshold)
    reasons: list[str] = []
    in_weak: bool | None = True if stored.weakly else None
    in_strict: bool | None = True if stored.strictly else None
    if stored.weakly:
        reasons.append("stored basis is weakly nearly orthogonal")
    if stored.strictly:
        reasons.append("stored basis is nearly orthogonal under every ordering")

    if kiss > 4 * n - 2:
        in_weak, in_strict = False, False
        reasons.append(f"kissing number {kiss} exceeds 4n-2 = {4 * n - 2}")
    elif kiss > 3 * n and in_strict is None:
        in_strict = False
        reasons.append(f"kissing number {kiss} exceeds 3n = {3 * n}")
    # coherence below 1/2 with more than 2n minimal vectors excludes the
    # whole weak class; a weakly certified basis would force coherence 1/2
    if in_weak is None and kiss > 2 * n and coherence(lat).value < Fraction(1, 2):
        in_weak, in_strict = False, False
        reasons.append(
            f"coherence below 1/2 with kissing number {kiss} > 2n rules the class out"
        )

    searched = False
    weak_witness = strict_witness = None
    if search_minimal_bases and (in_strict is None or in_weak is None):
        searched = True
        found_weak = found_strict = False
        for subset, d in minimal_basis_subsets(lat, subset_guard):
            if abs(d) != 1:
                continue
            candidate = lattice_from_gram(f"{lat.name}~basis", _gram_of_coefficient_basis(lat, subset))
            verdict = is_theta_orthogonal(candidate, cos_sq_threshold)
            if verdict.weakly and not found_weak:
                found_weak = True
                weak_witness = subset
            if verdict.strictly and not found_strict:
                found_strict = True
                strict_witness = subset
            if found_strict and found_weak:
                break
        if in_strict is None:
            # complete for the strict class: a nearly orthogonal basis
            # consists of minimal vectors, all of which were tried
            in_strict = found_strict
            reasons.append(
                "minimal-basis search "
                + ("found a nearly orthogonal basis" if found_strict else "exhausted all minimal bases")
            )
        if in_weak is None and found_weak:
            in_weak = True
            reasons.append("minimal-basis search found a weakly nearly orthogonal basis")
        elif in_weak is None:
            reasons.append("weak class undecided: search over minimal bases is only a heuristic")

    return MembershipReport(
        stored_basis=stored,
        kissing_number=kiss,
        in_weak=in_weak,
        in_strict=in_strict,
        searched=searched,
        search_weak_witness=weak_witness,
        search_strict_witness=strict_witness,
        reasons=tuple(reasons),
    )
