"""Local density modification: exact on planar and block-coupled lattices,
float-mode (with post-hoc verification) in general position.

Changing the cosine between one decoupled pair of unit basis vectors from c
to c' scales the squared packing density by exactly (1 - c^2) / (1 - c'^2),
because only that pair's 2x2 determinant factor moves.  The general float
path rotates one vector inside one coordinate plane, rationalizes, and then
re-verifies: the target value, the density ratio law, and strict
near-orthogonality of the result.  It never returns an unverified lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotNearlyOrthogonal, NotPositiveDefinite, VerificationFailed
from .invariants import mu_nu, packing_density
from .lattice import Lattice, lattice_from_gram
from .minvec import minimal_norm_sq
from .ortho import is_theta_orthogonal
from .ratlinalg import RatMatrix, format_rational

MU = "mu"
NU = "nu"


@dataclass(frozen=True)
class PerturbationOutcome:
    before: Lattice
    after: Lattice
    mode: str
    value_before: Fraction
    value_after: Fraction
    density_ratio_sq: Fraction
    still_nearly_orthogonal: bool
    gram_distance: Fraction  # max |entry change|; the similarity-class proxy

    def to_json_dict(self) -> dict:
        from .lattice import lattice_to_json_dict

        return {
            "mode": self.mode,
            "value_before": format_rational(self.value_before),
            "value_after": format_rational(self.value_after),
            "density_ratio_sq": format_rational(self.density_ratio_sq),
            "still_nearly_orthogonal": self.still_nearly_orthogonal,
            "gram_distance": format_rational(self.gram_distance),
            "before": lattice_to_json_dict(self.before),
            "after": lattice_to_json_dict(self.after),
        }


def _require_unit_diagonal(lat: Lattice) -> None:
    if any(lat.gram[i, i] != 1 for i in range(lat.rank)):
        raise ValueError("perturbation requires a unit-diagonal Gram matrix")


def certified_by_block_structure(gram: RatMatrix) -> bool:
    """True when every unit vector couples to at most one partner with
    |cos| <= 1/2; such a basis is nearly orthogonal under every ordering
    (the partner is orthogonal to the rest of any sub-span, so the
    projection of a vector onto any span of others has norm <= 1/2)."""
    n = gram.rows
    if any(gram[i, i] != 1 for i in range(n)):
        return False
    partner: dict[int, int] = {}
    for i in range(n):
        others = [j for j in range(n) if j != i and gram[i, j] != 0]
        if len(others) > 1:
            return False
        if others:
            j = others[0]
            if abs(gram[i, j]) > Fraction(1, 2):
                return False
            partner[i] = j
    return all(partner.get(j) == i for i, j in partner.items())


def _density_ratio_sq(before: Lattice, after: Lattice) -> Fraction:
    return (
        packing_density(after).delta_sq_over_omega_sq
        / packing_density(before).delta_sq_over_omega_sq
    )


def _gram_distance(a: RatMatrix, b: RatMatrix) -> Fraction:
    return max(abs(x - y) for x, y in zip(a.entries, b.entries))


def perturb_2d(lat: Lattice, new_cos: Fraction) -> PerturbationOutcome:
    """Replace the off-diagonal of a rank-2 unit Gram, preserving its sign."""
    if lat.rank != 2:
        raise ValueError("perturb_2d needs a rank-2 lattice")
    _require_unit_diagonal(lat)
    new_cos = Fraction(new_cos)
    if abs(new_cos) > Fraction(1, 2):
        raise ValueError("|new cosine| must be at most 1/2")
    old = lat.gram[0, 1]
    sign = -1 if old < 0 else 1
    entry = sign * new_cos
    after = lattice_from_gram(
        f"{lat.name}~cos={new_cos}",
        [[1, entry], [entry, 1]],
        provenance=f"pair cosine moved from {old} to {entry}",
    )
    return PerturbationOutcome(
        before=lat,
        after=after,
        mode="cos",
        value_before=abs(old),
        value_after=abs(new_cos),
        density_ratio_sq=_density_ratio_sq(lat, after),
        still_nearly_orthogonal=is_theta_orthogonal(after).strictly,
        gram_distance=_gram_distance(lat.gram, after.gram),
    )


def perturb_block(lat: Lattice, block_index: int, new_cos: Fraction) -> PerturbationOutcome:
    """Replace the coupling of the 2x2 block at rows (2i, 2i+1).

    The target pair must be decoupled from the rest of the basis and the
    Gram unit-diagonal; the density ratio law is then exact by determinant
    multiplicativity.
    """
    _require_unit_diagonal(lat)
    new_cos = Fraction(new_cos)
    if abs(new_cos) > Fraction(1, 2):
        raise ValueError("|new cosine| must be at most 1/2")
    i = 2 * block_index
    j = i + 1
    if block_index < 0 or j >= lat.rank:
        raise ValueError(f"no block {block_index} in rank {lat.rank}")
    for k in range(lat.rank):
        if k not in (i, j) and (lat.gram[i, k] != 0 or lat.gram[j, k] != 0):
            raise ValueError("target block is coupled to the rest of the basis")
    if minimal_norm_sq(lat) != 1:
        raise ValueError("block perturbation expects minimal norm 1")
    old = lat.gram[i, j]
    sign = -1 if old < 0 else 1
    entry = sign * new_cos
    rows = lat.gram.to_rows()
    rows[i][j] = rows[j][i] = entry
    after = lattice_from_gram(
        f"{lat.name}~block{block_index}={new_cos}",
        rows,
        provenance=f"block {block_index} cosine moved from {old} to {entry}",
    )
    if certified_by_block_structure(after.gram):
        still = True
    else:
        still = is_theta_orthogonal(after).strictly
    return PerturbationOutcome(
        before=lat,
        after=after,
        mode="cos",
        value_before=abs(old),
        value_after=abs(new_cos),
        density_ratio_sq=_density_ratio_sq(lat, after),
        still_nearly_orthogonal=still,
        gram_distance=_gram_distance(lat.gram, after.gram),
    )


def _certify_strict(lat: Lattice) -> bool:
    if certified_by_block_structure(lat.gram):
        return True
    return is_theta_orthogonal(lat).strictly


def perturb_general(
    lat: Lattice,
    mode: str,
    target: Fraction,
    tol: float = 1e-9,
    max_denominator: int = 10**6,
) -> PerturbationOutcome:
    """Move mu (the smallest pairwise |cos|) or nu (the largest) to `target`.

    Float-mode: rebuilds a floating basis by Cholesky, rotates the second
    vector of the extreme pair inside that pair's plane to the target angle
    (all other vectors stay fixed, so only one Gram row changes), then
    rationalizes the changed row.  Succeeds only if the rationalized lattice
    verifies: extreme value equals the target within tol, the density ratio
    law holds within tol, and the result is still nearly orthogonal.
    """
    if mode not in (MU, NU):
        raise ValueError(f"mode must be 'mu' or 'nu', got {mode!r}")
    _require_unit_diagonal(lat)
    n = lat.rank
    if n < 2:
        raise ValueError("need rank >= 2")
    target = Fraction(target)
    mu_before, nu_before = mu_nu(lat)
    if mode == MU:
        if not 0 < target <= Fraction(1, 2):
            raise ValueError("mu-mode target must lie in (0, 1/2]")
    else:
        nu_cos = nu_before.exact_cos
        assert nu_cos is not None  # unit diagonal
        if not 0 <= target <= nu_cos:
            raise ValueError("nu-mode target must lie in [0, current nu]")
    if not _certify_strict(lat):
        raise NotNearlyOrthogonal(
            f"{lat.name!r} is not certified nearly orthogonal; refusing to perturb"
        )

    g = lat.gram
    want = (mu_before if mode == MU else nu_before).cos_sq
    pair = min(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if g[i, j] * g[i, j] == want
    )
    i, j = pair
    value_before = abs(g[i, j])
    sign = -1 if g[i, j] < 0 else 1

    gf = np.array([[float(g[a, b]) for b in range(n)] for a in range(n)])
    chol = np.linalg.cholesky(gf)  # rows are basis vectors, G = C C^T
    basis = chol  # basis[k] is b_k
    u1 = basis[i] / np.linalg.norm(basis[i])
    w = basis[j] - float(np.dot(basis[j], u1)) * u1
    wn = np.linalg.norm(w)
    if wn < 1e-12:
        raise VerificationFailed("degenerate pair plane", {"pair": pair})
    e2 = w / wn
    t = float(target)
    new_bj = sign * t * u1 + math.sqrt(max(0.0, 1.0 - t * t)) * e2

    rows = g.to_rows()
    for k in range(n):
        if k == j:
            continue
        if k == i:
            val = sign * target  # exact by construction
        else:
            val = Fraction(float(np.dot(new_bj, basis[k]))).limit_denominator(
                max_denominator
            )
        rows[j][k] = rows[k][j] = val
    rows[j][j] = Fraction(1)

    diagnostics: dict = {"pair": pair, "mode": mode, "target": str(target)}
    try:
        after = lattice_from_gram(
            f"{lat.name}~{mode}={target}", rows, provenance="float-mode pair rotation"
        )
    except NotPositiveDefinite as exc:
        raise VerificationFailed(f"perturbed Gram not positive definite: {exc}", diagnostics)

    mu_after, nu_after = mu_nu(after)
    achieved = (mu_after if mode == MU else nu_after).exact_cos
    diagnostics["achieved"] = str(achieved)
    if achieved is None or abs(float(achieved - target)) > tol:
        raise VerificationFailed(
            f"{mode} after perturbation is {achieved}, wanted {target}", diagnostics
        )
    ratio_sq = _density_ratio_sq(lat, after)
    law = (1 - float(value_before) ** 2) / (1 - float(achieved) ** 2)
    diagnostics["density_ratio_sq"] = str(ratio_sq)
    if abs(math.sqrt(float(ratio_sq)) - math.sqrt(law)) > tol:
        raise VerificationFailed("density ratio law violated beyond tolerance", diagnostics)
    if not _certify_strict(after):
        raise VerificationFailed("perturbed lattice left the nearly orthogonal class", diagnostics)

    return PerturbationOutcome(
        before=lat,
        after=after,
        mode=mode,
        value_before=value_before,
        value_after=achieved,
        density_ratio_sq=ratio_sq,
        still_nearly_orthogonal=True,
        gram_distance=_gram_distance(lat.gram, after.gram),
    )
