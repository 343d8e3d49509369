"""HKKN stratification and the equivariant Poincare series of X^ss.

The unstable locus of P(V) under T x| F is stratified by the finite set of
nonzero closest points beta of convex hulls of weight subsets.  For each
beta the stratum retracts onto the fixed-part locus Z_beta (weights alpha
with alpha . beta = |beta|^2) and has complex codimension

    d(beta) = n(beta) = #{ weights alpha : alpha . beta < |beta|^2 }

counted with multiplicity (no parabolic correction for a torus).  Since F
permutes the strata, the recursion runs over orbit classes of beta, each
weighted by nothing: the F-orbit of strata contributes a single term with
the stabilizer of beta acting on Z_beta.

Equivariant perfection then gives

    P^G(X^ss) = P^G(X) - sum_beta t^(2 d(beta)) P^(Stab beta)(Z_beta^ss)

where each Z_beta^ss series is the semistable series of the slice scenario
(weights of Z_beta translated by -beta, group Stab beta).  The recursion is
memoized on the canonical scenario key.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .lattice import (
    GroupSpec,
    Vector,
    canonical_orbit_representative,
    closest_point_to_origin,
    dot,
    is_zero_vector,
    norm_squared,
    orbit,
    origin_in_hull,
    stabilizer_of_vector,
)
from .scenario import Scenario, WeightEntry
from .series import Polynomial, RationalSeries, projective_poincare
from .lattice import molien_series, primitive_direction
from itertools import combinations


@dataclass(frozen=True)
class BetaDatum:
    """One orbit class of unstable strata."""

    beta: Vector                     # canonical orbit representative
    z_weights: Tuple[WeightEntry, ...]
    n_beta: int                      # weights below the beta level, with mult
    codim: int                       # complex codimension of the stratum
    stabilizer: GroupSpec
    orbit_size: int                  # number of strata in the F-orbit

    @property
    def norm_squared(self) -> Fraction:
        return norm_squared(self.beta)


def beta_candidates(s: Scenario) -> set[Vector]:
    """All nonzero closest points from weight subsets of size <= 2.

    In rank <= 2 the closest point of any hull is already the closest point
    of one of its vertices or edges, so singletons and pairs suffice.
    """
    vectors = sorted(s.vector_multiplicities())
    out: set[Vector] = set()
    for v in vectors:
        if not is_zero_vector(v):
            out.add(v)
    for u, v in combinations(vectors, 2):
        p = closest_point_to_origin([u, v])
        if not is_zero_vector(p):
            out.add(p)
    return out


def beta_datum(s: Scenario, beta: Vector) -> BetaDatum:
    level = norm_squared(beta)
    z = tuple(e for e in s.diagram if dot(e.vector, beta) == level)
    n = sum(e.multiplicity for e in s.diagram if dot(e.vector, beta) < level)
    stab = stabilizer_of_vector(s.group, beta)
    return BetaDatum(
        beta=beta,
        z_weights=z,
        n_beta=n,
        codim=n,
        stabilizer=stab,
        orbit_size=len(orbit(beta, s.group.finite_part)),
    )


def enumerate_beta(s: Scenario) -> list[BetaDatum]:
    """Orbit classes of the unstable index set, sorted by (|beta|^2, beta)."""
    reps = {canonical_orbit_representative(b, s.group.finite_part)
            for b in beta_candidates(s)}
    data = [beta_datum(s, b) for b in sorted(reps)]
    data.sort(key=lambda d: (d.norm_squared, d.beta))
    return data


def slice_scenario(s: Scenario, b: BetaDatum) -> Scenario:
    """The scenario computing P^(Stab beta)(Z_beta^ss): weights of Z_beta
    translated by -beta, acted on by the stabilizer of beta."""
    entries = tuple(
        WeightEntry(tuple(c - bc for c, bc in zip(e.vector, b.beta)),
                    e.multiplicity, e.label)
        for e in b.z_weights)
    return Scenario(entries, b.stabilizer)


def ambient_series(s: Scenario) -> RationalSeries:
    """P^G(X) = P(P^n) * Molien(F), the equivariant series of the ambient
    projective space."""
    return molien_series(s.group) * projective_poincare(s.projective_dimension)


_SEMISTABLE_CACHE: dict[tuple, RationalSeries] = {}


def semistable_series(s: Scenario) -> RationalSeries:
    """Equivariant Poincare series of the semistable locus, exactly."""
    key = s.canonical_key()
    cached = _SEMISTABLE_CACHE.get(key)
    if cached is not None:
        return cached
    total = ambient_series(s)
    for b in enumerate_beta(s):
        shift = Polynomial.monomial(2 * b.codim)
        total = total - semistable_series(slice_scenario(s, b)) * shift
    total = total.cancel()
    _SEMISTABLE_CACHE[key] = total
    return total


def has_strictly_semistable(s: Scenario) -> bool:
    """True iff X^ss != X^s, i.e. some positive-dimensional subtorus fixes a
    semistable point.

    A subtorus with fixed weights whose hull contains the origin produces a
    strictly semistable point.  In rank <= 2 it is enough to check the full
    torus (a zero weight) and, for rank 2, every line orthogonal to some
    weight (other candidate lines fix no weight at all).
    """
    if s.group.torus_rank == 0:
        return False
    if s.zero_multiplicity > 0:
        return True
    if s.group.torus_rank == 1:
        # only the full torus is available; its fixed semistable diagram is
        # the zero weight, which is absent here
        return False
    seen: set[tuple] = set()
    for v in s.nonzero_vectors():
        normal = primitive_direction((-v[1], v[0]))
        if normal in seen:
            continue
        seen.add(normal)
        u = tuple(Fraction(c) for c in normal)
        fixed = [w for w in s.nonzero_vectors() if dot(w, u) == 0]
        if fixed and origin_in_hull(fixed):
            return True
    return False
