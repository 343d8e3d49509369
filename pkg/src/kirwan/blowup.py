"""Kirwan partial desingularization: blow-up centers and corrected series.

When X^ss contains strictly semistable points, each conjugacy class R of
positive-dimensional subtorus stabilizers contributes a blow-up along
G . Z_R^ss.  For each locus the corrected series is

    P(X~ // G) = P^G(X^ss) + sum_R ( main_R - extra_R )

  main_R  = P^N(Z~_R^ss) * (t^2 + t^4 + ... + t^(2 (rk N_R - 1)))
  extra_R = sum_beta' (orbit / w) t^(2 d(beta')) P^(N cap Stab beta')(...)

where N = N(R) is the normalizer of R in G, N_R is the normal slice to
G . Z_R^ss, Z~_R^ss is the strict transform of Z_R^ss through the earlier
(higher-rank) blow-up stages, and beta' runs over the orbit classes of the
unstable indices of the exceptional P(N_R) bundle.  The weight 1/w corrects
for slice indices identified by the ambient finite group.

A locus is recorded for the full torus when a zero weight coexists with
nonzero ones, and for each F-orbit of lines orthogonal to some weight whose
fixed diagram is proper, contains the origin in its hull, and contains a
nonzero weight (otherwise the subtorus acts trivially on its fixed locus
and defines no new center).  Loci are ordered by descending subtorus rank,
matching the stage order of the blow-ups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .lattice import (
    FiniteMatrixGroup,
    GroupSpec,
    Vector,
    dot,
    induced_line_group,
    is_zero_vector,
    line_normalizer,
    line_sign,
    mat_vec,
    norm_squared,
    orbit,
    origin_in_hull,
    primitive_direction,
)
from .scenario import Scenario, WeightEntry
from .series import Polynomial, RationalSeries, geometric_range, projective_poincare
from .stratification import (
    BetaDatum,
    beta_candidates,
    enumerate_beta,
    semistable_series,
    slice_scenario,
)


class FiberNotClosed(ArithmeticError):
    """An exceptional stratum fibers over a non-closed fixed locus, which
    the engine does not support."""


@dataclass(frozen=True)
class PolystableLocus:
    """One blow-up center G . Z_R^ss, for a subtorus R."""

    subtorus_rank: int
    direction: Optional[Tuple[int, ...]]   # None for the full torus
    z_diagram: Tuple[WeightEntry, ...]
    normalizer: GroupSpec
    normal_weights: Tuple[WeightEntry, ...]
    normal_rank: int


@dataclass(frozen=True)
class SliceBetaDatum:
    """One unstable index of the exceptional projective bundle P(N_R)."""

    beta_prime: Vector         # in the slice (rank = subtorus rank)
    codim: int
    w: int                     # ambient identifications of slice indices
    orbit_size: int            # orbit size inside the slice group
    slice_stabilizer: GroupSpec
    fiber_series: Polynomial   # Poincare polynomial of the P^(m-1) fiber


def _line_orbit(direction: Tuple[int, ...], finite: FiniteMatrixGroup) -> frozenset:
    d = tuple(Fraction(c) for c in direction)
    return frozenset(primitive_direction(mat_vec(m, d)) for m in finite.elements)


def enumerate_polystable_loci(s: Scenario) -> list[PolystableLocus]:
    rank = s.group.torus_rank
    loci: list[PolystableLocus] = []
    zero_mult = s.zero_multiplicity
    nonzero = s.nonzero_vectors()
    if rank >= 1 and zero_mult > 0 and nonzero:
        z = tuple(e for e in s.diagram if is_zero_vector(e.vector))
        normal = tuple(e for e in s.diagram if not is_zero_vector(e.vector))
        loci.append(PolystableLocus(
            subtorus_rank=rank,
            direction=None,
            z_diagram=z,
            normalizer=s.group,
            normal_weights=normal,
            normal_rank=sum(e.multiplicity for e in normal)))
    if rank == 2:
        candidates = {primitive_direction((-v[1], v[0])) for v in nonzero}
        seen: set[frozenset] = set()
        reps = []
        for d in candidates:
            line_orb = _line_orbit(d, s.group.finite_part)
            if line_orb in seen:
                continue
            seen.add(line_orb)
            reps.append(max(line_orb))
        for d in sorted(reps, reverse=True):
            u = tuple(Fraction(c) for c in d)
            z = tuple(e for e in s.diagram if dot(e.vector, u) == 0)
            z_mult = sum(e.multiplicity for e in z)
            if z_mult == s.total_multiplicity:
                continue  # subtorus acts trivially: not a new center
            if not any(not is_zero_vector(e.vector) for e in z):
                continue  # fixed locus already inside the full-torus center
            if not origin_in_hull([e.vector for e in z]):
                continue  # no semistable point is fixed by this subtorus
            normalizer = line_normalizer(s.group, u)
            normal = tuple(
                WeightEntry((dot(e.vector, u),), e.multiplicity, e.label)
                for e in s.diagram if dot(e.vector, u) != 0)
            loci.append(PolystableLocus(
                subtorus_rank=1,
                direction=d,
                z_diagram=z,
                normalizer=normalizer,
                normal_weights=normal,
                normal_rank=sum(e.multiplicity for e in normal)))
    loci.sort(key=lambda L: (-L.subtorus_rank,
                             tuple() if L.direction is None else tuple(-c for c in L.direction)))
    return loci


def normal_slice_weights(s: Scenario, locus: PolystableLocus) -> Tuple[WeightEntry, ...]:
    """Weights of the residual subtorus R on the normal slice N_R."""
    return locus.normal_weights


def normal_rank(s: Scenario, locus: PolystableLocus) -> int:
    """rk N_R = dim X - (dim G + dim Z_R^ss - dim N(R)); for a torus with
    finite extensions dim G = dim N, so this is just the multiplicity of
    the nonfixed weights."""
    return locus.normal_rank


def slice_group(s: Scenario, locus: PolystableLocus) -> GroupSpec:
    """Group acting on the normal-slice weight diagram: the residual torus
    R with the action induced by pi_0 N(R)."""
    if locus.direction is None:
        return GroupSpec(s.group.torus_rank, locus.normalizer.finite_part)
    u = tuple(Fraction(c) for c in locus.direction)
    return GroupSpec(1, induced_line_group(locus.normalizer.finite_part, u))


def locus_slice_scenario(s: Scenario, locus: PolystableLocus) -> Scenario:
    return Scenario(locus.normal_weights, slice_group(s, locus))


def embed_slice_vector(locus: PolystableLocus, v: Vector) -> Vector:
    """Inclusion of the slice cocharacter line/plane back into the ambient
    lattice, so ambient-orbit identifications can be counted."""
    if locus.direction is None:
        return v
    u = tuple(Fraction(c) for c in locus.direction)
    scale = v[0] / norm_squared(u)
    return tuple(scale * c for c in u)


def strict_transform_series(s: Scenario, locus: PolystableLocus,
                            group: GroupSpec) -> RationalSeries:
    """P^H(Z~_R^ss) for a subgroup H of N(R): the fixed diagram of R with
    its own (earlier-stage) blow-ups applied."""
    if group.torus_rank != s.group.torus_rank:
        raise ValueError("strict transform group must contain the full torus")
    if not group.finite_part.elements <= locus.normalizer.finite_part.elements:
        raise ValueError("group must sit inside the locus normalizer")
    return kirwan_blowup_series(Scenario(locus.z_diagram, group))


def main_term(s: Scenario, locus: PolystableLocus) -> RationalSeries:
    if locus.normal_rank < 2:
        return RationalSeries.zero()
    factor = geometric_range(1, locus.normal_rank - 1)
    return strict_transform_series(s, locus, locus.normalizer) * factor


def _slice_stabilizer(s: Scenario, locus: PolystableLocus,
                      beta_prime: Vector) -> GroupSpec:
    """N(R) cap Stab(beta'), with beta' embedded in the ambient lattice."""
    finite = locus.normalizer.finite_part
    if locus.direction is None:
        fixed = frozenset(m for m in finite.elements
                          if mat_vec(m, beta_prime) == beta_prime)
    else:
        u = tuple(Fraction(c) for c in locus.direction)
        fixed = frozenset(m for m in finite.elements if line_sign(m, u) == 1)
    rank = s.group.torus_rank
    return GroupSpec(rank, FiniteMatrixGroup(rank, fixed))


def _slice_beta_pairs(s: Scenario, locus: PolystableLocus
                      ) -> list[tuple[SliceBetaDatum, BetaDatum]]:
    scn = locus_slice_scenario(s, locus)
    all_embedded = {embed_slice_vector(locus, v) for v in beta_candidates(scn)}
    pairs = []
    for b in enumerate_beta(scn):
        ambient_orbit = orbit(embed_slice_vector(locus, b.beta),
                              s.group.finite_part)
        w = len(ambient_orbit & all_embedded)
        fiber_mult = sum(e.multiplicity for e in scn.diagram
                         if e.vector == b.beta)
        datum = SliceBetaDatum(
            beta_prime=b.beta,
            codim=b.codim,
            w=w,
            orbit_size=b.orbit_size,
            slice_stabilizer=_slice_stabilizer(s, locus, b.beta),
            fiber_series=projective_poincare(max(fiber_mult - 1, 0)))
        pairs.append((datum, b))
    return pairs


def slice_beta_set(s: Scenario, locus: PolystableLocus) -> list[SliceBetaDatum]:
    return [d for d, _ in _slice_beta_pairs(s, locus)]


def extra_term(s: Scenario, locus: PolystableLocus) -> RationalSeries:
    """Overcounted unstable strata of the exceptional bundle.

    When the center is a point (the fixed diagram has total multiplicity 1)
    the exceptional divisor is a single weighted projective space and each
    term is the semistable series of the slice stratum.  Otherwise each
    stratum fibers over the strict transform of the center with projective
    fibers; the fixed locus of beta' must then be a single weight, or the
    fibration is not a closed-fiber bundle and the engine refuses.
    """
    scn = locus_slice_scenario(s, locus)
    point_center = sum(e.multiplicity for e in locus.z_diagram) == 1
    total = RationalSeries.zero()
    for datum, b in _slice_beta_pairs(s, locus):
        coeff = Fraction(b.orbit_size, datum.w)
        shift = Polynomial.monomial(2 * datum.codim)
        if point_center:
            term = semistable_series(slice_scenario(scn, b))
        else:
            if any(e.vector != b.beta for e in b.z_weights):
                raise FiberNotClosed(
                    f"beta'={tuple(map(str, b.beta))} fixes weights away from "
                    f"its own level in locus direction {locus.direction}")
            term = (strict_transform_series(s, locus, datum.slice_stabilizer)
                    * datum.fiber_series)
        total = total + term * shift * coeff
    return total


def correction_term(s: Scenario, locus: PolystableLocus) -> RationalSeries:
    """A_R = main_R - extra_R."""
    return main_term(s, locus) - extra_term(s, locus)


_BLOWUP_CACHE: dict[tuple, RationalSeries] = {}


def kirwan_blowup_series(s: Scenario) -> RationalSeries:
    """Poincare series of the Kirwan partial desingularization X~ // G."""
    key = s.canonical_key()
    cached = _BLOWUP_CACHE.get(key)
    if cached is not None:
        return cached
    total = semistable_series(s)
    for locus in enumerate_polystable_loci(s):
        total = total + correction_term(s, locus)
    total = total.cancel()
    _BLOWUP_CACHE[key] = total
    return total
