"""Blow-down corrections and intersection Betti numbers of X // G.

The decomposition theorem applied to the blow-down of each exceptional
divisor E_R -> center gives

    IP_t(X // G) = P(X~ // G) - sum_R B_R(t)

with, for each locus R of quotient-fiber dimension f = rk N_R - 1 - rk R,

    B_R(t) = P(center // N) * sum_q t^q * IH^(q^)(P(N_R) // R)

where q^ = q - 2 for q <= f and q^ = q otherwise, summed over even q with
q^ >= 0 and q <= 2 f + 2.  The intersection cohomology of the exceptional
quotient P(N_R) // R is computed recursively: if its own action has no
strictly semistable points it is the honest semistable series, otherwise
the full pipeline runs again one level down.

P(center // N) is derived from the strict transform series divided by the
Molien series of the residual torus action; the quotient must be a
palindromic nonnegative integer polynomial of the expected top degree
2 (dim Z_R - rk(T/R)).  When the derived candidate fails (the center
quotient can have cohomology invisible to this quotient series, such as an
elliptic curve quotient), a configured override is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .blowup import (
    PolystableLocus,
    correction_term,
    enumerate_polystable_loci,
    kirwan_blowup_series,
    locus_slice_scenario,
    slice_group,
    strict_transform_series,
)
from .lattice import molien_series
from .scenario import Scenario
from .series import (
    NotPolynomial,
    Polynomial,
    expand_denominator,
    is_palindromic,
)
from .stratification import has_strictly_semistable, semistable_series


class NeedsOverride(ArithmeticError):
    """A center quotient's Betti polynomial could not be derived and no
    override is configured."""


@dataclass(frozen=True)
class BlowdownDatum:
    """Everything entering one B_R term."""

    locus: PolystableLocus
    center_quotient: Polynomial       # P_t(Z_R^ss // N)
    exceptional_ih: Polynomial        # IP_t(P(N_R) // R)
    quotient_dim: int                 # complex fiber dimension f
    used_override: bool
    recursed: bool                    # exceptional quotient needed its own pipeline
    # the tensor-splitting of H^*_N(Z^ss) assumes the center quotient is
    # simply connected; flagged whenever the split formula (rather than a
    # configured override) produced the center polynomial
    simply_connected_assumed: bool


def exceptional_quotient_ih(s: Scenario, locus: PolystableLocus) -> tuple[Polynomial, bool]:
    """IP_t of the exceptional quotient P(N_R) // R and whether the full
    pipeline was needed for it."""
    scn = locus_slice_scenario(s, locus)
    if has_strictly_semistable(scn):
        return intersection_series(scn), True
    return semistable_series(scn).exact_polynomial(), False


def derive_center_quotient(s: Scenario, locus: PolystableLocus) -> Optional[Polynomial]:
    """Candidate Betti polynomial of Z_R^ss // N from the series quotient
    P^N(Z~_R^ss) / Molien(R), or None if the candidate fails validation."""
    st = strict_transform_series(s, locus, locus.normalizer)
    residual = molien_series(slice_group(s, locus))
    num = st.numerator * expand_denominator(residual.denominator)
    den = residual.numerator * expand_denominator(st.denominator)
    try:
        candidate = _exact_quotient(num, den)
    except NotPolynomial:
        return None
    z_dim = sum(e.multiplicity for e in locus.z_diagram) - 1
    expected_top = 2 * (z_dim - (s.group.torus_rank - locus.subtorus_rank))
    if expected_top < 0 or candidate.degree > expected_top:
        return None
    if not candidate.is_integral():
        return None
    if any(c < 0 for _, c in candidate.terms):
        return None
    if not is_palindromic(candidate, expected_top):
        return None
    return candidate


def _exact_quotient(num: Polynomial, den: Polynomial) -> Polynomial:
    from .series import exact_divide
    return exact_divide(num, den)


def center_quotient_series(s: Scenario, locus: PolystableLocus) -> tuple[Polynomial, bool]:
    """Betti polynomial of the center quotient, preferring a configured
    override; raises NeedsOverride when neither source is usable."""
    override = s.find_override(locus.subtorus_rank, _locus_direction_vector(locus))
    if override is not None:
        return override, True
    candidate = derive_center_quotient(s, locus)
    if candidate is None:
        raise NeedsOverride(
            f"center quotient for subtorus rank {locus.subtorus_rank}, "
            f"direction {locus.direction}, requires a configured override")
    return candidate, False


def _locus_direction_vector(locus: PolystableLocus):
    if locus.direction is None:
        return None
    from fractions import Fraction
    return tuple(Fraction(c) for c in locus.direction)


def blowdown_datum(s: Scenario, locus: PolystableLocus) -> BlowdownDatum:
    center, used_override = center_quotient_series(s, locus)
    ih, recursed = exceptional_quotient_ih(s, locus)
    quotient_dim = locus.normal_rank - 1 - locus.subtorus_rank
    return BlowdownDatum(locus, center, ih, quotient_dim, used_override,
                         recursed, simply_connected_assumed=not used_override)


def blowdown_correction(s: Scenario, locus: PolystableLocus) -> Polynomial:
    """The polynomial B_R(t) subtracted for this locus."""
    d = blowdown_datum(s, locus)
    fiber = Polynomial.zero()
    for q in range(0, 2 * d.quotient_dim + 3, 2):
        q_hat = q - 2 if q <= d.quotient_dim else q
        if q_hat < 0:
            continue
        c = d.exceptional_ih.coeff(q_hat)
        if c != 0:
            fiber = fiber + Polynomial.monomial(q, c)
    return d.center_quotient * fiber


_INTERSECTION_CACHE: dict[tuple, Polynomial] = {}


def intersection_series(s: Scenario) -> Polynomial:
    """Intersection Poincare polynomial IP_t(X // G)."""
    key = s.canonical_key() + (s.overrides,)
    cached = _INTERSECTION_CACHE.get(key)
    if cached is not None:
        return cached
    total = kirwan_blowup_series(s).exact_polynomial()
    for locus in enumerate_polystable_loci(s):
        total = total - blowdown_correction(s, locus)
    _INTERSECTION_CACHE[key] = total
    return total


def consistency_series(s: Scenario) -> Polynomial:
    """IP_t recomputed as P^G(X^ss) + sum_R (A_R - B_R), which must agree
    with intersection_series term order notwithstanding."""
    total = semistable_series(s)
    corrections = Polynomial.zero()
    for locus in enumerate_polystable_loci(s):
        total = total + correction_term(s, locus)
        corrections = corrections + blowdown_correction(s, locus)
    return total.exact_polynomial() - corrections


@dataclass(frozen=True)
class BettiReport:
    """Ordinary Betti numbers recoverable from IP_t.

    Above degree n+2 (n the complex dimension of the quotient) intersection
    and ordinary cohomology of X // G agree; below degree n-2 the quotient
    map from the stable locus identifies IH with H^*(X^s / G)."""

    quotient_dim: int
    intersection: Polynomial
    quotient_high: Tuple[Tuple[int, int], ...]   # (degree, b_i) for i > n+2
    stable_low: Tuple[Tuple[int, int], ...]      # (degree, b_i) for i < n-2


def ordinary_betti_report(s: Scenario) -> BettiReport:
    ip = intersection_series(s)
    n = s.projective_dimension - s.group.torus_rank
    high = tuple((i, int(ip.coeff(i))) for i in range(n + 3, 2 * n + 1))
    low = tuple((i, int(ip.coeff(i))) for i in range(0, max(n - 2, 0)))
    return BettiReport(n, ip, high, low)
