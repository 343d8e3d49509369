"""Pipeline driver and report rendering (table, json, csv).

run_pipeline executes every stage on a scenario and collects the numbers a
report needs; the render_* functions produce byte-stable text output (no
timestamps, deterministic ordering).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional, Tuple

from .blowdown import (
    BettiReport,
    BlowdownDatum,
    blowdown_correction,
    blowdown_datum,
    intersection_series,
    ordinary_betti_report,
)
from .blowup import (
    PolystableLocus,
    correction_term,
    enumerate_polystable_loci,
    kirwan_blowup_series,
)
from .scenario import Scenario
from .series import Polynomial, RationalSeries, is_palindromic
from .stratification import (
    BetaDatum,
    enumerate_beta,
    has_strictly_semistable,
    semistable_series,
    slice_scenario,
)


@dataclass(frozen=True)
class StratumRow:
    datum: BetaDatum
    stratum_series: RationalSeries   # P^(Stab beta)(Z_beta^ss)


@dataclass(frozen=True)
class LocusRow:
    locus: PolystableLocus
    correction: RationalSeries       # A_R
    blowdown: BlowdownDatum
    blowdown_poly: Polynomial        # B_R


@dataclass(frozen=True)
class PipelineResult:
    scenario: Scenario
    strata: Tuple[StratumRow, ...]
    semistable: RationalSeries
    strictly_semistable: bool
    loci: Tuple[LocusRow, ...]
    blowup: Polynomial               # P_t(X~ // G), a polynomial here
    intersection: Polynomial         # IP_t(X // G)
    betti: BettiReport


def run_pipeline(s: Scenario) -> PipelineResult:
    strata = tuple(
        StratumRow(b, semistable_series(slice_scenario(s, b)).reduce())
        for b in enumerate_beta(s))
    semistable = semistable_series(s)
    loci = tuple(
        LocusRow(locus, correction_term(s, locus).reduce(),
                 blowdown_datum(s, locus), blowdown_correction(s, locus))
        for locus in enumerate_polystable_loci(s))
    blowup = kirwan_blowup_series(s).exact_polynomial()
    intersection = intersection_series(s)
    return PipelineResult(
        scenario=s,
        strata=strata,
        semistable=semistable,
        strictly_semistable=has_strictly_semistable(s),
        loci=loci,
        blowup=blowup,
        intersection=intersection,
        betti=ordinary_betti_report(s),
    )


# -- consistency checks ------------------------------------------------------

def check_duality(result: PipelineResult) -> tuple[bool, str]:
    """Poincare duality of IP_t in the quotient dimension."""
    top = 2 * result.betti.quotient_dim
    try:
        ok = is_palindromic(result.intersection, top)
    except ValueError:
        ok = False
    return ok, f"intersection series palindromic about degree {top}"


def check_odd(result: PipelineResult) -> tuple[bool, str]:
    """All odd-degree coefficients of the final answers vanish."""
    polys = [result.blowup, result.intersection]
    ok = all(d % 2 == 0 for p in polys for d, _ in p.terms)
    return ok, "no odd-degree cohomology in blow-up or intersection series"


def check_consistency(result: PipelineResult) -> tuple[bool, str]:
    """IP_t recomputed as P^G(X^ss) + sum (A_R - B_R) agrees."""
    from .blowdown import consistency_series
    ok = consistency_series(result.scenario) == result.intersection
    return ok, "semistable + corrections route agrees with blow-up route"


CHECKS = {
    "duality": check_duality,
    "odd": check_odd,
    "consistency": check_consistency,
}


# -- rendering ----------------------------------------------------------------

def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


def _poly_coeff_ints(p: Polynomial) -> list:
    out = []
    for c in p.coefficients():
        out.append(int(c) if c.denominator == 1 else str(c))
    return out


def render_table(result: PipelineResult, mod_t: Optional[int]) -> str:
    lines: list[str] = []
    s = result.scenario
    lines.append("scenario")
    lines.append(f"  torus rank        {s.group.torus_rank}")
    lines.append(f"  finite group order {s.group.finite_order}")
    lines.append(f"  weights           {s.total_multiplicity} (P^{s.projective_dimension})")
    lines.append("")
    lines.append("unstable strata (orbit classes)")
    lines.append("  beta | n(beta) | codim | orbit | stab order | P(Z_beta^ss)")
    for row in result.strata:
        b = row.datum
        lines.append(
            f"  {_fmt_vec(b.beta)} | {b.n_beta} | {b.codim} | {b.orbit_size}"
            f" | {b.stabilizer.finite_order} | {row.stratum_series}")
    lines.append("")
    semi = result.semistable.reduce()
    lines.append(f"semistable series   {semi}")
    if mod_t is not None:
        lines.append(f"  mod t^{mod_t}          {result.semistable.truncate(mod_t - 1)}")
    lines.append(f"strictly semistable {'yes' if result.strictly_semistable else 'no'}")
    if result.loci:
        lines.append("")
        lines.append("blow-up centers")
        for row in result.loci:
            L = row.locus
            direction = "full torus" if L.direction is None else _fmt_vec(L.direction)
            lines.append(f"  rank {L.subtorus_rank} ({direction})"
                         f" | normal rank {L.normal_rank}"
                         f" | A_R = {row.correction}")
            note = (" (override)" if row.blowdown.used_override
                    else " (assumes simply connected center)")
            lines.append(f"    center quotient {row.blowdown.center_quotient}{note}"
                         f" | exceptional IH {row.blowdown.exceptional_ih}"
                         f" | B_R = {row.blowdown_poly}")
    lines.append("")
    lines.append(f"blow-up quotient    {result.blowup}")
    lines.append(f"intersection series {result.intersection}")
    top = max(result.blowup.degree, result.intersection.degree, 0)
    degs = list(range(0, top + 1, 2))
    width = max(len(str(int(result.blowup.coeff(i)))) for i in degs) + 1
    lines.append("")
    lines.append("Betti table (even degrees)")
    lines.append("  i        " + "".join(str(i).rjust(width) for i in degs))
    lines.append("  IH^i     " + "".join(
        str(int(result.intersection.coeff(i))).rjust(width) for i in degs))
    lines.append("  blow-up  " + "".join(
        str(int(result.blowup.coeff(i))).rjust(width) for i in degs))
    lines.append("")
    lines.append("ordinary Betti numbers")
    lines.append("  H^i(X//G), i > n+2:  "
                 + " ".join(f"b{i}={b}" for i, b in result.betti.quotient_high))
    lines.append("  H^i(X^s/G), i < n-2: "
                 + " ".join(f"b{i}={b}" for i, b in result.betti.stable_low))
    return "\n".join(lines) + "\n"


def result_to_dict(result: PipelineResult, mod_t: Optional[int]) -> dict:
    s = result.scenario
    semi = result.semistable.reduce()
    data = {
        "scenario": {
            "torus_rank": s.group.torus_rank,
            "finite_order": s.group.finite_order,
            "projective_dimension": s.projective_dimension,
        },
        "strata": [
            {
                "beta": [str(c) for c in row.datum.beta],
                "n_beta": row.datum.n_beta,
                "codim": row.datum.codim,
                "orbit_size": row.datum.orbit_size,
                "stabilizer_order": row.datum.stabilizer.finite_order,
                "series": str(row.stratum_series),
            }
            for row in result.strata
        ],
        "semistable": str(semi),
        "strictly_semistable": result.strictly_semistable,
        "loci": [
            {
                "subtorus_rank": row.locus.subtorus_rank,
                "direction": list(row.locus.direction) if row.locus.direction else None,
                "normal_rank": row.locus.normal_rank,
                "correction": str(row.correction),
                "center_quotient": _poly_coeff_ints(row.blowdown.center_quotient),
                "used_override": row.blowdown.used_override,
                "simply_connected_assumed": row.blowdown.simply_connected_assumed,
                "exceptional_ih": _poly_coeff_ints(row.blowdown.exceptional_ih),
                "blowdown": _poly_coeff_ints(row.blowdown_poly),
            }
            for row in result.loci
        ],
        "blowup": _poly_coeff_ints(result.blowup),
        "intersection": _poly_coeff_ints(result.intersection),
        "betti": {
            "quotient_dimension": result.betti.quotient_dim,
            "quotient_high": [list(x) for x in result.betti.quotient_high],
            "stable_low": [list(x) for x in result.betti.stable_low],
        },
    }
    if mod_t is not None:
        data["semistable_mod_t"] = {
            "order": mod_t,
            "coefficients": _poly_coeff_ints(result.semistable.truncate(mod_t - 1)),
        }
    return data


def render_json(result: PipelineResult, mod_t: Optional[int]) -> str:
    return json.dumps(result_to_dict(result, mod_t), indent=2, sort_keys=True) + "\n"


def render_csv(result: PipelineResult, mod_t: Optional[int]) -> str:
    """Flat degree/coefficient table for the two final polynomials."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", "degree", "coefficient"])
    for name, poly in (("blowup", result.blowup), ("intersection", result.intersection)):
        for d, c in poly.terms:
            writer.writerow([name, d, int(c) if c.denominator == 1 else str(c)])
    return buf.getvalue()


RENDERERS = {
    "table": render_table,
    "json": render_json,
    "csv": render_csv,
}


def emit_report(result: PipelineResult, fmt: str = "table",
                mod_t: Optional[int] = None) -> str:
    """Render a pipeline result in one of the supported formats."""
    if fmt not in RENDERERS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {sorted(RENDERERS)}")
    return RENDERERS[fmt](result, mod_t)
