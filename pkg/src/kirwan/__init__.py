"""Exact Poincare series of GIT quotients for torus x| finite-group actions.

The pipeline, for a linear action of T x| F on P(V) given by its weight
diagram:

  stratification   HKKN unstable strata, equivariant series of X^ss
  blowup           Kirwan partial desingularization X~ // G
  blowdown         decomposition-theorem corrections, IP_t(X // G)
  scenario         configuration, builtin scenarios, JSON i/o
  series, lattice  exact rational-function and lattice arithmetic
"""

from .blowdown import (
    BettiReport,
    NeedsOverride,
    intersection_series,
    ordinary_betti_report,
)
from .blowup import FiberNotClosed, enumerate_polystable_loci, kirwan_blowup_series
from .lattice import FiniteMatrixGroup, GroupSpec, NotClosed, molien_series
from .scenario import (
    CenterOverride,
    NotInvariant,
    ParseError,
    Scenario,
    WeightEntry,
    dump_scenario,
    enriques_scenario,
    load_scenario,
)
from .series import NotPolynomial, Polynomial, RationalSeries
from .stratification import (
    enumerate_beta,
    has_strictly_semistable,
    semistable_series,
)

__all__ = [
    "BettiReport",
    "CenterOverride",
    "FiberNotClosed",
    "FiniteMatrixGroup",
    "GroupSpec",
    "NeedsOverride",
    "NotClosed",
    "NotInvariant",
    "NotPolynomial",
    "ParseError",
    "Polynomial",
    "RationalSeries",
    "Scenario",
    "WeightEntry",
    "dump_scenario",
    "enriques_scenario",
    "enumerate_beta",
    "enumerate_polystable_loci",
    "has_strictly_semistable",
    "intersection_series",
    "kirwan_blowup_series",
    "load_scenario",
    "molien_series",
    "ordinary_betti_report",
    "semistable_series",
]

__version__ = "0.1.0"
