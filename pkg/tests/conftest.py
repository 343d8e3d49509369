"""Shared fixtures and small constructors used across the test suite."""

from fractions import Fraction

import pytest

from kirwan.lattice import FiniteMatrixGroup, GroupSpec
from kirwan.scenario import Scenario, WeightEntry, enriques_scenario
from kirwan.series import Polynomial, RationalSeries

SWAP = ((0, 1), (1, 0))
FLIP = ((-1, 0), (0, 1))
NEG = ((-1, 0), (0, -1))
ANTI = ((0, -1), (-1, 0))
IDENT2 = ((1, 0), (0, 1))


def P(coeffs: dict) -> Polynomial:
    """Polynomial from {degree: coefficient}."""
    return Polynomial.make(coeffs)


def RS(coeffs: dict, dens: tuple = ()) -> RationalSeries:
    """RationalSeries from a numerator dict and denominator exponents."""
    return RationalSeries(Polynomial.make(coeffs), tuple(dens))


def V(*coords):
    return tuple(Fraction(c) for c in coords)


def dihedral8() -> FiniteMatrixGroup:
    return FiniteMatrixGroup.generate(2, [SWAP, FLIP])


def scenario2(weights, generators=(), overrides=()) -> Scenario:
    """Rank-2 scenario from a list of (vector, multiplicity) or vectors."""
    entries = []
    for w in weights:
        if isinstance(w[0], tuple):
            entries.append(WeightEntry(V(*w[0]), w[1]))
        else:
            entries.append(WeightEntry(V(*w)))
    group = GroupSpec(2, FiniteMatrixGroup.generate(2, generators))
    return Scenario(tuple(entries), group, tuple(overrides))


@pytest.fixture(scope="session")
def enriques() -> Scenario:
    return enriques_scenario()


@pytest.fixture(scope="session")
def d8() -> FiniteMatrixGroup:
    return dihedral8()
