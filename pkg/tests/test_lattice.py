"""Lattice geometry and finite groups, with brute-force oracles.

The Molien oracle counts invariant polynomials of each degree by taking the
trace of the symmetric-power action, monomial basis by monomial basis; the
closest-point oracle samples the convex hull on a dense rational
barycentric grid.
"""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kirwan.lattice import (
    FiniteMatrixGroup,
    GroupSpec,
    NotClosed,
    canonical_orbit_representative,
    closest_point_to_origin,
    dot,
    line_normalizer,
    mat_vec,
    molien_series,
    norm_squared,
    orbit,
    origin_in_hull,
    stabilizer_of_vector,
)

from conftest import ANTI, FLIP, IDENT2, NEG, RS, SWAP, V, dihedral8


class TestDot:
    def test_norm_of_vertex(self):
        assert dot(V(4, -4), V(4, -4)) == 32

    def test_hand_value(self):
        assert dot(V(2, -2), V(4, 0)) == 8

    def test_zero(self):
        assert dot(V(0, 0), V(7, -3)) == 0

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            dot(V(1), V(1, 2))


class TestClosestPoint:
    def test_edge_projection(self):
        assert closest_point_to_origin([V(4, 0), V(0, -4)]) == V(2, -2)

    def test_single_point(self):
        assert closest_point_to_origin([V(4, -4)]) == V(4, -4)

    def test_origin_inside(self):
        assert closest_point_to_origin([V(3, 1), V(0, 0), V(-5, 2)]) == V(0, 0)
        assert closest_point_to_origin([V(1, 0), V(-1, 1), V(-1, -1)]) == V(0, 0)

    def test_fractional_projection(self):
        # segment from (4,4) to (0,-4): nearest point has denominator 5
        assert closest_point_to_origin([V(4, 4), V(0, -4)]) == V(Fraction(8, 5),
                                                                 Fraction(-4, 5))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            closest_point_to_origin([])


def grid_oracle_ok(points, denominator_bound=8):
    """Check the closest point beats every barycentric grid sample.

    Scales the points to integers so the inner loop is pure integer
    arithmetic: a sample with barycentric denominator d satisfies
    |sample|^2 = |sum of chosen scaled points|^2 / (d*scale)^2.
    """
    best = norm_squared(closest_point_to_origin(points))
    pts = sorted(set(points))
    scale = math.lcm(*(c.denominator for p in pts for c in p))
    scaled = [tuple(int(c * scale) for c in p) for p in pts]
    for d in range(1, denominator_bound + 1):
        threshold = best * (d * scale) ** 2
        for comp in itertools.combinations_with_replacement(scaled, d):
            q = [sum(col) for col in zip(*comp)]
            if sum(x * x for x in q) < threshold:
                return False
    return True


def random_point_sets(count=200, seed=20260823):
    rng = random.Random(seed)
    sets = []
    for _ in range(count):
        size = rng.randint(1, 6)
        sets.append([V(Fraction(rng.randint(-8, 8), rng.choice([1, 2, 4])),
                       Fraction(rng.randint(-8, 8), rng.choice([1, 2, 4])))
                     for _ in range(size)])
    return sets


def test_closest_point_beats_grid_oracle_on_200_random_sets():
    for points in random_point_sets():
        assert grid_oracle_ok(points)


class TestGroups:
    def test_d8_closure(self, d8):
        assert d8.order == 8
        assert IDENT2 in d8.elements
        assert ANTI in d8.elements

    def test_closure_bound(self):
        # infinite-order generator must be rejected
        with pytest.raises(NotClosed):
            FiniteMatrixGroup.generate(2, [((1, 1), (0, 1))], bound=100)

    def test_not_closed_rejected(self):
        with pytest.raises(NotClosed):
            FiniteMatrixGroup(2, frozenset({IDENT2, SWAP, FLIP}))

    def test_orbit_of_vertex(self, d8):
        got = orbit(V(4, -4), d8)
        assert got == {V(4, -4), V(-4, 4), V(4, 4), V(-4, -4)}

    def test_orbit_of_origin(self, d8):
        assert orbit(V(0, 0), d8) == {V(0, 0)}

    def test_orbit_of_generic_vector(self, d8):
        assert len(orbit(V(Fraction(6, 5), Fraction(-2, 5)), d8)) == 8

    def test_stabilizers(self, d8):
        spec = GroupSpec(2, d8)
        anti_stab = stabilizer_of_vector(spec, V(4, -4))
        assert anti_stab.finite_part.elements == {IDENT2, ((0, -1), (-1, 0))}
        axis_stab = stabilizer_of_vector(spec, V(4, 0))
        assert axis_stab.finite_part.elements == {IDENT2, ((1, 0), (0, -1))}
        assert stabilizer_of_vector(spec, V(0, 0)).finite_order == 8

    def test_line_normalizers(self, d8):
        spec = GroupSpec(2, d8)
        diag = line_normalizer(spec, V(1, 1))
        assert diag.finite_part.elements == {IDENT2, SWAP, NEG, ANTI}
        axis = line_normalizer(spec, V(0, 1))
        assert axis.finite_part.elements == {
            IDENT2, NEG, ((-1, 0), (0, 1)), ((1, 0), (0, -1))}

    def test_canonical_representative(self, d8):
        assert canonical_orbit_representative(V(2, -2), d8) == V(2, 2)
        assert canonical_orbit_representative(V(0, -4), d8) == \
            canonical_orbit_representative(V(4, 0), d8)
        rep = canonical_orbit_representative(V(Fraction(6, 5), Fraction(2, 5)), d8)
        assert canonical_orbit_representative(rep, d8) == rep


# -- Molien oracle ------------------------------------------------------------

def _invariant_dimension(group: FiniteMatrixGroup, degree: int) -> Fraction:
    """Trace of the averaging projector on degree-``degree`` polynomials."""
    rank = group.rank
    monos = [m for m in itertools.product(range(degree + 1), repeat=rank)
             if sum(m) == degree]
    total = Fraction(0)
    for mat in group.elements:
        for mono in monos:
            # expand prod_i (row_i . x)^(e_i), read off the mono coefficient
            expansion = {(0,) * rank: Fraction(1)}
            for i, e in enumerate(mono):
                row = mat[i]
                for _ in range(e):
                    nxt: dict = {}
                    for exp, c in expansion.items():
                        for j in range(rank):
                            if row[j] == 0:
                                continue
                            key = tuple(x + (1 if k == j else 0)
                                        for k, x in enumerate(exp))
                            nxt[key] = nxt.get(key, Fraction(0)) + c * row[j]
                    expansion = nxt
            total += expansion.get(mono, Fraction(0))
    return total / group.order


def _check_molien_against_oracle(spec: GroupSpec, top_degree: int = 24):
    got = molien_series(spec).truncate(top_degree)
    for m in range(top_degree // 2 + 1):
        want = _invariant_dimension(spec.finite_part, m)
        assert got.coeff(2 * m) == want, (spec, m)


def test_molien_trivial_rank2():
    assert molien_series(GroupSpec.torus(2)) == RS({0: 1}, (2, 2))


def test_molien_d8(d8):
    assert molien_series(GroupSpec(2, d8)) == RS({0: 1}, (4, 8))


def test_molien_antidiagonal_pair():
    g = FiniteMatrixGroup.generate(2, [ANTI])
    assert molien_series(GroupSpec(2, g)) == RS({0: 1}, (2, 4))


def test_molien_rank0():
    assert molien_series(GroupSpec.torus(0)) == RS({0: 1}, ())


def test_molien_rank1_sign():
    g = FiniteMatrixGroup.generate(1, [((-1,),)])
    assert molien_series(GroupSpec(1, g)) == RS({0: 1}, (4,))


MOLIEN_SPECS = [
    GroupSpec.torus(2),
    GroupSpec(2, dihedral8()),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [ANTI])),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [SWAP])),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [SWAP, NEG])),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [FLIP])),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [FLIP, ((1, 0), (0, -1))])),
    GroupSpec(2, FiniteMatrixGroup.generate(2, [NEG])),
    GroupSpec(1, FiniteMatrixGroup.generate(1, [((-1,),)])),
    GroupSpec.torus(1),
]


@pytest.mark.parametrize("spec", MOLIEN_SPECS,
                         ids=lambda s: f"rank{s.torus_rank}-order{s.finite_order}")
def test_molien_matches_invariant_count_oracle(spec):
    _check_molien_against_oracle(spec)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(sorted(dihedral8().elements)), min_size=1))
def test_orbit_sizes_divide_group_order(gens):
    group = FiniteMatrixGroup.generate(2, sorted(gens))
    assert 8 % group.order == 0
    for v in [V(4, -4), V(2, 0), V(Fraction(6, 5), Fraction(2, 5)), V(0, 0)]:
        assert group.order % len(orbit(v, group)) == 0


def test_origin_in_hull_cases():
    assert origin_in_hull([V(1, 0), V(-1, 1), V(-1, -1)])
    assert origin_in_hull([V(2, 2), V(-1, -1)])
    assert not origin_in_hull([V(1, 0), V(0, 1)])
    assert not origin_in_hull([V(1), V(3)])
    assert origin_in_hull([V(-1), V(3)])
