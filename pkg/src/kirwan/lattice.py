"""Rational lattice vectors, finite integer matrix groups, Molien series.

The acting group is always a split extension T x| F of an algebraic torus T
(rank 0, 1 or 2) by a finite group F of integer matrices acting on the
cocharacter lattice of T.  This module provides

  * exact vector/matrix arithmetic over Fraction,
  * closure/validation of finite matrix groups,
  * the closest point to the origin of a convex hull of rational points
    (the combinatorial heart of the HKKN stratification),
  * orbits, stabilizers and line normalizers inside F,
  * the Molien series of F acting on H^*(BT) = Q[t] with generators in
    degree 2, returned as an exact RationalSeries.

All matrices here act on weight/cocharacter space; the groups arising in
practice are signed permutation groups, which preserve the standard dot
product.  Invariance of each scenario under its finite group is validated
at construction time, so non-orthogonal input is rejected early.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Tuple

from .series import Polynomial, RationalSeries, exact_divide

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class NotClosed(ValueError):
    """A finite group closure failed or exceeded the element bound."""


def vec(*coords) -> Vector:
    return tuple(Fraction(c) for c in coords)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def norm_squared(v: Vector) -> Fraction:
    return dot(v, v)


def is_zero_vector(v: Vector) -> bool:
    return all(c == 0 for c in v)


def identity_matrix(rank: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((Fraction(m[i][j]) * v[j] for j in range(len(v))), Fraction(0))
                 for i in range(len(m)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def det2(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def cross2(u: Vector, v: Vector) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def primitive_direction(v: Vector) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector with
    its first nonzero coordinate positive (canonical line representative)."""
    if is_zero_vector(v):
        raise ValueError("zero vector has no direction")
    denom = math.lcm(*(c.denominator for c in v))
    ints = [int(c * denom) for c in v]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    for c in ints:
        if c != 0:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """A finite group of invertible integer matrices of a fixed rank."""

    rank: int
    elements: frozenset[Matrix]

    def __post_init__(self):
        ident = identity_matrix(self.rank)
        if ident not in self.elements:
            raise NotClosed("identity matrix missing")
        for m in self.elements:
            if len(m) != self.rank or any(len(row) != self.rank for row in m):
                raise NotClosed(f"matrix {m} has wrong shape for rank {self.rank}")
        for a in self.elements:
            for b in self.elements:
                if mat_mul(a, b) not in self.elements:
                    raise NotClosed(f"product of {a} and {b} escapes the group")

    @staticmethod
    def trivial(rank: int) -> "FiniteMatrixGroup":
        return FiniteMatrixGroup(rank, frozenset({identity_matrix(rank)}))

    @staticmethod
    def generate(rank: int, generators: Iterable[Matrix], bound: int = 10_000) -> "FiniteMatrixGroup":
        """Close a generating set under multiplication.

        Raises NotClosed if more than ``bound`` elements are produced, which
        catches infinite-order generators.
        """
        gens = [tuple(tuple(int(x) for x in row) for row in g) for g in generators]
        seen = {identity_matrix(rank)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = mat_mul(m, g)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
                        if len(seen) > bound:
                            raise NotClosed(f"group closure exceeded {bound} elements")
            frontier = nxt
        return FiniteMatrixGroup(rank, frozenset(seen))

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Matrix]:
        return sorted(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())


@dataclass(frozen=True)
class GroupSpec:
    """The reductive group T x| F: a torus rank plus a finite matrix part."""

    torus_rank: int
    finite_part: FiniteMatrixGroup

    def __post_init__(self):
        if self.torus_rank != self.finite_part.rank:
            raise ValueError("torus rank and finite matrix rank disagree")

    @staticmethod
    def torus(rank: int) -> "GroupSpec":
        return GroupSpec(rank, FiniteMatrixGroup.trivial(rank))

    @property
    def finite_order(self) -> int:
        return self.finite_part.order


# -- convex geometry -------------------------------------------------------

def origin_in_hull(points: Iterable[Vector]) -> bool:
    """Exact test whether 0 lies in the convex hull of rational points.

    By Caratheodory it suffices to test simplices of at most rank+1
    vertices; ranks here are 1 or 2 so segments and triangles are enough.
    """
    pts = sorted(set(points))
    if not pts:
        return False
    if any(is_zero_vector(p) for p in pts):
        return True
    rank = len(pts[0])
    for u, v in combinations(pts, 2):
        if rank == 1:
            if u[0] * v[0] < 0:
                return True
        else:
            if cross2(u, v) == 0 and dot(u, v) < 0:
                return True
    if rank == 2:
        for u, v, w in combinations(pts, 3):
            # solve a*u + b*v + c*w = 0, a+b+c = 1 by Cramer's rule
            d = (u[0] * (v[1] - w[1]) - v[0] * (u[1] - w[1]) + w[0] * (u[1] - v[1]))
            if d == 0:
                continue
            a = (v[0] * w[1] - v[1] * w[0]) / d
            b = -(u[0] * w[1] - u[1] * w[0]) / d
            c = 1 - a - b
            if a >= 0 and b >= 0 and c >= 0:
                return True
    return False


def closest_point_to_origin(points: Iterable[Vector]) -> Vector:
    """Closest point of conv(points) to the origin, exactly.

    In rank <= 2 the minimizer is the origin itself (if inside the hull), a
    vertex, or the orthogonal projection onto an edge.  Ties cannot occur
    for the distance (the hull is convex, the minimizer unique) but vertex
    enumeration is made deterministic anyway by a (norm, lex) key.
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("empty point set")
    rank = len(pts[0])
    if origin_in_hull(pts):
        return tuple(Fraction(0) for _ in range(rank))
    candidates = list(pts)
    for u, v in combinations(pts, 2):
        w = tuple(b - a for a, b in zip(u, v))
        den = dot(w, w)
        if den == 0:
            continue
        tpar = -dot(u, w) / den
        tpar = min(max(tpar, Fraction(0)), Fraction(1))
        candidates.append(tuple(a + tpar * b for a, b in zip(u, w)))
    return min(candidates, key=lambda p: (norm_squared(p), p))


# -- orbits, stabilizers, normalizers --------------------------------------

def orbit(v: Vector, group: FiniteMatrixGroup) -> frozenset[Vector]:
    return frozenset(mat_vec(m, v) for m in group.elements)


def canonical_orbit_representative(v: Vector, group: FiniteMatrixGroup) -> Vector:
    """Lexicographically largest element of the orbit of v."""
    return max(orbit(v, group))


def stabilizer_of_vector(spec: GroupSpec, v: Vector) -> GroupSpec:
    """Subgroup of G fixing the vector v (torus part is untouched)."""
    fixed = frozenset(m for m in spec.finite_part.elements if mat_vec(m, v) == v)
    return GroupSpec(spec.torus_rank, FiniteMatrixGroup(spec.torus_rank, fixed))


def line_normalizer(spec: GroupSpec, direction: Vector) -> GroupSpec:
    """Subgroup of G mapping the line through ``direction`` to itself."""
    if is_zero_vector(direction):
        raise ValueError("direction must be nonzero")
    if spec.torus_rank == 1:
        return spec
    kept = frozenset(m for m in spec.finite_part.elements
                     if cross2(mat_vec(m, direction), direction) == 0)
    return GroupSpec(spec.torus_rank, FiniteMatrixGroup(spec.torus_rank, kept))


def line_sign(m: Matrix, direction: Vector) -> int:
    """For m normalizing the line through ``direction``: +1 or -1."""
    image = mat_vec(m, direction)
    for a, b in zip(image, direction):
        if b != 0:
            s = a / b
            if s == 1:
                return 1
            if s == -1:
                return -1
            raise ValueError(f"{m} does not act by a sign on {direction}")
    raise ValueError("zero direction")


def induced_line_group(normalizer: FiniteMatrixGroup, direction: Vector) -> FiniteMatrixGroup:
    """Rank-1 group of signs induced on the line through ``direction``."""
    signs = {line_sign(m, direction) for m in normalizer.elements}
    return FiniteMatrixGroup(1, frozenset(((s,),) for s in signs))


def matrix_order(m: Matrix) -> int:
    ident = identity_matrix(len(m))
    cur, k = m, 1
    while cur != ident:
        cur = mat_mul(cur, m)
        k += 1
        if k > 10_000:
            raise NotClosed(f"matrix {m} has order > 10000")
    return k


# -- Molien series ----------------------------------------------------------

def _char_det_factor(m: Matrix) -> Polynomial:
    """det(I - t^2 m) as a polynomial in t, for rank <= 2."""
    rank = len(m)
    if rank == 0:
        return Polynomial.one()
    if rank == 1:
        return Polynomial.make({0: 1, 2: -m[0][0]})
    tr = m[0][0] + m[1][1]
    return Polynomial.make({0: 1, 2: -tr, 4: det2(m)})


def molien_series(spec: GroupSpec) -> RationalSeries:
    """Molien series of pi_0 acting on Sym(t^*), generators in degree 2.

    Averages 1/det(I - t^2 m) over the finite part by clearing every factor
    against (1 - t^(2L))^rank with L = lcm of element orders, which each
    det(I - t^2 m) divides exactly.  The result is reduce()d so familiar
    forms such as 1/((1-t^4)(1-t^8)) come out directly.
    """
    rank = spec.torus_rank
    if rank == 0:
        return RationalSeries.one()
    if rank > 2:
        raise ValueError("only ranks 0, 1, 2 are supported")
    order_lcm = 1
    for m in spec.finite_part:
        order_lcm = math.lcm(order_lcm, matrix_order(m))
    base = tuple([2 * order_lcm] * rank)
    from .series import expand_denominator
    base_poly = expand_denominator(base)
    total = Polynomial.zero()
    for m in spec.finite_part:
        total = total + exact_divide(base_poly, _char_det_factor(m))
    total = total * Fraction(1, spec.finite_order)
    return RationalSeries(total, base).reduce()
