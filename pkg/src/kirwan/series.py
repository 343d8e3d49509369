"""Exact arithmetic for Poincare series as rational functions in t.

Every series the engine manipulates has the shape

    numerator / prod_d (1 - t^d)

with an exact rational numerator (a sparse polynomial over Fraction) and a
multiset of positive denominator exponents d.  Nothing is ever evaluated in
floating point: equality of series is cross-multiplied polynomial equality,
so it does not depend on how a series happens to be represented.

  Polynomial      sparse univariate polynomial, degree -> Fraction
  RationalSeries  Polynomial numerator over a tuple of exponents d

Truncation (power-series expansion mod t^(order+1)) and extraction of an
exact polynomial value (long division with zero remainder) are the two ways
a RationalSeries is turned back into a Polynomial.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]


class NotPolynomial(ArithmeticError):
    """A series expected to be a polynomial left a nonzero remainder."""


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial in t with exact rational coefficients.

    ``terms`` is sorted by degree and never stores zero coefficients, so
    structural equality of the dataclass is polynomial equality.
    """

    terms: Tuple[Tuple[int, Fraction], ...] = ()

    @staticmethod
    def make(coeffs: Mapping[int, Scalar]) -> "Polynomial":
        items = []
        for deg, c in coeffs.items():
            c = Fraction(c)
            if deg < 0:
                raise ValueError(f"negative degree {deg}")
            if c != 0:
                items.append((deg, c))
        return Polynomial(tuple(sorted(items)))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial(((0, Fraction(1)),))

    @staticmethod
    def monomial(deg: int, coeff: Scalar = 1) -> "Polynomial":
        return Polynomial.make({deg: coeff})

    @staticmethod
    def from_coefficients(coeffs: Iterable[Scalar]) -> "Polynomial":
        """Build from a dense list [c0, c1, c2, ...]."""
        return Polynomial.make({i: c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree, with the convention deg(0) = -1."""
        return self.terms[-1][0] if self.terms else -1

    def coeff(self, deg: int) -> Fraction:
        for d, c in self.terms:
            if d == deg:
                return c
        return Fraction(0)

    def coefficients(self, upto: int | None = None) -> list[Fraction]:
        """Dense coefficient list [c0, ..., c_upto] (default: up to degree)."""
        top = self.degree if upto is None else upto
        out = [Fraction(0)] * (max(top, -1) + 1)
        for d, c in self.terms:
            if d <= top:
                out[d] = c
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for d, c in other.terms:
            out[d] = out.get(d, Fraction(0)) + c
        return Polynomial.make(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple((d, -c) for d, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial.make({d: c * other for d, c in self.terms})
        out: dict[int, Fraction] = {}
        for da, ca in self.terms:
            for db, cb in other.terms:
                d = da + db
                out[d] = out.get(d, Fraction(0)) + ca * cb
        return Polynomial.make(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Polynomial":
        """Multiply by t^k."""
        return Polynomial(tuple((d + k, c) for d, c in self.terms))

    def truncated(self, order: int) -> "Polynomial":
        """Drop all terms of degree > order."""
        return Polynomial(tuple((d, c) for d, c in self.terms if d <= order))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.terms:
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def divmod_polynomial(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Exact long division: num = q*den + r with deg r < deg den."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    lead_deg, lead_coeff = den.terms[-1]
    q: dict[int, Fraction] = {}
    rem = num
    while not rem.is_zero and rem.degree >= lead_deg:
        d = rem.degree - lead_deg
        c = rem.terms[-1][1] / lead_coeff
        q[d] = q.get(d, Fraction(0)) + c
        rem = rem - den * Polynomial.monomial(d, c)
    return Polynomial.make(q), rem


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """Divide exactly; raise NotPolynomial on a nonzero remainder."""
    q, r = divmod_polynomial(num, den)
    if not r.is_zero:
        raise NotPolynomial(f"remainder {r} when dividing by {den}")
    return q


def geometric_range(lo: int, hi: int) -> Polynomial:
    """The polynomial t^(2*lo) + t^(2*lo+2) + ... + t^(2*hi).

    Requires 1 <= lo <= hi; this is the factor contributed by the positive
    part of an exceptional projective bundle.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"geometric_range requires 1 <= lo <= hi, got {lo}, {hi}")
    return Polynomial.make({2 * k: 1 for k in range(lo, hi + 1)})


def projective_poincare(dim: int) -> Polynomial:
    """Poincare polynomial of complex projective space of dimension dim."""
    if dim < 0:
        raise ValueError(f"negative dimension {dim}")
    return Polynomial.make({2 * k: 1 for k in range(dim + 1)})


def is_palindromic(p: Polynomial, top: int) -> bool:
    """True iff coefficients satisfy c_k = c_(top-k) for 0 <= k <= top.

    ``top`` is the ambient degree of the duality; p must have degree <= top.
    """
    if p.degree > top:
        raise ValueError(f"degree {p.degree} exceeds top {top}")
    return all(p.coeff(k) == p.coeff(top - k) for k in range(top + 1))


@functools.lru_cache(maxsize=None)
def expand_denominator(den: Tuple[int, ...]) -> Polynomial:
    """Expand prod_d (1 - t^d) for a sorted tuple of exponents."""
    out = Polynomial.one()
    for d in den:
        out = out * Polynomial.make({0: 1, d: -1})
    return out


def _den_counts(den: Tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in den:
        out[d] = out.get(d, 0) + 1
    return out


def _counts_to_tuple(counts: Mapping[int, int]) -> Tuple[int, ...]:
    out: list[int] = []
    for d in sorted(counts):
        out.extend([d] * counts[d])
    return tuple(out)


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


@dataclass(frozen=True, eq=False)
class RationalSeries:
    """numerator / prod_d (1 - t^d), with d ranging over ``denominator``.

    Denominator exponents must be positive; the tuple is kept sorted.
    Addition uses the least common multiset of denominator factors so that
    repeated sums do not blow up the representation.
    """

    numerator: Polynomial
    denominator: Tuple[int, ...] = ()

    __hash__ = None  # representation-dependent; equality is semantic

    def __post_init__(self):
        if any(d <= 0 for d in self.denominator):
            raise ValueError(f"denominator exponents must be positive: {self.denominator}")
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))

    @staticmethod
    def from_polynomial(p: Polynomial) -> "RationalSeries":
        return RationalSeries(p, ())

    @staticmethod
    def zero() -> "RationalSeries":
        return RationalSeries(Polynomial.zero(), ())

    @staticmethod
    def one() -> "RationalSeries":
        return RationalSeries(Polynomial.one(), ())

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        mine, theirs = _den_counts(self.denominator), _den_counts(other.denominator)
        union = {d: max(mine.get(d, 0), theirs.get(d, 0)) for d in set(mine) | set(theirs)}
        pad_self = _counts_to_tuple({d: union[d] - mine.get(d, 0) for d in union})
        pad_other = _counts_to_tuple({d: union[d] - theirs.get(d, 0) for d in union})
        num = (self.numerator * expand_denominator(pad_self)
               + other.numerator * expand_denominator(pad_other))
        return RationalSeries(num, _counts_to_tuple(union))

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __mul__(self, other: Union["RationalSeries", Polynomial, Scalar]) -> "RationalSeries":
        if isinstance(other, (int, Fraction)):
            return RationalSeries(self.numerator * other, self.denominator)
        if isinstance(other, Polynomial):
            return RationalSeries(self.numerator * other, self.denominator)
        return RationalSeries(self.numerator * other.numerator,
                              self.denominator + other.denominator)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            other = RationalSeries.from_polynomial(other)
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (self.numerator * expand_denominator(other.denominator)
                == other.numerator * expand_denominator(self.denominator))

    def truncate(self, order: int) -> Polynomial:
        """Power-series expansion modulo t^(order+1).

        Each factor 1/(1 - t^d) is applied by the recurrence
        g_k = f_k + g_(k-d), one linear pass per factor.
        """
        if order < 0:
            raise ValueError(f"negative truncation order {order}")
        dense = self.numerator.coefficients(order)
        dense += [Fraction(0)] * (order + 1 - len(dense))
        for d in self.denominator:
            for k in range(d, order + 1):
                dense[k] += dense[k - d]
        return Polynomial.from_coefficients(dense)

    def exact_polynomial(self) -> Polynomial:
        """The polynomial this series equals; NotPolynomial if it is not one."""
        return exact_divide(self.numerator, expand_denominator(self.denominator))

    def cancel(self) -> "RationalSeries":
        """Cancel denominator factors (1 - t^d) that divide the numerator."""
        num = self.numerator
        kept: list[int] = []
        for d in self.denominator:
            q, r = divmod_polynomial(num, Polynomial.make({0: 1, d: -1}))
            if r.is_zero and not num.is_zero:
                num = q
            else:
                kept.append(d)
        return RationalSeries(num, tuple(kept))

    def reduce(self) -> "RationalSeries":
        """Cancel factors and split (1 - t^L) into (1 - t^d) when possible.

        If the numerator is divisible by the cyclotomic-like cofactor
        (1 - t^L)/(1 - t^d) for a proper divisor d of L, the factor L is
        replaced by d.  Gives a small canonical-looking form for display.
        """
        cur = self.cancel()
        changed = True
        while changed:
            changed = False
            counts = _den_counts(cur.denominator)
            for L in sorted(counts):
                for d in _proper_divisors(L):
                    cof = exact_divide(Polynomial.make({0: 1, L: -1}),
                                       Polynomial.make({0: 1, d: -1}))
                    q, r = divmod_polynomial(cur.numerator, cof)
                    if r.is_zero and not cur.numerator.is_zero:
                        counts[L] -= 1
                        if counts[L] == 0:
                            del counts[L]
                        counts[d] = counts.get(d, 0) + 1
                        cur = RationalSeries(q, _counts_to_tuple(counts)).cancel()
                        changed = True
                        break
                if changed:
                    break
        return cur

    def __str__(self) -> str:
        if not self.denominator:
            return str(self.numerator)
        factors = "".join(f"(1-t^{d})" for d in self.denominator)
        return f"({self.numerator}) / ({factors})"
