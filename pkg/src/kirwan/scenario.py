"""Scenarios: a weight diagram plus an acting group, with (de)serialization.

A scenario packages everything the pipeline needs about one linear action:
the multiset of torus weights on the ambient projective space (with
multiplicities and optional labels), the group T x| F, and any configured
center-quotient overrides.  Scenarios are immutable and hashable via a
canonical key, which is what the memoization caches are keyed on.

JSON schema (all rationals are ints or "p/q" strings):

    {
      "torus_rank": 2,
      "finite_generators": [[[0,1],[1,0]], [[-1,0],[0,1]]],
      "weights": [{"vector": [4, 4], "multiplicity": 1, "label": "x0^4"}, ...],
      "overrides": [{"subtorus_rank": 1, "direction": [0, 1],
                     "polynomial": [1, 0, 1]}],
      "truncation_order": 24
    }

``overrides`` and ``truncation_order`` are optional.  An override's
polynomial is the dense coefficient list of the configured Betti polynomial
of the corresponding center quotient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Optional, Tuple

from .lattice import (
    FiniteMatrixGroup,
    GroupSpec,
    Matrix,
    NotClosed,
    Vector,
    is_zero_vector,
    mat_vec,
    primitive_direction,
)
from .series import Polynomial


class ParseError(ValueError):
    """Malformed scenario configuration."""


class NotInvariant(ValueError):
    """The finite group does not permute the weight multiset."""


@dataclass(frozen=True)
class WeightEntry:
    """One weight of the representation, with multiplicity and label."""

    vector: Vector
    multiplicity: int = 1
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(Fraction(c) for c in self.vector))
        if self.multiplicity < 1:
            raise ParseError(f"multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True)
class CenterOverride:
    """Configured Betti polynomial for one blow-up center quotient."""

    subtorus_rank: int
    direction: Optional[Tuple[int, ...]]
    polynomial: Polynomial


@dataclass(frozen=True)
class Scenario:
    """An action of T x| F on P(V), described by its weight diagram."""

    diagram: Tuple[WeightEntry, ...]
    group: GroupSpec
    overrides: Tuple[CenterOverride, ...] = ()

    def __post_init__(self):
        if not self.diagram:
            raise ParseError("empty weight diagram")
        rank = self.group.torus_rank
        for entry in self.diagram:
            if len(entry.vector) != rank:
                raise ParseError(
                    f"weight {entry.vector} has rank {len(entry.vector)}, expected {rank}")
        counts = self.vector_multiplicities()
        for m in self.group.finite_part.elements:
            mapped: dict[Vector, int] = {}
            for v, k in counts.items():
                image = mat_vec(m, v)
                mapped[image] = mapped.get(image, 0) + k
            if mapped != counts:
                raise NotInvariant(f"matrix {m} does not permute the weight multiset")

    def vector_multiplicities(self) -> dict[Vector, int]:
        out: dict[Vector, int] = {}
        for entry in self.diagram:
            out[entry.vector] = out.get(entry.vector, 0) + entry.multiplicity
        return out

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.diagram)

    @property
    def projective_dimension(self) -> int:
        return self.total_multiplicity - 1

    @property
    def zero_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.diagram if is_zero_vector(e.vector))

    def nonzero_vectors(self) -> list[Vector]:
        return sorted(v for v in self.vector_multiplicities() if not is_zero_vector(v))

    def canonical_key(self) -> tuple:
        """Hashable key ignoring labels, entry order and overrides."""
        counts = self.vector_multiplicities()
        return (
            self.group.torus_rank,
            tuple(self.group.finite_part.sorted_elements()),
            tuple(sorted(counts.items())),
        )

    def find_override(self, subtorus_rank: int, direction: Optional[Vector]) -> Optional[Polynomial]:
        """Look up a configured override, matching directions up to the
        finite group action on lines (the locus representative is an
        arbitrary orbit choice)."""
        for ov in self.overrides:
            if ov.subtorus_rank != subtorus_rank:
                continue
            if direction is None or ov.direction is None:
                if direction is None and ov.direction is None:
                    return ov.polynomial
                continue
            target = primitive_direction(tuple(Fraction(c) for c in ov.direction))
            lines = {primitive_direction(mat_vec(m, direction))
                     for m in self.group.finite_part.elements}
            if target in lines:
                return ov.polynomial
        return None


# -- parsing ----------------------------------------------------------------

def _parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {value!r}: {exc}") from exc
    raise ParseError(f"not a rational: {value!r}")


def _parse_matrix(rows: Any, rank: int) -> Matrix:
    try:
        m = tuple(tuple(int(x) for x in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix {rows!r}: {exc}") from exc
    if len(m) != rank or any(len(row) != rank for row in m):
        raise ParseError(f"matrix {rows!r} is not {rank}x{rank}")
    return m


def scenario_from_dict(data: dict) -> Scenario:
    """Build a Scenario from the JSON schema; raises ParseError, NotClosed
    or NotInvariant with a message naming the offending field."""
    if not isinstance(data, dict):
        raise ParseError("scenario config must be a JSON object")
    try:
        rank = int(data["torus_rank"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or bad torus_rank: {exc}") from exc
    if rank < 0 or rank > 2:
        raise ParseError(f"torus_rank must be 0, 1 or 2, got {rank}")
    gens = [_parse_matrix(g, rank) for g in data.get("finite_generators", [])]
    finite = FiniteMatrixGroup.generate(rank, gens)
    weights_field = data.get("weights")
    if not isinstance(weights_field, list) or not weights_field:
        raise ParseError("weights must be a nonempty list")
    entries = []
    for item in weights_field:
        if not isinstance(item, dict) or "vector" not in item:
            raise ParseError(f"bad weight entry {item!r}")
        vector = tuple(_parse_rational(c) for c in item["vector"])
        mult = int(item.get("multiplicity", 1))
        label = str(item.get("label", ""))
        entries.append(WeightEntry(vector, mult, label))
    overrides = []
    for item in data.get("overrides", []):
        if not isinstance(item, dict):
            raise ParseError(f"bad override entry {item!r}")
        try:
            sub_rank = int(item["subtorus_rank"])
            direction = item.get("direction")
            if direction is not None:
                direction = tuple(int(c) for c in direction)
            poly = Polynomial.from_coefficients(
                [_parse_rational(c) for c in item["polynomial"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad override entry {item!r}: {exc}") from exc
        overrides.append(CenterOverride(sub_rank, direction, poly))
    return Scenario(tuple(entries), GroupSpec(rank, finite), tuple(overrides))


def scenario_to_dict(s: Scenario) -> dict:
    """Serialize; finite generators are the full sorted element list, which
    round-trips exactly."""
    def enc(q: Fraction):
        return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    out: dict[str, Any] = {
        "torus_rank": s.group.torus_rank,
        "finite_generators": [[list(row) for row in m]
                              for m in s.group.finite_part.sorted_elements()],
        "weights": [{"vector": [enc(c) for c in e.vector],
                     "multiplicity": e.multiplicity,
                     "label": e.label} for e in s.diagram],
    }
    if s.overrides:
        out["overrides"] = [
            {"subtorus_rank": ov.subtorus_rank,
             **({"direction": list(ov.direction)} if ov.direction is not None else
                {"direction": None}),
             "polynomial": [enc(c) for c in ov.polynomial.coefficients()]}
            for ov in s.overrides]
    return out


def load_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(data)


def dump_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2)


# -- builtin scenario --------------------------------------------------------

def enriques_scenario() -> Scenario:
    """The degree (4,4) bidegree-invariant scenario on P^12.

    Weights are (4-2i, 4-2j) for 0 <= i, j <= 4 with i+j even, labeled by
    the monomials x0^(4-i) x1^i y0^(4-j) y1^j.  The group is (C*)^2 extended
    by the order-8 group generated by coordinate swap and a sign flip.  The
    rank-1 center with direction (0, 1) carries the configured quotient
    Betti polynomial 1 + t^2 (an elliptic-curve quotient, P^1).
    """
    swap = ((0, 1), (1, 0))
    flip = ((-1, 0), (0, 1))
    finite = FiniteMatrixGroup.generate(2, [swap, flip])
    entries = []
    for i in range(5):
        for j in range(5):
            if (i + j) % 2 != 0:
                continue
            label = f"x0^{4 - i} x1^{i} y0^{4 - j} y1^{j}"
            entries.append(WeightEntry(vec2(4 - 2 * i, 4 - 2 * j), 1, label))
    override = CenterOverride(1, (0, 1), Polynomial.make({0: 1, 2: 1}))
    return Scenario(tuple(entries), GroupSpec(2, finite), (override,))


def vec2(a, b) -> Vector:
    return (Fraction(a), Fraction(b))
