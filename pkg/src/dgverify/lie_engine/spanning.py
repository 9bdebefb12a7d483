"""Descending invariant fields to the surface and the tangent-span check.

An invariant tangent field acts on the invariant ring; recording its
action on the generators y, z, x0..xb gives the descended field on the
surface.  Evaluating those images at points of the threefold and row
reducing (fraction-free, over the integers) measures how much of the
two-dimensional tangent space the descended fields span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from ..derivation import Derivation
from ..genring import generator_exponents
from ..polyring import Polynomial, QuotientPolynomial, SurfaceParameters
from ..torus import GeneratorTable, is_invariant_field, weight_of_monomial


@dataclass(frozen=True)
class SurfacePoint:
    """An exact rational point of the threefold."""

    coords: tuple[Fraction, Fraction, Fraction, Fraction]
    params: SurfaceParameters

    def __post_init__(self) -> None:
        a1, a2, a3, a4 = self.coords
        if a1 * a4 - a2 ** self.params.b * a3 != 1:
            raise ValueError(f"point {self.coords} does not satisfy the relation")

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class DescendedField:
    """Action of an invariant tangent field on the generator lifts."""

    images: tuple[QuotientPolynomial, ...]
    params: SurfaceParameters

    @property
    def names(self) -> list[str]:
        return GeneratorTable(self.params).names

    @property
    def is_nontrivial(self) -> bool:
        return any(not img.is_zero for img in self.images)

    def row_at(self, p: SurfacePoint) -> list[Fraction]:
        return [img.value.evaluate(p.coords) for img in self.images]


def descend(x: Derivation) -> DescendedField:
    """Record the action of a tangent invariant field on the generators."""
    params = x.params
    if not x.is_tangent():
        raise ValueError("field is not tangent to the threefold")
    if not is_invariant_field(x):
        raise ValueError("field is not torus-invariant")
    images = []
    for _, expo in GeneratorTable(params).entries:
        img = x.apply(Polynomial.monomial(1, expo))
        if any(weight_of_monomial(e, params) != 0 for e, _ in img.terms()):
            raise AssertionError("image of an invariant generator is not invariant")
        images.append(QuotientPolynomial(img, params))
    return DescendedField(tuple(images), params)


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination over the integers."""
    if not rows:
        return 0
    # clear denominators row by row
    m: list[list[int]] = []
    for row in rows:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        m.append([int(v * denom) for v in row])
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev_pivot = 1
    for col in range(n_cols):
        pivot_row = next(
            (r for r in range(rank, n_rows) if m[r][col] != 0), None
        )
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (pivot * m[r][c] - m[r][col] * m[rank][c]) // prev_pivot
            m[r][col] = 0
        prev_pivot = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def spanning_check(fields: Sequence[DescendedField], p: SurfacePoint) -> int:
    """Rank (capped at 2) of the generator-image values at the point."""
    return min(2, matrix_rank([f.row_at(p) for f in fields]))


def _small_rationals() -> list[Fraction]:
    """Positive rationals p/q with small height, deterministic order."""
    out = []
    for height in range(2, 10):
        for num in range(1, height):
            den = height - num
            if gcd(num, den) == 1:
                out.append(Fraction(num, den))
    return out


def candidate_points(params: SurfaceParameters) -> Iterator[SurfacePoint]:
    """Deterministic sequence (1, s, t, 1 + s^b * t) with s, t positive."""
    values = _small_rationals()
    pairs = sorted(
        ((i + j, i, j) for i in range(len(values)) for j in range(len(values)))
    )
    for _, i, j in pairs:
        s, t = values[i], values[j]
        yield SurfacePoint(
            (Fraction(1), s, t, 1 + s ** params.b * t), params
        )


def generator_values_nonzero(p: SurfacePoint) -> bool:
    table = generator_exponents(p.params)
    return all(
        Polynomial.monomial(1, expo).evaluate(p.coords) != 0
        for expo in table.values()
    )


def find_spanning_point(
    fields: Sequence[DescendedField],
    params: SurfaceParameters,
    limit: int = 100,
) -> tuple[SurfacePoint, int] | None:
    """First candidate point (with its 0-based index) where the descended
    fields span the tangent plane; None if not found within ``limit``."""
    for idx, p in enumerate(candidate_points(params)):
        if idx >= limit:
            return None
        if not generator_values_nonzero(p):
            continue
        if spanning_check(fields, p) == 2:
            return p, idx
    return None
