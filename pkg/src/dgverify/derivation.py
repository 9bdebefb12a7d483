"""Polynomial vector fields on the ambient space and on the threefold.

A derivation is stored as the four coefficient polynomials of
d/da1..d/da4, kept in quotient normal form after every operation, so that
equality of fields means equality as vector fields on the threefold.
Brackets, tangency tests, exponentials of locally nilpotent fields and
pushforwards along the resulting automorphisms are all exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import (
    Polynomial,
    SurfaceParameters,
    format_polynomial,
    normal_form,
    parse_polynomial,
)


class NilpotencyBoundExceeded(Exception):
    """Raised when an exponential series fails to terminate within bound."""


@dataclass(frozen=True)
class Derivation:
    """A vector field sum_i coeffs[i] * d/da_{i+1}, coefficients reduced."""

    coeffs: tuple[Polynomial, Polynomial, Polynomial, Polynomial]
    params: SurfaceParameters

    @classmethod
    def make(
        cls,
        c1: Polynomial,
        c2: Polynomial,
        c3: Polynomial,
        c4: Polynomial,
        params: SurfaceParameters,
    ) -> "Derivation":
        return cls(
            tuple(normal_form(c, params) for c in (c1, c2, c3, c4)),  # type: ignore[arg-type]
            params,
        )

    @classmethod
    def zero(cls, params: SurfaceParameters) -> "Derivation":
        z = Polynomial.zero()
        return cls((z, z, z, z), params)

    @classmethod
    def coordinate(cls, i: int, params: SurfaceParameters) -> "Derivation":
        """The plain d/da_i, 1-based."""
        cs = [Polynomial.zero()] * 4
        cs[i - 1] = Polynomial.one()
        return cls(tuple(cs), params)  # type: ignore[arg-type]

    # -- module structure ----------------------------------------------

    def __add__(self, other: "Derivation") -> "Derivation":
        self._check(other)
        return Derivation(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),  # type: ignore[arg-type]
            self.params,
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __neg__(self) -> "Derivation":
        return Derivation(tuple(-c for c in self.coeffs), self.params)  # type: ignore[arg-type]

    def scale(self, q: Fraction | int) -> "Derivation":
        q = Fraction(q)
        return Derivation(tuple(c * q for c in self.coeffs), self.params)  # type: ignore[arg-type]

    def times(self, f: Polynomial) -> "Derivation":
        """The field f * X; the product is reduced."""
        return Derivation.make(*(f * c for c in self.coeffs), self.params)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "Derivation") -> None:
        if self.params != other.params:
            raise ValueError("mixed surface parameters")

    # -- calculus --------------------------------------------------------

    def apply(self, p: Polynomial) -> Polynomial:
        """X(p) = sum_i c_i * dp/da_i, in quotient normal form."""
        total = Polynomial.zero()
        for i, c in enumerate(self.coeffs, start=1):
            if not c.is_zero:
                total = total + c * p.partial(i)
        return normal_form(total, self.params)

    def evaluate(self, point: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.coeffs)

    def is_tangent(self) -> bool:
        """Whether the field annihilates the surface relation mod the ideal."""
        return self.apply(self.params.defining_polynomial()).is_zero

    def __str__(self) -> str:
        return format_field(self)


def bracket(x: Derivation, y: Derivation) -> Derivation:
    """The Lie bracket [X, Y], coefficientwise X(Y_i) - Y(X_i)."""
    if x.params != y.params:
        raise ValueError("mixed surface parameters")
    return Derivation(
        tuple(x.apply(cy) - y.apply(cx) for cx, cy in zip(x.coeffs, y.coeffs)),  # type: ignore[arg-type]
        x.params,
    )


# -- substitution and automorphisms ----------------------------------------


def substitute(
    p: Polynomial, images: Sequence[Polynomial], params: SurfaceParameters
) -> Polynomial:
    """p with a_i replaced by images[i-1], reduced to normal form."""
    maxdeg = [0, 0, 0, 0]
    for e, _ in p.terms():
        for j in range(4):
            maxdeg[j] = max(maxdeg[j], e[j])
    # power tables, reduced as they grow to keep intermediate sizes down
    powers: list[list[Polynomial]] = []
    for j in range(4):
        tab = [Polynomial.one()]
        for _ in range(maxdeg[j]):
            tab.append(normal_form(tab[-1] * images[j], params))
        powers.append(tab)
    total = Polynomial.zero()
    for e, c in p.terms():
        term = Polynomial.constant(c)
        for j in range(4):
            if e[j]:
                term = normal_form(term * powers[j][e[j]], params)
        total = total + term
    return normal_form(total, params)


@dataclass(frozen=True)
class RingAutomorphism:
    """An automorphism given by the images of a1..a4, with a stored inverse.

    Instances are built from exponentials of locally nilpotent fields, so
    the inverse images come for free from the opposite field.  The images
    must fix the surface relation modulo the ideal.
    """

    images: tuple[Polynomial, Polynomial, Polynomial, Polynomial]
    inverse_images: tuple[Polynomial, Polynomial, Polynomial, Polynomial]
    params: SurfaceParameters

    def __post_init__(self) -> None:
        f = self.params.defining_polynomial()
        if not normal_form(self.apply(f) - f, self.params).is_zero:
            raise ValueError("map does not preserve the surface relation")

    @classmethod
    def identity(cls, params: SurfaceParameters) -> "RingAutomorphism":
        gens = tuple(Polynomial.variable(i) for i in (1, 2, 3, 4))
        return cls(gens, gens, params)  # type: ignore[arg-type]

    def apply(self, p: Polynomial) -> Polynomial:
        return substitute(p, self.images, self.params)

    def apply_inverse(self, p: Polynomial) -> Polynomial:
        return substitute(p, self.inverse_images, self.params)

    def compose(self, other: "RingAutomorphism") -> "RingAutomorphism":
        """self after other, as a map of points (self o other on functions)."""
        if self.params != other.params:
            raise ValueError("mixed surface parameters")
        images = tuple(self.apply(g) for g in other.images)
        inverses = tuple(other.apply_inverse(g) for g in self.inverse_images)
        return RingAutomorphism(images, inverses, self.params)  # type: ignore[arg-type]

    def is_identity(self) -> bool:
        return all(
            normal_form(g - Polynomial.variable(i), self.params).is_zero
            for i, g in enumerate(self.images, start=1)
        )


def exp_lnd(x: Derivation, bound: int = 64) -> RingAutomorphism:
    """Time-one flow of a locally nilpotent field, as a ring automorphism.

    The image of a_i is the finite series sum_j X^j(a_i)/j!; the inverse
    comes from -X.  Raises NilpotencyBoundExceeded if any coordinate series
    fails to terminate within ``bound`` applications.
    """

    def series(field: Derivation) -> tuple[Polynomial, ...]:
        images = []
        for i in (1, 2, 3, 4):
            term = Polynomial.variable(i)
            total = Polynomial.zero()
            factorial = 1
            j = 0
            while not term.is_zero:
                if j > bound:
                    raise NilpotencyBoundExceeded(
                        f"series for a{i} did not terminate within {bound} steps"
                    )
                total = total + term * Fraction(1, factorial)
                term = field.apply(term)
                j += 1
                factorial *= j
            images.append(normal_form(total, field.params))
        return tuple(images)

    return RingAutomorphism(series(x), series(-x), x.params)  # type: ignore[arg-type]


def pushforward(alpha: RingAutomorphism, x: Derivation) -> Derivation:
    """Transport of X along alpha: the field alpha o X o alpha^{-1}."""
    if alpha.params != x.params:
        raise ValueError("mixed surface parameters")
    coeffs = tuple(
        substitute(x.apply(g), alpha.images, alpha.params)
        for g in alpha.inverse_images
    )
    return Derivation(coeffs, x.params)  # type: ignore[arg-type]


# -- textual syntax ---------------------------------------------------------


def parse_field(text: str, params: SurfaceParameters) -> Derivation:
    """Parse ``c1; c2; c3; c4`` in the polynomial syntax."""
    parts = text.split(";")
    if len(parts) != 4:
        raise ValueError("a field needs exactly 4 ;-separated coefficients")
    return Derivation.make(
        *(parse_polynomial(part) if part.strip() else Polynomial.zero() for part in parts),
        params,
    )


def format_field(x: Derivation) -> str:
    return "; ".join(format_polynomial(c) for c in x.coeffs)
