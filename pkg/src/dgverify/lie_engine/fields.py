"""The standard complete invariant vector fields on the threefold.

delta and delta' are locally nilpotent, eps is diagonal, and the torus
field generates the one-torus action itself.  All four annihilate the
surface relation exactly (not merely modulo the ideal).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..derivation import Derivation
from ..genring import GeneratorWord
from ..polyring import Polynomial, SurfaceParameters
from ..torus import is_invariant_field


@dataclass(frozen=True)
class StandardFields:
    """delta, delta', eps and the torus generator for one parameter value."""

    delta: Derivation
    delta_prime: Derivation
    eps: Derivation
    torus: Derivation
    params: SurfaceParameters

    def named(self) -> dict[str, Derivation]:
        return {
            "delta": self.delta,
            "deltaprime": self.delta_prime,
            "eps": self.eps,
            "E": self.torus,
        }


def standard_fields(params: SurfaceParameters) -> StandardFields:
    """Construct the four standard fields and verify their invariants."""
    b = params.b
    zero = Polynomial.zero()
    delta = Derivation.make(
        Polynomial.monomial(b, (0, b - 1, 1, 0)),
        Polynomial.variable(4),
        zero,
        zero,
        params,
    )
    delta_prime = Derivation.make(
        zero,
        zero,
        Polynomial.monomial(1, (b, 0, 0, 0)),
        Polynomial.monomial(1, (b - 1, b, 0, 0)),
        params,
    )
    eps = Derivation.make(
        Polynomial.variable(1), zero, zero, -Polynomial.variable(4), params
    )
    torus = Derivation.make(
        -Polynomial.variable(1),
        Polynomial.variable(2),
        Polynomial.monomial(-b, (0, 0, 1, 0)),
        Polynomial.variable(4),
        params,
    )
    fields = StandardFields(delta, delta_prime, eps, torus, params)
    for name, x in fields.named().items():
        if not x.is_tangent():
            raise AssertionError(f"standard field {name} is not tangent")
        if not is_invariant_field(x):
            raise AssertionError(f"standard field {name} is not torus-invariant")
    return fields


def word_field(word: GeneratorWord, base: Derivation) -> Derivation:
    """The field lift(word) * base, with reduced coefficients."""
    return base.times(word.lift())
