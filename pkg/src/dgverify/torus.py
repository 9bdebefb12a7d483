"""The one-torus action on the threefold: weights and invariant monomials.

The torus scales the coordinates with weights (-1, 1, -b, 1); a monomial
a1^X a2^Y a3^Z a4^W is invariant exactly when -X + Y - bZ + W = 0.  Every
invariant exponent vector decomposes, with nonnegative integer
multiplicities, over the generator lifts y, z, x0..xb; the decomposition
is constructed directly, splitting W (or the remainder of Y) into at most
Z parts bounded by b.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivation import Derivation
from .genring import GeneratorWord, WordPolynomial, generator_exponents
from .polyring import Expo, QuotientPolynomial, SurfaceParameters


def weights(params: SurfaceParameters) -> tuple[int, int, int, int]:
    return (-1, 1, -params.b, 1)


def weight_of_monomial(e: Expo, params: SurfaceParameters) -> int:
    """The torus weight -e1 + e2 - b*e3 + e4 of a monomial."""
    return -e[0] + e[1] - params.b * e[2] + e[3]


def is_invariant_polynomial(p, params: SurfaceParameters) -> bool:
    """Whether every monomial has weight zero."""
    return all(weight_of_monomial(e, params) == 0 for e, _ in p.terms())


def is_invariant_field(x: Derivation) -> bool:
    """Whether the field commutes with the torus action.

    The coefficient of d/da_i must be weight-homogeneous of the same weight
    as a_i, so that every summand c_i * d/da_i has weight zero as an
    operator.
    """
    w = weights(x.params)
    for wi, c in zip(w, x.coeffs):
        if any(weight_of_monomial(e, x.params) != wi for e, _ in c.terms()):
            return False
    return True


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generator descriptors (name, lift exponent vector)."""

    params: SurfaceParameters

    @property
    def entries(self) -> list[tuple[str, Expo]]:
        table = generator_exponents(self.params)
        names = ["y", "z"] + [f"x{k}" for k in range(self.params.b + 1)]
        return [(name, table[name]) for name in names]

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    def __len__(self) -> int:
        return self.params.b + 3


@dataclass(frozen=True)
class Decomposition:
    """Nonnegative multiplicities of generators whose lifts sum to a vector."""

    multiplicities: dict[str, int]
    params: SurfaceParameters

    def total(self) -> Expo:
        table = generator_exponents(self.params)
        e = [0, 0, 0, 0]
        for name, m in self.multiplicities.items():
            lift = table[name]
            for j in range(4):
                e[j] += m * lift[j]
        return tuple(e)  # type: ignore[return-value]

    def to_word(self) -> GeneratorWord:
        mult = self.multiplicities
        xs = [0] * (self.params.b + 1)
        for k in range(self.params.b + 1):
            xs[k] = mult.get(f"x{k}", 0)
        return GeneratorWord(mult.get("y", 0), mult.get("z", 0), tuple(xs), self.params)

    def __str__(self) -> str:
        return str(self.to_word())


class NotInvariantError(ValueError):
    """The exponent vector has nonzero torus weight."""


def _split_into_parts(total: int, count: int, cap: int) -> list[int]:
    """Greedy split of ``total`` into ``count`` integers in [0, cap]."""
    parts = []
    for _ in range(count):
        take = min(cap, total)
        parts.append(take)
        total -= take
    assert total == 0, "split infeasible: algorithm invariant violated"
    return parts


def decompose_invariant(e: Expo, params: SurfaceParameters) -> Decomposition:
    """Express an invariant exponent vector over the generator lifts.

    Branches on whether W = e4 is below b*Z; the boundary case Z = 0 is
    handled explicitly (no x-generator can occur there).
    """
    if weight_of_monomial(e, params) != 0:
        raise NotInvariantError(f"monomial {e} has weight {weight_of_monomial(e, params)}")
    b = params.b
    X, Y, Z, W = e
    counts: dict[str, int] = {}

    if Z == 0:
        # -X + Y + W = 0, so the word is y^Y z^W
        assert X == Y + W
        counts = {"y": Y, "z": W}
    elif W < b * Z:
        for k in _split_into_parts(W, Z, b):
            counts[f"x{k}"] = counts.get(f"x{k}", 0) + 1
        counts["y"] = counts.get("y", 0) + X
    else:
        M, r_prime = divmod(Y, b * Z)
        n_z = X - M * b * Z
        assert n_z >= 0, "z-multiplicity negative: algorithm invariant violated"
        for part in _split_into_parts(r_prime, Z, b):
            k = b - part
            counts[f"x{k}"] = counts.get(f"x{k}", 0) + 1
        counts["z"] = counts.get("z", 0) + n_z
        counts["y"] = counts.get("y", 0) + M * b * Z

    dec = Decomposition({k: v for k, v in counts.items() if v}, params)
    assert dec.total() == tuple(e), "decomposition does not sum to the input"
    return dec


def express_invariant_polynomial(p: QuotientPolynomial) -> WordPolynomial:
    """Rewrite an invariant quotient polynomial in the generator symbols."""
    out: WordPolynomial = []
    for e, c in p.value.terms():
        word = decompose_invariant(e, p.params).to_word()
        out.append((c, word))
    return out
