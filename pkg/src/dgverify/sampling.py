"""Seeded random generators for property checks and pipeline sampling.

Everything takes an explicit ``random.Random`` so runs are reproducible
from a single seed.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .derivation import Derivation
from .genring import GeneratorWord
from .polyring import Polynomial, SurfaceParameters

DEFAULT_SEED = 271828


def random_fraction(rng: Random, span: int = 5) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_nonzero_fraction(rng: Random, span: int = 5) -> Fraction:
    while True:
        q = random_fraction(rng, span)
        if q:
            return q


def random_polynomial(
    rng: Random, max_degree: int = 3, max_terms: int = 4, span: int = 5
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0, 0, 0, 0]
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            e[rng.randrange(4)] += 1
        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + random_fraction(rng, span)
    return Polynomial({e: c for e, c in terms.items() if c})


def random_surface_point(
    rng: Random, params: SurfaceParameters, span: int = 7
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """A random rational point with a1*a4 - a2^b*a3 = 1, via a4 elimination."""
    while True:
        a1 = random_nonzero_fraction(rng, span)
        a2 = random_fraction(rng, span)
        a3 = random_fraction(rng, span)
        a4 = (1 + a2 ** params.b * a3) / a1
        return (a1, a2, a3, a4)


def random_derivation(
    rng: Random, params: SurfaceParameters, max_degree: int = 2
) -> Derivation:
    return Derivation.make(
        *(random_polynomial(rng, max_degree, max_terms=2) for _ in range(4)),
        params,
    )


def random_word(
    rng: Random,
    params: SurfaceParameters,
    max_degree: int = 4,
    allow_z: bool = True,
) -> GeneratorWord:
    """A random generator word of total degree <= max_degree."""
    degree = rng.randint(0, max_degree)
    symbols = ["y"] + (["z"] if allow_z else []) + [f"x{k}" for k in range(params.b + 1)]
    ry = rz = 0
    xs = [0] * (params.b + 1)
    for _ in range(degree):
        pick = rng.choice(symbols)
        if pick == "y":
            ry += 1
        elif pick == "z":
            rz += 1
        else:
            xs[int(pick[1:])] += 1
    return GeneratorWord(ry, rz, tuple(xs), params)
