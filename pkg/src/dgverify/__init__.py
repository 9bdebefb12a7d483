"""Exact symbolic verification of the density property for a family of
affine surfaces presented as torus quotients of a smooth threefold.

The package computes in the coordinate ring of the threefold
a1*a4 - a2^b*a3 = 1 with exact rational arithmetic, decomposes invariant
monomials over the generators of the invariant ring, certifies complete
vector fields, replays bracket scripts for Lie-algebra membership, and
checks that the resulting module of fields spans the tangent plane at a
point of the quotient surface.
"""

__version__ = "0.1.0"

from .polyring import (  # noqa: E402
    Polynomial,
    QuotientPolynomial,
    SurfaceParameters,
    normal_form,
    parse_polynomial,
    reduce,
)
from .derivation import (  # noqa: E402
    Derivation,
    RingAutomorphism,
    bracket,
    exp_lnd,
    pushforward,
)
from .genring import GeneratorWord, x_normal_form  # noqa: E402
from .torus import decompose_invariant, is_invariant_field  # noqa: E402

__all__ = [
    "__version__",
    "Polynomial",
    "QuotientPolynomial",
    "SurfaceParameters",
    "normal_form",
    "parse_polynomial",
    "reduce",
    "Derivation",
    "RingAutomorphism",
    "bracket",
    "exp_lnd",
    "pushforward",
    "GeneratorWord",
    "x_normal_form",
    "decompose_invariant",
    "is_invariant_field",
]
