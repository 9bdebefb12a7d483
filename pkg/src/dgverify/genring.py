"""Monomial words in the invariant generators y, z, x0..xb.

The generators lift to ambient monomials

    y -> a1*a2,   z -> a1*a4,   x_k -> a2^(b-k)*a3*a4^k   (0 <= k <= b),

and satisfy the exact monomial relations x_k*x_h = x_{h+k}*x_0 for
h + k <= b and x_k*x_h = x_b*x_{h+k-b} for h + k >= b, plus z = 1 + x0 on
the quotient.  This module implements word arithmetic, the rewriting of an
x-word to the shape x0^M * x_h * x_b^N with at most one middle factor, and
the elimination of z-powers by binomial expansion.
"""

from __future__ import annotations

import re
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polyring import Expo, Polynomial, SurfaceParameters


def generator_exponents(params: SurfaceParameters) -> dict[str, Expo]:
    """Ambient exponent vector of each generator lift, keyed by name."""
    b = params.b
    table: dict[str, Expo] = {"y": (1, 1, 0, 0), "z": (1, 0, 0, 1)}
    for k in range(b + 1):
        table[f"x{k}"] = (0, b - k, 1, k)
    return table


def x_lift_exponents(k: int, params: SurfaceParameters) -> Expo:
    if not 0 <= k <= params.b:
        raise ValueError(f"x-index {k} out of range 0..{params.b}")
    return (0, params.b - k, 1, k)


@dataclass(frozen=True)
class GeneratorWord:
    """A monomial y^ry * z^rz * prod_k x_k^xs[k] in the invariant ring."""

    ry: int
    rz: int
    xs: tuple[int, ...]
    params: SurfaceParameters

    def __post_init__(self) -> None:
        if self.ry < 0 or self.rz < 0 or any(m < 0 for m in self.xs):
            raise ValueError("word exponents must be nonnegative")
        if len(self.xs) != self.params.b + 1:
            raise ValueError(
                f"expected {self.params.b + 1} x-exponents, got {len(self.xs)}"
            )

    @classmethod
    def from_indices(
        cls,
        params: SurfaceParameters,
        x_indices: tuple[int, ...] | list[int] = (),
        ry: int = 0,
        rz: int = 0,
    ) -> "GeneratorWord":
        xs = [0] * (params.b + 1)
        for k in x_indices:
            if not 0 <= k <= params.b:
                raise ValueError(f"x-index {k} out of range 0..{params.b}")
            xs[k] += 1
        return cls(ry, rz, tuple(xs), params)

    @classmethod
    def empty(cls, params: SurfaceParameters) -> "GeneratorWord":
        return cls(0, 0, (0,) * (params.b + 1), params)

    def degree(self) -> int:
        return self.ry + self.rz + sum(self.xs)

    def x_indices(self) -> list[int]:
        """The multiset of x-indices, sorted ascending."""
        out: list[int] = []
        for k, m in enumerate(self.xs):
            out.extend([k] * m)
        return out

    def times(self, other: "GeneratorWord") -> "GeneratorWord":
        if self.params != other.params:
            raise ValueError("mixed surface parameters")
        return GeneratorWord(
            self.ry + other.ry,
            self.rz + other.rz,
            tuple(a + b for a, b in zip(self.xs, other.xs)),
            self.params,
        )

    def lift(self) -> Polynomial:
        """The ambient monomial the word lifts to."""
        e = [self.ry + self.rz, self.ry, 0, self.rz]
        b = self.params.b
        for k, m in enumerate(self.xs):
            if m:
                e[1] += (b - k) * m
                e[2] += m
                e[3] += k * m
        return Polynomial.monomial(1, tuple(e))  # type: ignore[arg-type]

    def __str__(self) -> str:
        return format_word(self)


# A polynomial in the generator symbols: list of (coefficient, word) pairs.
WordPolynomial = list[tuple[Fraction, GeneratorWord]]


def rewrite_pair(k: int, h: int, params: SurfaceParameters) -> tuple[int, int]:
    """Indices (i, j) with x_k*x_h = x_i*x_j and i in {h+k, b}, j in {0, h+k-b}.

    The two branches agree at h + k = b.  The identity is exact on the
    ambient monomial lifts, no quotient relation involved.
    """
    b = params.b
    if not (0 <= k <= b and 0 <= h <= b):
        raise ValueError(f"indices must lie in 0..{b}")
    if h + k <= b:
        return (h + k, 0)
    return (b, h + k - b)


@dataclass(frozen=True)
class XNormalForm:
    """The shape x0^M * x_h * x_b^N with at most one middle factor."""

    M: int
    N: int
    h: int | None

    def to_word(self, params: SurfaceParameters) -> GeneratorWord:
        indices = [0] * self.M + [params.b] * self.N
        if self.h is not None:
            indices.append(self.h)
        return GeneratorWord.from_indices(params, indices)

    def __str__(self) -> str:
        parts = []
        if self.M:
            parts.append(f"x0^{self.M}" if self.M > 1 else "x0")
        if self.h is not None:
            parts.append(f"x{self.h}")
        if self.N:
            parts.append("xb^%d" % self.N if self.N > 1 else "xb")
        return "*".join(parts) if parts else "1"


def x_normal_form(w: GeneratorWord) -> XNormalForm:
    """Rewrite an x-word until at most one factor has index strictly between
    0 and b, always combining the two smallest middle indices first.

    Each rewrite replaces two middle factors by at most one, so the loop
    terminates.  The lift of the output equals the lift of the input
    (exactly for b >= 1; the rewrites are ambient monomial identities).
    """
    if w.ry or w.rz:
        raise ValueError("x_normal_form expects a pure x-word")
    params = w.params
    b = params.b
    M = w.xs[0]
    N = w.xs[b]
    middles: list[int] = []
    for k in range(1, b):
        middles.extend([k] * w.xs[k])
    while len(middles) >= 2:
        k = middles.pop(0)
        h = middles.pop(0)
        for idx in rewrite_pair(k, h, params):
            if idx == 0:
                M += 1
            elif idx == b:
                N += 1
            else:
                insort(middles, idx)
    return XNormalForm(M, N, middles[0] if middles else None)


def eliminate_z(w: GeneratorWord) -> WordPolynomial:
    """Expand z^rz as (1 + x0)^rz, leaving a z-free word polynomial."""
    params = w.params
    base = GeneratorWord(w.ry, 0, w.xs, params)
    x0 = GeneratorWord.from_indices(params, (0,))
    out: WordPolynomial = []
    for t in range(w.rz + 1):
        word = base
        for _ in range(t):
            word = word.times(x0)
        out.append((Fraction(comb(w.rz, t)), word))
    return out


def lift_word_polynomial(wp: WordPolynomial) -> Polynomial:
    total = Polynomial.zero()
    for c, w in wp:
        total = total + w.lift() * c
    return total


def format_word(w: GeneratorWord) -> str:
    parts = []
    for name, m in [("y", w.ry), ("z", w.rz)] + [
        (f"x{k}", w.xs[k]) for k in range(len(w.xs))
    ]:
        if m == 1:
            parts.append(name)
        elif m > 1:
            parts.append(f"{name}^{m}")
    return "*".join(parts) if parts else "1"


def format_word_polynomial(wp: WordPolynomial) -> str:
    if not wp:
        return "0"
    pieces = []
    for i, (c, w) in enumerate(wp):
        body = format_word(w)
        if body == "1":
            body = str(abs(c))
        elif abs(c) != 1:
            body = f"{abs(c)}*{body}"
        if i == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


_WORD_FACTOR = re.compile(r"\s*(y|z|x(\d+))(?:\^(\d+))?\s*(?:\*|$)")


def parse_word(text: str, params: SurfaceParameters) -> GeneratorWord:
    """Parse a word like ``x0*x1^2*x2`` or ``y^2*z*x0``."""
    text = text.strip()
    if text in ("", "1"):
        return GeneratorWord.empty(params)
    ry = rz = 0
    xs = [0] * (params.b + 1)
    pos = 0
    while pos < len(text):
        m = _WORD_FACTOR.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse generator word near {text[pos:]!r}")
        name, xk, power = m.group(1), m.group(2), m.group(3)
        mult = int(power) if power else 1
        if name == "y":
            ry += mult
        elif name == "z":
            rz += mult
        else:
            k = int(xk)
            if not 0 <= k <= params.b:
                raise ValueError(f"x-index {k} out of range 0..{params.b}")
            xs[k] += mult
        pos = m.end()
    return GeneratorWord(ry, rz, tuple(xs), params)
