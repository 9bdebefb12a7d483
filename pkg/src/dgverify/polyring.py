"""Exact sparse polynomial arithmetic in the ambient coordinates a1..a4.

Everything is over arbitrary-precision rationals; floating point is never
used.  The quotient of the polynomial ring by the surface relation
a1*a4 - a2^b*a3 - 1 has a canonical normal form obtained by rewriting
a1*a4 -> a2^b*a3 + 1 until no monomial contains both a1 and a4.  The
left-hand side of the rule is a single monomial, so the rewriting is
confluent and terminating and no Groebner machinery is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, Sequence

Expo = tuple[int, int, int, int]
Point = tuple[Fraction, Fraction, Fraction, Fraction]

VAR_NAMES = ("a1", "a2", "a3", "a4")
ZERO_EXPO: Expo = (0, 0, 0, 0)


def grlex_key(e: Expo) -> tuple[int, Expo]:
    """Sort key for graded lexicographic order with a1 > a2 > a3 > a4."""
    return (sum(e), e)


@dataclass(frozen=True, order=True)
class SurfaceParameters:
    """The discrete surface datum: an integer n >= 2.

    Derived quantities: b = n - 1 is the exponent in the surface relation,
    d = n - 2 the degree of the ruled surface the construction starts from.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"surface parameter n must be >= 2, got {self.n}")

    @property
    def b(self) -> int:
        return self.n - 1

    @property
    def d(self) -> int:
        return self.n - 2

    def defining_polynomial(self) -> "Polynomial":
        """The relation a1*a4 - a2^b*a3 - 1 cutting out the threefold."""
        return Polynomial(
            {
                (1, 0, 0, 1): Fraction(1),
                (0, self.b, 1, 0): Fraction(-1),
                ZERO_EXPO: Fraction(-1),
            }
        )


class Polynomial:
    """Sparse multivariate polynomial in a1..a4 with Fraction coefficients.

    Terms are stored as a dict mapping exponent vectors to nonzero
    coefficients; the zero polynomial is the empty dict.  Instances are
    treated as immutable: no method mutates ``self``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Expo, Fraction | int] | None = None) -> None:
        clean: dict[Expo, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != 4 or min(e) < 0:
                    raise ValueError(f"bad exponent vector {e!r}")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c  # type: ignore[index]
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({ZERO_EXPO: Fraction(1)})

    @classmethod
    def constant(cls, c: Fraction | int) -> "Polynomial":
        return cls({ZERO_EXPO: Fraction(c)})

    @classmethod
    def variable(cls, i: int) -> "Polynomial":
        """The coordinate a_i, 1-based."""
        if i not in (1, 2, 3, 4):
            raise ValueError(f"variable index must be 1..4, got {i}")
        e = [0, 0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): Fraction(1)})  # type: ignore[dict-item]

    @classmethod
    def monomial(cls, coeff: Fraction | int, expo: Expo) -> "Polynomial":
        return cls({expo: Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[Expo, Fraction]]:
        """Terms in descending graded lexicographic order (deterministic)."""
        for e in sorted(self._terms, key=grlex_key, reverse=True):
            yield e, self._terms[e]

    def coefficient(self, expo: Expo) -> Fraction:
        return self._terms.get(expo, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient(ZERO_EXPO)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Polynomial.__new__(Polynomial)
        p._terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p._terms = {e: -c for e, c in self._terms.items()}
        return p

    def __sub__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Polynomial.zero()
            p = Polynomial.__new__(Polynomial)
            p._terms = {e: c * other for e, c in self._terms.items()}
            return p
        out: dict[Expo, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = Polynomial.__new__(Polynomial)
        p._terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to a_i, 1-based."""
        j = i - 1
        out: dict[Expo, Fraction] = {}
        for e, c in self._terms.items():
            if e[j]:
                ne = list(e)
                ne[j] -= 1
                out[tuple(ne)] = c * e[j]  # type: ignore[index]
        p = Polynomial.__new__(Polynomial)
        p._terms = out
        return p

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != 4:
            raise ValueError("a point has 4 coordinates")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for j in range(4):
                if e[j]:
                    v *= pt[j] ** e[j]
            total += v
        return total

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# -- quotient normal form --------------------------------------------------


def normal_form(p: Polynomial, params: SurfaceParameters) -> Polynomial:
    """Canonical representative of p modulo the surface relation.

    Every monomial a1^i a4^j with i, j > 0 is rewritten by replacing the
    factor (a1*a4)^min(i,j) with (a2^b*a3 + 1)^min(i,j); the substituted
    monomials contain no a1*a4 factor, so one pass suffices.
    """
    b = params.b
    out: dict[Expo, Fraction] = {}

    def acc(e: Expo, c: Fraction) -> None:
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)

    for e, c in p._terms.items():
        m = min(e[0], e[3])
        if m == 0:
            acc(e, c)
        else:
            for j in range(m + 1):
                acc((e[0] - m, e[1] + b * j, e[2] + j, e[3] - m), c * comb(m, j))
    q = Polynomial.__new__(Polynomial)
    q._terms = out
    return q


def is_normal_form(p: Polynomial) -> bool:
    return all(e[0] == 0 or e[3] == 0 for e, _ in p.terms())


@dataclass(frozen=True)
class QuotientPolynomial:
    """A polynomial in canonical form on the quotient of the ambient ring."""

    value: Polynomial
    params: SurfaceParameters

    def __post_init__(self) -> None:
        if not is_normal_form(self.value):
            raise ValueError("value is not in quotient normal form")

    def __add__(self, other: "QuotientPolynomial") -> "QuotientPolynomial":
        self._check(other)
        return QuotientPolynomial(self.value + other.value, self.params)

    def __sub__(self, other: "QuotientPolynomial") -> "QuotientPolynomial":
        self._check(other)
        return QuotientPolynomial(self.value - other.value, self.params)

    def __mul__(self, other: "QuotientPolynomial") -> "QuotientPolynomial":
        self._check(other)
        return QuotientPolynomial(
            normal_form(self.value * other.value, self.params), self.params
        )

    def _check(self, other: "QuotientPolynomial") -> None:
        if self.params != other.params:
            raise ValueError("mixed surface parameters")

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def __str__(self) -> str:
        return format_polynomial(self.value)


def reduce(p: Polynomial, params: SurfaceParameters) -> QuotientPolynomial:
    """Normal form of p modulo the ideal of the surface relation."""
    return QuotientPolynomial(normal_form(p, params), params)


def equals_mod_ideal(p: Polynomial, q: Polynomial, params: SurfaceParameters) -> bool:
    """Equality of p and q as functions on the threefold."""
    return normal_form(p - q, params).is_zero


# -- textual syntax --------------------------------------------------------

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<num>\d+(?:/\d+)?)
      | (?P<var>a[1-4])
      | (?P<op>[\^*+()-])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[str]:
    toks: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            break
        toks.append(m.group().strip())
        pos = m.end()
    return toks


class _Parser:
    """Recursive-descent parser for the `a1*a4 - a2^2*a3 - 1` syntax.

    `*` is optional between factors; `^` takes a nonnegative integer;
    coefficients may be rationals like 3/2.
    """

    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            p = p + self.term() * sign
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.next()
                p = p * self.factor()
            elif tok is not None and (tok == "(" or tok.startswith("a") or tok[0].isdigit()):
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        p = self.primary()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if not tok.isdigit():
                raise ValueError(f"exponent must be a nonnegative integer, got {tok!r}")
            p = p ** int(tok)
        return p

    def primary(self) -> Polynomial:
        tok = self.next()
        if tok == "(":
            p = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parentheses")
            return p
        if tok == "-":
            return -self.factor()
        if tok.startswith("a") and tok in VAR_NAMES:
            return Polynomial.variable(int(tok[1]))
        if tok[0].isdigit():
            return Polynomial.constant(Fraction(tok))
        raise ValueError(f"unexpected token {tok!r}")


def parse_polynomial(text: str) -> Polynomial:
    if not text.strip():
        raise ValueError("empty polynomial text")
    return _Parser(text).parse()


def _format_monomial(e: Expo) -> str:
    parts = []
    for name, k in zip(VAR_NAMES, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Deterministic printer; round-trips through parse_polynomial."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for i, (e, c) in enumerate(p.terms()):
        mono = _format_monomial(e)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
