"""Machine-checkable completeness evidence for vector fields.

Four certificate shapes:

* LND: per-coordinate iteration counts m_i with X^{m_i}(a_i) = 0;
* DIAGONAL: each coefficient is a scalar multiple of its own coordinate,
  so the flow is a one-parameter multiplicative group;
* FUNCTION_TIMES_FIELD: the field is f * mu with mu certified complete and
  mu(mu(f)) = 0 on the quotient;
* CONJUGATE: the field is the pushforward of a certified-complete field
  along a ring automorphism (flows conjugate along the automorphism).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..derivation import Derivation, RingAutomorphism, pushforward
from ..polyring import Polynomial, SurfaceParameters


class CertKind(str, Enum):
    LND = "LND"
    DIAGONAL = "DIAGONAL"
    FUNCTION_TIMES_FIELD = "FUNCTION_TIMES_FIELD"
    CONJUGATE = "CONJUGATE"


def default_nilpotency_bound(x: Derivation) -> int:
    """Heuristic iteration cap: 4 * (max coefficient degree) + 4."""
    deg = max((c.total_degree() for c in x.coeffs), default=0)
    return 4 * max(deg, 0) + 4


def is_locally_nilpotent(x: Derivation, bound: int) -> Optional[tuple[int, int, int, int]]:
    """Per-coordinate counts m_i <= bound with X^{m_i}(a_i) = 0, or None.

    Works on the quotient: each application reduces modulo the surface
    relation, which is the right notion for fields on the threefold.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    counts = []
    for i in (1, 2, 3, 4):
        p = Polynomial.variable(i)
        m = 0
        while not p.is_zero:
            if m >= bound:
                return None
            p = x.apply(p)
            m += 1
        counts.append(max(m, 1))
    return tuple(counts)  # type: ignore[return-value]


@dataclass(frozen=True)
class CompletenessCertificate:
    kind: CertKind
    field: Derivation
    bounds: Optional[tuple[int, int, int, int]] = None
    factor: Optional[Polynomial] = None
    base: Optional["CompletenessCertificate"] = None
    automorphism: Optional[RingAutomorphism] = None

    @property
    def params(self) -> SurfaceParameters:
        return self.field.params


def lnd_certificate(x: Derivation, bound: int | None = None) -> CompletenessCertificate:
    counts = is_locally_nilpotent(x, bound or default_nilpotency_bound(x))
    if counts is None:
        raise ValueError("field is not locally nilpotent within bound")
    return CompletenessCertificate(CertKind.LND, x, bounds=counts)


def diagonal_certificate(x: Derivation) -> CompletenessCertificate:
    cert = CompletenessCertificate(CertKind.DIAGONAL, x)
    if not verify_completeness(cert):
        raise ValueError("field is not diagonal")
    return cert


def function_times_field_certificate(
    f: Polynomial, base: CompletenessCertificate
) -> CompletenessCertificate:
    cert = CompletenessCertificate(
        CertKind.FUNCTION_TIMES_FIELD,
        base.field.times(f),
        factor=f,
        base=base,
    )
    if not verify_completeness(cert):
        raise ValueError("mu(mu(f)) != 0: product field is not complete")
    return cert


def conjugate_certificate(
    alpha: RingAutomorphism, inner: CompletenessCertificate
) -> CompletenessCertificate:
    """Certificate for the pushforward of a certified-complete field.

    LND and FUNCTION_TIMES_FIELD conjugate within their own kind; a
    DIAGONAL base is wrapped structurally.
    """
    pushed = pushforward(alpha, inner.field)
    if inner.kind is CertKind.LND:
        return lnd_certificate(pushed)
    if inner.kind is CertKind.FUNCTION_TIMES_FIELD:
        assert inner.factor is not None and inner.base is not None
        return function_times_field_certificate(
            alpha.apply(inner.factor), conjugate_certificate(alpha, inner.base)
        )
    return CompletenessCertificate(
        CertKind.CONJUGATE, pushed, base=inner, automorphism=alpha
    )


def verify_completeness(c: CompletenessCertificate) -> bool:
    """Re-run the stored witness; True iff everything still checks out."""
    x = c.field
    if c.kind is CertKind.LND:
        if c.bounds is None:
            return False
        counts = is_locally_nilpotent(x, max(c.bounds))
        return counts is not None and all(
            got <= claimed for got, claimed in zip(counts, c.bounds)
        )
    if c.kind is CertKind.DIAGONAL:
        for i, coeff in enumerate(x.coeffs, start=1):
            if coeff.is_zero:
                continue
            terms = list(coeff.terms())
            if len(terms) != 1:
                return False
            e, _ = terms[0]
            expected = [0, 0, 0, 0]
            expected[i - 1] = 1
            if list(e) != expected:
                return False
        return True
    if c.kind is CertKind.FUNCTION_TIMES_FIELD:
        if c.factor is None or c.base is None:
            return False
        if not verify_completeness(c.base):
            return False
        mu = c.base.field
        if mu.times(c.factor) != x:
            return False
        return mu.apply(mu.apply(c.factor)).is_zero
    if c.kind is CertKind.CONJUGATE:
        if c.base is None or c.automorphism is None:
            return False
        if not verify_completeness(c.base):
            return False
        return pushforward(c.automorphism, c.base.field) == x
    return False
