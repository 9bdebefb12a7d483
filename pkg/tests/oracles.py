"""Independent oracles used by the test suite.

These deliberately avoid the library's own algorithms: the decomposer
oracle is a bounded exhaustive search, and polynomial identities are
cross-checked by exact evaluation at random points of the threefold.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from dgverify.genring import generator_exponents
from dgverify.polyring import Polynomial, SurfaceParameters, normal_form
from dgverify.sampling import random_surface_point

Expo = tuple[int, int, int, int]


def brute_force_decompose(
    e: Expo, params: SurfaceParameters
) -> dict[str, int] | None:
    """First multiplicity assignment (by exhaustive DFS) of ring generators
    whose ambient exponents sum to ``e``, or None if none exists."""
    table = list(generator_exponents(params).items())

    def dfs(idx: int, remaining: list[int]) -> dict[str, int] | None:
        if all(r == 0 for r in remaining):
            return {}
        if idx == len(table):
            return None
        name, lift = table[idx]
        cap = min(
            (remaining[j] // lift[j] for j in range(4) if lift[j]), default=0
        )
        for m in range(cap, -1, -1):
            rest = [remaining[j] - m * lift[j] for j in range(4)]
            if any(r < 0 for r in rest):
                continue
            found = dfs(idx + 1, rest)
            if found is not None:
                return ({name: m} | found) if m else found
        return None

    return dfs(0, list(e))


def invariant_exponents(params: SurfaceParameters, max_degree: int):
    """All weight-zero exponent vectors of total degree <= max_degree."""
    b = params.b
    for e1 in range(max_degree + 1):
        for e2 in range(max_degree + 1 - e1):
            for e3 in range(max_degree + 1 - e1 - e2):
                for e4 in range(max_degree + 1 - e1 - e2 - e3):
                    if -e1 + e2 - b * e3 + e4 == 0:
                        yield (e1, e2, e3, e4)


def agree_on_surface(
    p: Polynomial,
    q: Polynomial,
    params: SurfaceParameters,
    rng: Random,
    trials: int = 10,
) -> bool:
    """Exact equality of values at random rational points of the threefold."""
    for _ in range(trials):
        point = random_surface_point(rng, params)
        if p.evaluate(point) != q.evaluate(point):
            return False
    return True


def normal_form_sound(
    p: Polynomial, params: SurfaceParameters, rng: Random, trials: int = 10
) -> bool:
    return agree_on_surface(p, normal_form(p, params), params, rng, trials)
