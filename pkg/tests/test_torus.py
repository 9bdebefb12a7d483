from random import Random

import pytest

from dgverify.genring import generator_exponents
from dgverify.polyring import Polynomial, SurfaceParameters
from dgverify.torus import (
    NotInvariantError,
    decompose_invariant,
    is_invariant_polynomial,
    weight_of_monomial,
    weights,
)

from oracles import brute_force_decompose, invariant_exponents


def test_weights():
    assert weights(SurfaceParameters(2)) == (-1, 1, -1, 1)
    assert weights(SurfaceParameters(4)) == (-1, 1, -3, 1)
    p4 = SurfaceParameters(4)
    assert weight_of_monomial((1, 0, 0, 0), p4) == -1
    assert weight_of_monomial((0, 1, 1, 2), p4) == 0


def test_generator_lifts_are_invariant():
    for n in range(2, 6):
        params = SurfaceParameters(n)
        for name, e in generator_exponents(params).items():
            assert weight_of_monomial(e, params) == 0, name


def test_invariant_polynomial_predicate():
    p3 = SurfaceParameters(3)
    assert is_invariant_polynomial(p3.defining_polynomial(), p3)
    assert not is_invariant_polynomial(Polynomial.variable(1), p3)


def test_decompose_examples():
    p3 = SurfaceParameters(3)  # b = 2
    d = decompose_invariant((1, 3, 1, 0), p3)
    assert d.multiplicities == {"y": 1, "x0": 1}
    d = decompose_invariant((2, 1, 1, 3), p3)
    assert d.multiplicities == {"z": 2, "x1": 1}


def test_decompose_rejects_non_invariant():
    with pytest.raises(NotInvariantError):
        decompose_invariant((1, 0, 0, 0), SurfaceParameters(3))


def test_decompose_matches_brute_force():
    for n in (2, 3, 4):
        params = SurfaceParameters(n)
        for e in invariant_exponents(params, 8):
            d = decompose_invariant(e, params)
            assert d.total() == e, (n, e)
            oracle = brute_force_decompose(e, params)
            assert oracle is not None, (n, e)


def test_decompose_word_lift_round_trip():
    rng = Random(7)
    for n in (2, 3, 5):
        params = SurfaceParameters(n)
        pool = list(invariant_exponents(params, 10))
        for e in rng.sample(pool, min(50, len(pool))):
            word = decompose_invariant(e, params).to_word()
            assert word.lift() == Polynomial.monomial(1, e)
