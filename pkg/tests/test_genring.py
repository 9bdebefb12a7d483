from itertools import combinations_with_replacement
from random import Random

import pytest

from dgverify.genring import (
    GeneratorWord,
    eliminate_z,
    format_word,
    lift_word_polynomial,
    parse_word,
    rewrite_pair,
    x_normal_form,
)
from dgverify.polyring import SurfaceParameters, equals_mod_ideal


def lift_of_indices(params, indices, ry=0, rz=0):
    return GeneratorWord.from_indices(params, indices, ry=ry, rz=rz).lift()


def test_rewrite_pair_is_an_ambient_identity():
    for n in range(2, 8):
        params = SurfaceParameters(n)
        b = params.b
        for k in range(b + 1):
            for h in range(b + 1):
                i, j = rewrite_pair(k, h, params)
                assert lift_of_indices(params, [k, h]) == lift_of_indices(
                    params, [i, j]
                ), (n, k, h)


def test_x_normal_form_shape_and_soundness():
    for n in range(2, 6):
        params = SurfaceParameters(n)
        b = params.b
        for length in range(0, 5):
            for indices in combinations_with_replacement(range(b + 1), length):
                word = GeneratorWord.from_indices(params, indices)
                nf = x_normal_form(word)
                assert nf.h is None or 0 < nf.h < b
                assert nf.to_word(params).lift() == word.lift(), (n, indices)


def test_x_normal_form_rejects_mixed_words():
    params = SurfaceParameters(3)
    with pytest.raises(ValueError):
        x_normal_form(GeneratorWord.from_indices(params, (0,), ry=1))


def test_eliminate_z_mod_ideal():
    for n in (2, 3, 4):
        params = SurfaceParameters(n)
        for rz in range(4):
            word = GeneratorWord.from_indices(params, (0, params.b), ry=1, rz=rz)
            lifted = lift_word_polynomial(eliminate_z(word))
            assert equals_mod_ideal(lifted, word.lift(), params), (n, rz)


def test_product_identities():
    # y*xb = (1 + x0)*x_{b-1} on the quotient, x1*x_{b-1} = x0*xb exactly
    for n in range(2, 8):
        params = SurfaceParameters(n)
        b = params.b
        left = lift_of_indices(params, [b], ry=1)
        right = lift_of_indices(params, [b - 1]) + lift_of_indices(params, [0, b - 1])
        assert equals_mod_ideal(left, right, params), n
        if b >= 2:
            assert lift_of_indices(params, [1, b - 1]) == lift_of_indices(
                params, [0, b]
            ), n


def test_word_parse_format_round_trip():
    params = SurfaceParameters(4)
    rng = Random(11)
    for text in ("1", "y", "y^2*z*x0", "x0*x1^2*x3"):
        word = parse_word(text, params)
        assert parse_word(format_word(word), params) == word
    for _ in range(30):
        word = GeneratorWord(
            rng.randint(0, 3),
            rng.randint(0, 3),
            tuple(rng.randint(0, 2) for _ in range(params.b + 1)),
            params,
        )
        assert parse_word(format_word(word), params) == word


def test_word_degree_and_times():
    params = SurfaceParameters(3)
    w1 = parse_word("y*x0", params)
    w2 = parse_word("z*x2", params)
    assert w1.degree() == 2
    assert w1.times(w2) == parse_word("y*z*x0*x2", params)
    assert w1.times(w2).lift() == w1.lift() * w2.lift()
