"""Acceptance suite: one criterion per test, one printed pass/fail line each.

Every check is exact rational arithmetic; there are no tolerances anywhere.
"""

from dataclasses import replace
from random import Random

from click.testing import CliRunner

from dgverify.cli import main as cli_main
from dgverify.derivation import Derivation, bracket, exp_lnd, pushforward
from dgverify.genring import GeneratorWord
from dgverify.lie_engine.fields import standard_fields, word_field
from dgverify.lie_engine.planner import (
    module_generator_word,
    plan_delta_target,
    plan_eps_target,
    plan_module_element,
)
from dgverify.lie_engine.scripts import verify_script
from dgverify.lie_engine.spanning import descend, find_spanning_point
from dgverify.polyring import (
    Polynomial,
    SurfaceParameters,
    normal_form,
)
from dgverify.sampling import random_polynomial, random_word
from dgverify.torus import decompose_invariant

from itertools import combinations_with_replacement

from oracles import brute_force_decompose, invariant_exponents

import dgverify.genring as genring


def _report(number: int, name: str, ok: bool) -> None:
    print(f"CRITERION {number:2d} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({name}) failed"


def _xw(params, indices, ry=0):
    return GeneratorWord.from_indices(params, indices, ry=ry)


def _falling(b, count):
    out = 1
    for i in range(count):
        out *= b - i
    return out


def test_criterion_01_full_verification():
    ok = True
    for n in range(2, 8):
        result = CliRunner().invoke(
            cli_main, ["verify", "--n", str(n), "--quiet", "--samples", "20"]
        )
        ok = ok and result.exit_code == 0
    _report(1, "full pipeline passes for n = 2..7", ok)


def test_criterion_02_function_and_commutation_tables():
    ok = True
    for n in range(2, 8):
        params = SurfaceParameters(n)
        b = params.b
        std = standard_fields(params)
        y = _xw(params, (), ry=1).lift()
        xs = [_xw(params, (k,)).lift() for k in range(b + 1)]
        ok = ok and std.eps.apply(y) == normal_form(y, params)
        ok = ok and std.delta_prime.apply(y).is_zero
        ok = ok and std.delta.apply(y) == normal_form(1 + xs[0] * n, params)
        ok = ok and std.delta_prime.apply(xs[0]) == normal_form(y ** b, params)
        for k in range(b + 1):
            ok = ok and std.eps.apply(xs[k]) == normal_form(xs[k] * (-k), params)
            want = (
                normal_form(xs[k + 1] * (b - k), params)
                if k < b
                else Polynomial.zero()
            )
            ok = ok and std.delta.apply(xs[k]) == want
        ok = ok and bracket(std.eps, std.delta) == -std.delta
        ok = ok and bracket(std.eps, std.delta_prime) == std.delta_prime.scale(b)
    _report(2, "function and commutation tables for b = 1..6", ok)


def test_criterion_03_bracket_chain_closed_form():
    ok = True
    for n in range(2, 7):
        params = SurfaceParameters(n)
        b = params.b
        std = standard_fields(params)
        chain = bracket(std.delta, word_field(_xw(params, (0,)), std.eps))
        for s in range(1, b + 1):
            closed = word_field(_xw(params, (s - 1,)), std.delta).scale(
                s * _falling(b, s - 1)
            ) + word_field(_xw(params, (s,)), std.eps).scale(_falling(b, s))
            ok = ok and chain == closed
            if s < b:
                chain = bracket(std.delta, chain)
    _report(3, "closed form of the iterated bracket chain for s = 1..b, b <= 5", ok)


def test_criterion_04_seed_identities():
    ok = True
    for n in range(2, 8):
        params = SurfaceParameters(n)
        b = params.b
        std = standard_fields(params)
        s1 = bracket(
            word_field(_xw(params, (0,)), std.eps),
            word_field(_xw(params, (b,)), std.delta),
        )
        s2 = bracket(std.delta, word_field(_xw(params, (0, b)), std.eps))
        want1 = word_field(_xw(params, (0, b)), std.delta).scale(-(1 + b)) + word_field(
            _xw(params, (1, b)), std.eps
        ).scale(-b)
        want2 = word_field(_xw(params, (0, b)), std.delta) + word_field(
            _xw(params, (1, b)), std.eps
        ).scale(b)
        ok = ok and s1 == want1 and s2 == want2
        ok = ok and s1 + s2 == word_field(_xw(params, (0, b)), std.delta).scale(-b)
    _report(4, "seed identities of the delta family for b = 1..6", ok)


def test_criterion_05_all_script_families():
    ok = True
    count = 0
    for n in range(2, 6):
        params = SurfaceParameters(n)
        b = params.b
        for k in range(b + 1):
            for N in range(1, 4):
                check = verify_script(
                    plan_delta_target(_xw(params, [k] + [b] * N), params)
                )
                ok = ok and check.ok
                count += 1
                for M in range(0, 4):
                    for R in (None, 0, 1, 2, 3):
                        ry = 0 if R is None else b + R
                        word = _xw(params, [0] * M + [k] + [b] * N, ry=ry)
                        check = verify_script(plan_eps_target(word, params))
                        ok = ok and check.ok
                        count += 1
        for R in range(0, 4):
            check = verify_script(plan_eps_target(_xw(params, (), ry=b + R), params))
            ok = ok and check.ok
            count += 1
    _report(5, f"all certified script families, {count} scripts, b <= 4", ok)


def test_criterion_06_random_module_elements():
    ok = True
    for n in (2, 3, 4):
        rng = Random(100 + n)
        for _ in range(50):
            word = random_word(rng, SurfaceParameters(n), max_degree=4, allow_z=True)
            check = verify_script(plan_module_element(word, SurfaceParameters(n)))
            ok = ok and check.ok
    _report(6, "150 random module elements of degree <= 4 certified", ok)


def test_criterion_07_decomposer_vs_brute_force():
    ok = True
    count = 0
    for n in (2, 3, 4):
        params = SurfaceParameters(n)
        for e in invariant_exponents(params, 12):
            d = decompose_invariant(e, params)
            ok = ok and d.total() == e
            ok = ok and d.to_word().lift() == Polynomial.monomial(1, e)
            ok = ok and brute_force_decompose(e, params) is not None
            count += 1
    _report(7, f"decomposer agrees with exhaustive search on {count} monomials", ok)


def test_criterion_08_x_word_normal_forms():
    ok = True
    count = 0
    for n in range(2, 6):
        params = SurfaceParameters(n)
        b = params.b
        for length in range(0, 5):
            for indices in combinations_with_replacement(range(b + 1), length):
                word = _xw(params, indices)
                nf = genring.x_normal_form(word)
                ok = ok and (nf.h is None or 0 < nf.h < b)
                ok = ok and nf.to_word(params).lift() == word.lift()
                count += 1
    _report(8, f"x-word normal form exact on {count} words, b <= 4", ok)


def test_criterion_09_flow_exactness_and_functoriality():
    ok = True
    for n in (2, 3, 4):
        params = SurfaceParameters(n)
        std = standard_fields(params)
        phi = exp_lnd(word_field(_xw(params, (params.b,)), std.delta))
        f = params.defining_polynomial()
        for images in (phi.images, phi.inverse_images):
            total = Polynomial.zero()
            for e, c in f.terms():
                term = Polynomial.constant(c)
                for j in range(4):
                    term = term * images[j] ** e[j]
                total = total + term
            ok = ok and total == f
        rng = Random(200 + n)
        for _ in range(20):
            x = std.delta.times(random_polynomial(rng, 2, 2)) + std.eps.times(
                random_polynomial(rng, 2, 2)
            )
            y = std.delta_prime.times(random_polynomial(rng, 2, 2)) + std.eps.times(
                random_polynomial(rng, 2, 2)
            )
            ok = ok and pushforward(phi, bracket(x, y)) == bracket(
                pushforward(phi, x), pushforward(phi, y)
            )
    _report(9, "flow fixes the relation exactly and preserves brackets", ok)


def test_criterion_10_tangent_spanning():
    ok = True
    for n in (2, 3, 4, 5):
        params = SurfaceParameters(n)
        std = standard_fields(params)
        gen = word_field(module_generator_word(params), std.eps)
        phi = exp_lnd(word_field(_xw(params, (params.b,)), std.delta))
        fields = [descend(gen), descend(pushforward(phi, gen))]
        ok = ok and find_spanning_point(fields, params, limit=100) is not None
    _report(10, "module generators span the tangent plane for n = 2..5", ok)


def test_criterion_11_algebraic_laws():
    params = SurfaceParameters(3)
    std = standard_fields(params)
    rng = Random(300)
    ok = True

    def sample():
        out = Derivation.zero(params)
        for base in (std.delta, std.delta_prime, std.eps):
            out = out + base.times(random_polynomial(rng, 2, 2))
        return out

    for _ in range(50):
        x, y, z = sample(), sample(), sample()
        total = (
            bracket(x, bracket(y, z))
            + bracket(y, bracket(z, x))
            + bracket(z, bracket(x, y))
        )
        ok = ok and total.is_zero
    f = params.defining_polynomial()
    for _ in range(100):
        p = random_polynomial(rng)
        nf = normal_form(p, params)
        for _ in range(5):
            g = random_polynomial(rng, 2, 2)
            ok = ok and normal_form(p + g * f, params) == nf
    for _ in range(50):
        x = sample()
        p, q = random_polynomial(rng), random_polynomial(rng)
        lhs = x.apply(p * q)
        rhs = normal_form(
            x.apply(p) * normal_form(q, params)
            + normal_form(p, params) * x.apply(q),
            params,
        )
        ok = ok and lhs == rhs
    _report(11, "Jacobi (50), rewrite stability (100x5), Leibniz (50)", ok)


def test_criterion_12_script_mutation_soundness():
    params = SurfaceParameters(3)
    std = standard_fields(params)
    rng = Random(400)
    ok = True
    for i in range(10):
        word = _xw(params, [0] * (i % 3) + [i % 3] + [2], ry=(2 + i % 3) if i % 2 else 0)
        script = plan_eps_target(word, params)
        idx = rng.randrange(len(script.steps))
        script.steps[idx] = replace(
            script.steps[idx], field=script.steps[idx].field + std.delta
        )
        check = verify_script(script)
        ok = ok and (not check.ok) and check.failed_step == idx
    _report(12, "mutated scripts are rejected at the mutated step", ok)
