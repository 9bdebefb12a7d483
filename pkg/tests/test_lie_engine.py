import json
from dataclasses import replace
from fractions import Fraction
from random import Random

import pytest

from dgverify.derivation import exp_lnd, pushforward
from dgverify.genring import GeneratorWord
from dgverify.lie_engine.certificates import (
    CertKind,
    conjugate_certificate,
    diagonal_certificate,
    function_times_field_certificate,
    lnd_certificate,
    verify_completeness,
)
from dgverify.lie_engine.fields import standard_fields, word_field
from dgverify.lie_engine.pipeline import RunConfig, density_pipeline
from dgverify.lie_engine.planner import (
    UnsupportedTargetError,
    module_generator_word,
    plan_delta_target,
    plan_eps_target,
    plan_module_element,
)
from dgverify.lie_engine.scripts import script_from_json, script_to_json, verify_script
from dgverify.lie_engine.spanning import (
    SurfacePoint,
    descend,
    find_spanning_point,
    matrix_rank,
    spanning_check,
)
from dgverify.polyring import Polynomial, SurfaceParameters
from dgverify.sampling import random_word

P3 = SurfaceParameters(3)
STD3 = standard_fields(P3)


def xword(params, indices, ry=0):
    return GeneratorWord.from_indices(params, indices, ry=ry)


# -- certificates -------------------------------------------------------------


def test_lnd_certificates():
    for x in (STD3.delta, STD3.delta_prime):
        assert verify_completeness(lnd_certificate(x))


def test_diagonal_certificate():
    assert verify_completeness(diagonal_certificate(STD3.eps))
    assert verify_completeness(diagonal_certificate(STD3.torus))
    with pytest.raises(ValueError):
        diagonal_certificate(STD3.delta)


def test_function_times_field_certificate():
    y = xword(P3, (), ry=1).lift()
    cert = function_times_field_certificate(y, lnd_certificate(STD3.delta_prime))
    assert cert.kind is CertKind.FUNCTION_TIMES_FIELD
    assert verify_completeness(cert)
    # a3^2 is not annihilated by the square of delta', so it is rejected
    with pytest.raises(ValueError):
        function_times_field_certificate(
            Polynomial.variable(3) ** 2, lnd_certificate(STD3.delta_prime)
        )


def test_y_eps_is_not_locally_nilpotent():
    y = xword(P3, (), ry=1).lift()
    with pytest.raises(ValueError):
        lnd_certificate(STD3.eps.times(y), bound=12)


def test_conjugate_certificates():
    phi = exp_lnd(word_field(xword(P3, (2,)), STD3.delta))
    for inner in (
        lnd_certificate(STD3.delta_prime),
        diagonal_certificate(STD3.eps),
        function_times_field_certificate(
            xword(P3, (), ry=1).lift(), lnd_certificate(STD3.delta_prime)
        ),
    ):
        cert = conjugate_certificate(phi, inner)
        assert verify_completeness(cert)
        assert cert.field == pushforward(phi, inner.field)


# -- scripts and the planner ---------------------------------------------------


def test_delta_family_script():
    word = xword(P3, (0, 2))
    script = plan_delta_target(word, P3)
    check = verify_script(script)
    assert check.ok, check.message
    assert script.target == word_field(word, STD3.delta)


def test_eps_family_scripts():
    for indices, ry in (((0,), 0), ((2,), 0), ((0, 1, 2), 0), ((), 2), ((1, 2, 2), 3)):
        word = xword(P3, indices, ry=ry)
        script = plan_eps_target(word, P3)
        check = verify_script(script)
        assert check.ok, (indices, ry, check.message)
        assert script.target == word_field(word, STD3.eps)


def test_module_element_scripts():
    rng = Random(37)
    gen = module_generator_word(P3)
    for _ in range(10):
        coeff = random_word(rng, P3, max_degree=3)
        script = plan_module_element(coeff, P3)
        check = verify_script(script)
        assert check.ok, (str(coeff), check.message)
        assert script.target == word_field(coeff.times(gen), STD3.eps)


def test_planner_rejects_unreachable_targets():
    with pytest.raises(UnsupportedTargetError):
        plan_delta_target(xword(P3, (), ry=1), P3)
    with pytest.raises(UnsupportedTargetError):
        plan_eps_target(xword(P3, (), ry=1), P3)


def test_script_mutation_is_caught():
    script = plan_eps_target(xword(P3, (0, 2)), P3)
    rng = Random(41)
    idx = rng.randrange(len(script.steps))
    bad = replace(script.steps[idx], field=script.steps[idx].field + STD3.delta)
    script.steps[idx] = bad
    check = verify_script(script)
    assert not check.ok
    assert check.failed_step == idx
    assert check.difference is not None and not check.difference.is_zero


def test_script_json_round_trip():
    script = plan_eps_target(xword(P3, (1, 2), ry=3), P3)
    text = script_to_json(script, indent=2)
    restored = script_from_json(text)
    assert verify_script(restored).ok
    assert script_to_json(restored) == script_to_json(script)
    assert json.loads(text)["n"] == 3


# -- descent and spanning ------------------------------------------------------


def test_descend_standard_fields():
    assert descend(STD3.eps).is_nontrivial
    assert descend(STD3.delta).is_nontrivial
    assert descend(STD3.delta_prime).is_nontrivial
    assert not descend(STD3.torus).is_nontrivial


def test_descend_rejects_bad_fields():
    with pytest.raises(ValueError):
        descend(STD3.delta.times(Polynomial.variable(1)))


def test_spanning_example():
    p = SurfacePoint((Fraction(1), Fraction(1), Fraction(1), Fraction(2)), P3)
    eps_row = descend(STD3.eps).row_at(p)
    delta_row = descend(STD3.delta).row_at(p)
    assert eps_row == [1, 0, 0, -2, -8]
    assert delta_row == [4, 4, 4, 4, 0]
    assert matrix_rank([eps_row, delta_row]) == 2
    assert spanning_check([descend(STD3.eps), descend(STD3.delta)], p) == 2


def test_surface_point_validation():
    with pytest.raises(ValueError):
        SurfacePoint((Fraction(1), Fraction(1), Fraction(1), Fraction(1)), P3)


def test_module_generators_span():
    for n in (2, 3):
        params = SurfaceParameters(n)
        std = standard_fields(params)
        gen = word_field(module_generator_word(params), std.eps)
        phi = exp_lnd(word_field(xword(params, (params.b,)), std.delta))
        fields = [descend(gen), descend(pushforward(phi, gen))]
        assert find_spanning_point(fields, params, limit=100) is not None


# -- pipeline ------------------------------------------------------------------


def test_pipeline_subset_and_determinism():
    cfg = RunConfig(n=2, stages=("fields", "functions", "commutation"), module_samples=1)
    r1 = density_pipeline(cfg).to_dict()
    r2 = density_pipeline(cfg).to_dict()
    assert [s["name"] for s in r1["stages"]] == ["fields", "functions", "commutation"]
    assert r1["status"] == "PASS"
    for rep in (r1, r2):
        rep.pop("timestamp")
        for stage in rep["stages"]:
            stage.pop("elapsed")
    assert r1 == r2


def test_pipeline_config_validation():
    with pytest.raises(ValueError):
        RunConfig(n=1)
    with pytest.raises(ValueError):
        RunConfig(n=2, stages=("nonsense",))
    with pytest.raises(ValueError):
        RunConfig(n=2, module_samples=0)
