import json

from click.testing import CliRunner

from dgverify.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_verify_passes_for_small_n():
    result = run(
        "verify", "--n", "2", "--stages", "fields,functions,commutation", "--quiet"
    )
    assert result.exit_code == 0, result.output


def test_verify_rejects_bad_n():
    assert run("verify", "--n", "1").exit_code == 2
    assert run("verify", "--n", "2", "--stages", "bogus").exit_code == 2


def test_verify_writes_deterministic_report(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        result = run(
            "verify", "--n", "2", "--stages", "fields,commutation",
            "--quiet", "--report", str(path),
        )
        assert result.exit_code == 0
    reports = [json.loads(p.read_text()) for p in paths]
    for rep in reports:
        rep.pop("timestamp")
        for stage in rep["stages"]:
            stage.pop("elapsed")
    assert reports[0] == reports[1]
    assert reports[0]["status"] == "PASS"


def test_decompose():
    result = run("decompose", "--n", "3", "--exponents", "2,1,1,3")
    assert result.exit_code == 0
    assert result.output.strip() == "z^2*x1"
    result = run("decompose", "--n", "3", "--exponents", "1,3,1,0")
    assert result.output.strip() == "y*x0"
    assert run("decompose", "--n", "3", "--exponents", "1,0,0,0").exit_code == 2
    assert run("decompose", "--n", "3", "--exponents", "1,0,0").exit_code == 2


def test_normal_form():
    result = run("normal-form", "--n", "4", "--word", "x1*x2^2")
    assert result.exit_code == 0
    assert result.output.strip() == "x0*x2*xb"
    assert run("normal-form", "--n", "4", "--word", "y*x1").exit_code == 2
    assert run("normal-form", "--n", "4", "--word", "x9").exit_code == 2


def test_bracket():
    result = run("bracket", "--n", "3", "--x", "eps", "--y", "delta")
    assert result.exit_code == 0
    assert result.output.strip() == "-delta"
    result = run("bracket", "--n", "3", "--x", "delta", "--y", "eps")
    assert result.output.strip() == "delta"
    result = run("bracket", "--n", "3", "--x", "eps", "--y", "eps")
    assert result.output.strip() == "0; 0; 0; 0"
    # [eps, deltaprime] = 2*deltaprime for n = 3; not a named field, so raw
    result = run("bracket", "--n", "3", "--x", "a1; 0; 0; -a4", "--y", "deltaprime")
    assert result.exit_code == 0
    assert result.output.strip() == "0; 0; 2*a1^2; 2*a1*a2^2"
    assert run("bracket", "--n", "3", "--x", "nope; 0", "--y", "eps").exit_code == 2
