"""Command-line interface.

Exit codes: 0 all checks pass, 1 a check fails, 2 invalid input.
"""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .derivation import bracket as lie_bracket
from .derivation import format_field, parse_field
from .genring import format_word, parse_word, x_normal_form
from .lie_engine.fields import standard_fields
from .lie_engine.pipeline import STAGE_NAMES, RunConfig, density_pipeline
from .polyring import SurfaceParameters
from .torus import decompose_invariant


def _params(n: int) -> SurfaceParameters:
    try:
        return SurfaceParameters(n)
    except ValueError as exc:
        raise click.exceptions.UsageError(str(exc))


@click.group()
@click.version_option(version=__version__, prog_name="dgverify")
def main() -> None:
    """Exact verification for a family of affine surfaces."""


@main.command()
@click.option("--n", type=int, required=True, help="Surface parameter, n >= 2.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report to this file.")
@click.option("--nmax", type=int, default=3, show_default=True,
              help="Largest xb-power in the certified families.")
@click.option("--mmax", type=int, default=3, show_default=True,
              help="Largest x0-power in the certified families.")
@click.option("--rmax", type=int, default=3, show_default=True,
              help="Largest extra y-power in the certified families.")
@click.option("--word-degree", type=int, default=4, show_default=True,
              help="Degree cap for random module-element words.")
@click.option("--samples", type=int, default=50, show_default=True,
              help="Number of random module elements to certify.")
@click.option("--stages", default=None,
              help=f"Comma-separated subset of: {', '.join(STAGE_NAMES)}.")
@click.option("--seed", type=int, default=None, help="Seed for sampled checks.")
@click.option("--quiet", is_flag=True, help="Suppress per-stage lines.")
def verify(n, report_path, nmax, mmax, rmax, word_degree, samples, stages, seed, quiet):
    """Run the full staged verification for one parameter value."""
    kwargs = dict(
        n=n,
        n_max=nmax,
        m_max=mmax,
        r_max=rmax,
        word_degree=word_degree,
        module_samples=samples,
        stages=tuple(s.strip() for s in stages.split(",")) if stages else None,
    )
    if seed is not None:
        kwargs["seed"] = seed
    try:
        config = RunConfig(**kwargs)
    except ValueError as exc:
        raise click.exceptions.UsageError(str(exc))
    report = density_pipeline(config)
    if not quiet:
        for stage in report.stages:
            click.echo(
                f"[{stage.status}] {stage.name}: {stage.checked} checks"
                + (f" ({stage.counterexample})" if stage.counterexample else "")
            )
        click.echo(f"overall: {'PASS' if report.passed else 'FAIL'}")
    if report_path:
        with open(report_path, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    sys.exit(0 if report.passed else 1)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--exponents", required=True,
              help="Comma-separated ambient exponents X,Y,Z,W.")
def decompose(n, exponents):
    """Decompose an invariant ambient monomial over the ring generators."""
    params = _params(n)
    try:
        expo = tuple(int(t) for t in exponents.split(","))
        if len(expo) != 4:
            raise ValueError("need exactly four exponents")
        word = decompose_invariant(expo, params).to_word()
    except ValueError as exc:
        raise click.exceptions.UsageError(str(exc))
    click.echo(format_word(word))
    sys.exit(0)


@main.command("normal-form")
@click.option("--n", type=int, required=True)
@click.option("--word", "text", required=True,
              help="A product of generators, e.g. 'x1*x2^2*y'.")
def normal_form_cmd(n, text):
    """Rewrite the x-part of a generator word to its normal shape."""
    params = _params(n)
    try:
        word = parse_word(text, params)
    except ValueError as exc:
        raise click.exceptions.UsageError(str(exc))
    if word.ry or word.rz:
        raise click.exceptions.UsageError("normal-form expects a pure x-word")
    result = x_normal_form(word)
    click.echo(str(result))
    sys.exit(0)


@main.command("bracket")
@click.option("--n", type=int, required=True)
@click.option("--x", "x_text", required=True,
              help="A named field (delta, deltaprime, eps, E) or 'c1; c2; c3; c4'.")
@click.option("--y", "y_text", required=True,
              help="Second field, same format.")
def bracket_cmd(n, x_text, y_text):
    """Print the Lie bracket of two tangent fields."""
    params = _params(n)
    std = standard_fields(params).named()

    def read(text):
        if text.strip() in std:
            return std[text.strip()]
        try:
            return parse_field(text, params)
        except ValueError as exc:
            raise click.exceptions.UsageError(str(exc))

    result = lie_bracket(read(x_text), read(y_text))
    for name, f in std.items():
        if result == f:
            click.echo(name)
            sys.exit(0)
        if result == -f:
            click.echo(f"-{name}")
            sys.exit(0)
    click.echo(format_field(result))
    sys.exit(0)


if __name__ == "__main__":
    main()
