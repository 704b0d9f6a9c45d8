"""Empirical radius command — bohrkit estimate --family NAME ..."""

from __future__ import annotations

import click

from bohrkit.cli.common import EXIT_NUMERIC, REAL, SPACE, emit, handle_errors, output_options
from bohrkit.config import load_config
from bohrkit.exceptions import ParameterError
from bohrkit.models.config import NumericSettings, RunConfig

FAMILY_NAMES = ("mobius", "lifts", "monomials", "linear", "random")


def build_family(name: str, space, settings: NumericSettings, degree: int, count: int,
                 kind: str, k: int, holomorphic: bool, override: bool):
    """Resolve a --family value into a list of polynomials."""
    from bohrkit.polynomials import (
        DEFAULT_A_GRID,
        RandomFamilySpec,
        coordinate_lift,
        homogeneous_indices,
        linear_form,
        mobius_family,
        monomial,
        random_family,
        read_family,
    )

    if name.startswith("file:"):
        return read_family(name[len("file:"):])
    if name == "mobius":
        if space.dim != 1:
            raise ParameterError("family", name, "Möbius members live in one variable; use lifts for n > 1")
        return [mobius_family(a) for a in DEFAULT_A_GRID]
    if name == "lifts":
        return [coordinate_lift(a, space) for a in DEFAULT_A_GRID]
    if name == "monomials":
        return [monomial(alpha, space=space) for m in range(1, degree + 1) for alpha in homogeneous_indices(space.dim, m)]
    if name == "linear":
        return [linear_form(space)]
    if name == "random":
        spec = RandomFamilySpec(
            n=space.dim, max_degree=degree, coeff_kind=kind, k=k, count=count,
            include_antiholomorphic=not holomorphic, override=override,
        )
        return random_family(spec, settings.seed, space, settings.sampling, settings.guardrails)
    raise ParameterError("family", name, f"must be one of {', '.join(FAMILY_NAMES)} or file:PATH")


@click.command()
@click.option("--space", type=SPACE, default="lq:q=inf:n=1", show_default=True)
@click.option("--family", "family_name", default="mobius", show_default=True,
              help="mobius, lifts, monomials, linear, random or file:PATH")
@click.option("--p", type=REAL, default=1.0, show_default=True)
@click.option("--lambda", "lam", type=REAL, default=1.0, show_default=True)
@click.option("--normU", "norm_u", type=REAL, default=1.0, show_default=True, help="U = normU·I")
@click.option("--tol", type=REAL, default=None, help="Bisection tolerance (default from config)")
@click.option("--homogeneous", "m", type=int, default=None, help="Estimate the m-homogeneous radius from degree-m parts")
@click.option("--degree", type=int, default=2, show_default=True, help="Max degree for monomials/random")
@click.option("--count", type=int, default=10, show_default=True, help="Random family size")
@click.option("--kind", type=click.Choice(["scalar", "matrix"]), default="scalar", show_default=True)
@click.option("--k", type=int, default=2, show_default=True, help="Matrix size for --kind matrix")
@click.option("--holomorphic", is_flag=True, help="Random family without anti-holomorphic part")
@click.option("--override", is_flag=True, help="Lift the desk-scale guardrails")
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None, help="Threads for family members")
@output_options
@handle_errors
def estimate(space, family_name, p, lam, norm_u, tol, m, degree, count, kind, k, holomorphic, override,
             seed, workers, output_format, output_path) -> None:
    """Upper-estimate a Bohr radius by bisection over a test family.

    Example: bohrkit estimate --space lq:q=inf:n=1 --family mobius --lambda 1 --p 1 --tol 1e-4
    """
    from bohrkit.estimator import estimate_homogeneous_radius, estimate_radius
    from bohrkit.output.console import console
    from bohrkit.output.formatters import format_radius_table, rows_csv, to_json
    from bohrkit.polynomials import BoundedOperatorU

    config = load_config()
    run = RunConfig(
        space=str(space), p=p, lam=lam, n=space.dim,
        seed=config.numeric.seed if seed is None else seed,
        tolerance=config.numeric.tolerance if tol is None else tol,
        output_format=output_format or config.output_format,
        output_path=output_path,
    )
    settings = config.numeric.model_copy(update={
        "seed": run.seed,
        "tolerance": run.tolerance,
        "workers": workers or config.numeric.workers,
    })

    with console.status("[status.running]Building family...[/status.running]"):
        family = build_family(family_name, space, settings, degree, count, kind, k, holomorphic, override)
    if not family:
        raise ParameterError("family", family_name, "is empty")
    U = BoundedOperatorU.identity(norm_u)

    with console.status(f"[status.running]Bisecting over {len(family)} members...[/status.running]"):
        if m is None:
            result = estimate_radius(space, family, U, run.p, run.lam, run.tolerance, settings, family_name)
        else:
            parts = [f.homogeneous_part(m) for f in family]
            parts = [part for part in parts if not part.is_zero]
            if not parts:
                raise ParameterError("homogeneous", m, f"no member of {family_name} has a degree-{m} part")
            result = estimate_homogeneous_radius(space, m, parts, U, run.p, run.lam, run.tolerance, settings, f"{family_name}[m={m}]")

    if run.output_format == "table":
        format_radius_table(result, console)
        if run.output_path:
            emit(to_json(result.to_dict()), run.output_path)
    elif run.output_format == "csv":
        rows = [
            {"function_id": item.function_id, "critical_r": repr(item.critical_r), "margin": repr(item.margin),
             "certified": str(item.certified).lower()}
            for item in result.per_function_margins
        ]
        emit(rows_csv(rows, ("function_id", "critical_r", "margin", "certified")), run.output_path)
    else:
        emit(to_json(result.to_dict()), run.output_path)

    if result.failed:
        raise SystemExit(EXIT_NUMERIC)
