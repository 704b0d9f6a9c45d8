"""Bound evaluation command — bohrkit bounds --formula ID ..."""

from __future__ import annotations

import click

from bohrkit.cli.common import REAL, SPACE, constants_options, emit, handle_errors, output_options, resolve_constants
from bohrkit.config import load_config
from bohrkit.models.config import RunConfig


@click.command()
@click.option("--formula", "formulas", multiple=True, type=click.Choice(
    ["thm11", "cor11", "thm19", "thm12", "thm12u", "cor14", "thm13a", "thm13", "sandwich"]),
    help="Formula id (repeatable)")
@click.option("--application", is_flag=True, help="Lower and upper bounds for --space through computed invariants")
@click.option("--coefficients", type=click.Choice(["finite", "infinite"]), default="finite",
              help="Coefficient algebra dimension for --application")
@click.option("--space", type=SPACE, default=None, help="Space grammar, e.g. lq:q=2:n=4")
@click.option("--p", type=REAL, default=1.0, show_default=True)
@click.option("--q", type=REAL, default=None, help="Minkowski exponent (inf allowed)")
@click.option("--lambda", "lam", type=REAL, default=2.0, show_default=True)
@click.option("--n", type=int, default=None, help="Dimension when no --space is given")
@click.option("--normU", "norm_u", type=REAL, default=1.0, show_default=True, help="‖U‖ for thm11/thm19")
@click.option("--regime", default=None, help="Case of thm12/thm13a (p_eq_1, p_ge_2, p_between) or cor14 (p_eq_1, p_ge_q, p_lt_q)")
@click.option("--item", type=click.Choice(["subset_l2", "symmetric_2convex"]), default=None, help="thm13a item")
@click.option("--sandwich", "sandwich", type=click.Choice(["two_sided", "subset_l2", "symmetric_2convex"]),
              default="two_sided", show_default=True)
@click.option("--cot", "cot_x", type=REAL, default=2.0, show_default=True, help="Cot(X)")
@click.option("--cotype", "cotype_t", type=REAL, default=None, help="Finite cotype t of X (default: Cot(X))")
@click.option("--seed", type=int, default=None)
@constants_options
@output_options
@handle_errors
def bounds(
    formulas: tuple[str, ...],
    application: bool,
    coefficients: str,
    space,
    p: float,
    q: float | None,
    lam: float,
    n: int | None,
    norm_u: float,
    regime: str | None,
    item: str | None,
    sandwich: str,
    cot_x: float,
    cotype_t: float | None,
    seed: int | None,
    consts: tuple[str, ...],
    constants_file: str | None,
    output_format: str | None,
    output_path: str | None,
) -> None:
    """Evaluate closed-form Bohr-radius bounds.

    Example: bohrkit bounds --formula cor14 --regime p_eq_1 --q inf --n 100 --lambda 2
    """
    from bohrkit.bounds.dispatch import FormulaRequest, application_bounds, evaluate_formula
    from bohrkit.output.console import console
    from bohrkit.output.formatters import bound_rows, format_bounds_table, reports_csv, to_json

    config = load_config()
    run = RunConfig(
        space=str(space) if space is not None else None,
        p=p, q=q, lam=lam, n=n,
        formula=",".join(formulas) or None,
        constants=resolve_constants(config, consts, constants_file),
        seed=config.numeric.seed if seed is None else seed,
        tolerance=config.numeric.tolerance,
        output_format=output_format or config.output_format,
        output_path=output_path,
    )
    if not formulas and not application:
        raise click.UsageError("give at least one --formula or --application")

    if application:
        if space is None:
            raise click.UsageError("--application needs --space")
        reports = application_bounds(
            space, run.p, run.lam, run.constants,
            finite_dimensional=coefficients == "finite",
            q=q if q is not None else 2.0, cot_x=cot_x, cotype_t=cotype_t,
            budget=config.numeric.sampling, seed=run.seed,
        )
    else:
        request = FormulaRequest(
            space=space, p=run.p, q=run.q, lam=run.lam, n=run.n, norm_u=norm_u,
            regime=regime, item=item, sandwich=sandwich, cot_x=cot_x, cotype_t=cotype_t,
            constants=run.constants, budget=config.numeric.sampling, seed=run.seed,
        )
        reports = [report for formula in formulas for report in evaluate_formula(formula, request)]

    if run.output_format == "table":
        format_bounds_table(reports, console)
        if run.output_path:
            emit(to_json(bound_rows(reports)), run.output_path)
    elif run.output_format == "csv":
        emit(reports_csv(reports), run.output_path)
    else:
        emit(to_json(bound_rows(reports)), run.output_path)