"""Dimension sweep command — bohrkit sweep --formula ID --n A..B[:STEP]."""

from __future__ import annotations

import click

from bohrkit.bounds.dispatch import FORMULA_IDS
from bohrkit.cli.common import (
    REAL,
    SPACE,
    constants_options,
    emit,
    handle_errors,
    output_options,
    parse_n_range,
    resolve_constants,
)
from bohrkit.config import load_config
from bohrkit.models.config import RunConfig


@click.command()
@click.option("--formula", "formulas", multiple=True, required=True, type=click.Choice(list(FORMULA_IDS)))
@click.option("--n", "n_range", required=True, help="A..B, A..B:+K or A..B:xK")
@click.option("--space", type=SPACE, default=None, help="Space template; its dimension is replaced by each n")
@click.option("--p", type=REAL, default=1.0, show_default=True)
@click.option("--q", type=REAL, default=None)
@click.option("--lambda", "lam", type=REAL, default=2.0, show_default=True)
@click.option("--regime", default=None)
@click.option("--item", type=click.Choice(["subset_l2", "symmetric_2convex"]), default=None)
@click.option("--cot", "cot_x", type=REAL, default=2.0, show_default=True)
@click.option("--cotype", "cotype_t", type=REAL, default=None)
@click.option("--seed", type=int, default=None)
@constants_options
@output_options
@handle_errors
def sweep(formulas, n_range, space, p, q, lam, regime, item, cot_x, cotype_t, seed, consts, constants_file,
          output_format, output_path) -> None:
    """Evaluate formulas over a range of dimensions (CSV by default).

    Example: bohrkit sweep --formula cor14 --regime p_eq_1 --q inf --n 1..1000:x10 --lambda 2
    """
    from bohrkit.bounds.dispatch import FormulaRequest, evaluate_formula
    from bohrkit.output.console import console
    from bohrkit.output.formatters import format_bounds_table, sweep_csv, to_json

    config = load_config()
    run = RunConfig(
        space=str(space) if space is not None else None,
        p=p, q=q, lam=lam, n_range=n_range,
        formula=",".join(formulas),
        constants=resolve_constants(config, consts, constants_file),
        seed=config.numeric.seed if seed is None else seed,
        tolerance=config.numeric.tolerance,
        output_format=output_format or "csv",
        output_path=output_path,
    )
    dims = parse_n_range(n_range)

    rows = []
    with console.status(f"[status.running]Sweeping {len(dims)} dimensions...[/status.running]"):
        for n in dims:
            request = FormulaRequest(
                space=space.with_dim(n) if space is not None else None,
                p=run.p, q=run.q, lam=run.lam, n=n, regime=regime, item=item,
                cot_x=cot_x, cotype_t=cotype_t, constants=run.constants,
                budget=config.numeric.sampling, seed=run.seed,
            )
            rows += [(n, report) for formula in formulas for report in evaluate_formula(formula, request)]

    if run.output_format == "csv":
        emit(sweep_csv(rows), run.output_path)
    elif run.output_format == "table":
        format_bounds_table([report for _, report in rows], console)
    else:
        emit(to_json([{"n": n, **report.to_dict()} for n, report in rows]), run.output_path)
