"""Space invariants command — bohrkit norms --space GRAMMAR."""

from __future__ import annotations

import click

from bohrkit.cli.common import REAL, SPACE, emit, handle_errors, output_options
from bohrkit.config import load_config


def _parse_point(text: str, dim: int) -> list[complex]:
    from bohrkit.exceptions import DimensionMismatchError, GrammarError

    try:
        values = [complex(part.strip().replace("i", "j")) for part in text.split(",")]
    except ValueError as e:
        raise GrammarError(text, f"expected comma-separated complex numbers ({e})") from e
    if len(values) != dim:
        raise DimensionMismatchError(dim, len(values), "--point")
    return values


@click.command()
@click.option("--space", type=SPACE, required=True, help="Space grammar, e.g. lorentz:s=2:t=1:n=4")
@click.option("--target", type=SPACE, default=None, help="Second space for ‖Id: space → target‖")
@click.option("--p", type=REAL, default=None, help="Also report sup ‖z‖_p over the ball")
@click.option("--method", type=click.Choice(["auto", "closed_form", "numeric"]), default="auto", show_default=True)
@click.option("--point", default=None, help="Evaluate the Minkowski functional at z, e.g. 0.5,0.5i")
@click.option("--unconditional", is_flag=True, help="Also run the unconditionality check")
@click.option("--seed", type=int, default=None)
@output_options
@handle_errors
def norms(space, target, p, method, point, unconditional, seed, output_format, output_path) -> None:
    """Report embedding norms and other invariants of a space.

    Example: bohrkit norms --space lq:q=2:n=4 --p 1
    """
    from bohrkit.output.console import console
    from bohrkit.models.result import jsonable
    from bohrkit.output.formatters import format_norms_table, rows_csv, to_json
    from bohrkit.spaces import (
        basis_norms,
        check_unconditionality,
        contains,
        dual_ones_estimate,
        embed_norm_estimate,
        minkowski_functional,
        ones_norm,
    )
    from bohrkit.spaces.descriptor import SpaceDescriptor

    config = load_config()
    seed = config.numeric.seed if seed is None else seed
    budget = config.numeric.sampling
    n = space.dim
    rows: list[dict] = [
        {"quantity": "space", "value": str(space), "method": ""},
        {"quantity": "max ‖e_k‖", "value": float(basis_norms(space).max()), "method": "closed_form"},
        {"quantity": "‖Σe_k‖", "value": ones_norm(space), "method": "closed_form"},
    ]

    def add(name: str, estimate) -> None:
        rows.append({"quantity": name, "value": estimate.value, "method": estimate.method, "converged": estimate.converged})

    add("‖Σe*_k‖ (dual ones)", dual_ones_estimate(space, method, budget, seed))
    add("‖Id: ℓ2 → Z‖", embed_norm_estimate(SpaceDescriptor.lq(2, n), space, method, budget, seed))
    add("‖Id: Z → ℓ1‖", embed_norm_estimate(space, SpaceDescriptor.lq(1, n), method, budget, seed))
    add("‖Id: Z → ℓ∞‖", embed_norm_estimate(space, SpaceDescriptor.polydisc(n), method, budget, seed))
    if p is not None:
        add(f"sup ‖z‖_{p:g} on B_Z", embed_norm_estimate(space, SpaceDescriptor.lq(p, n), method, budget, seed))
    if target is not None:
        add(f"‖Id: Z → {target}‖", embed_norm_estimate(space, target, method, budget, seed))
        add(f"‖Id: {target} → Z‖", embed_norm_estimate(target, space, method, budget, seed))
    if point is not None:
        z = _parse_point(point, n)
        rows.append({"quantity": "p_Ω(z)", "value": minkowski_functional(space, z), "method": "closed_form"})
        rows.append({"quantity": "z ∈ Ω", "value": contains(space, z), "method": "closed_form"})
    if unconditional:
        report = check_unconditionality(space, seed=seed)
        rows.append({"quantity": "unconditional deviation", "value": report.max_deviation, "method": report.status_label})

    if output_format is None:
        output_format = config.output_format
    if output_format == "table":
        format_norms_table(rows, console)
    elif output_format == "csv":
        emit(rows_csv(rows, ("quantity", "value", "method")), output_path)
    else:
        emit(to_json(jsonable(rows)), output_path)
