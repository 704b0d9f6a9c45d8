"""Verification suites — bohrkit verify --suite NAME."""

from __future__ import annotations

import dataclasses

import click

from bohrkit.cli.common import REAL, SPACE, emit, handle_errors, output_options, verification_exit_code
from bohrkit.config import load_config

SUITES = ("schwarz_pick", "lemma33", "example11", "unconditional", "certified", "all")

UNCONDITIONAL_SPACES = (
    "lq:q=2:n=4",
    "mixed:m=2:s=1:n=2:t=inf",
    "lorentz:s=2:t=1:n=4",
    "orlicz:psi=x^2+x^3:n=3",
)


def _schwarz_pick(settings, count):
    from bohrkit.estimator import run_schwarz_pick_suite, verify_monomial_coefficients
    from bohrkit.spaces import SpaceDescriptor

    reports = [run_schwarz_pick_suite(count, settings.seed, settings)]
    for q in (1.0, 2.0, float("inf")):
        report = verify_monomial_coefficients(SpaceDescriptor.lq(q, 2))
        reports.append(dataclasses.replace(report, name=f"{report.name}[q={q:g}]"))
    return reports


def _lemma33(space, p, lam, settings):
    from bohrkit.estimator import estimate_radius, verify_lemma33_chain
    from bohrkit.polynomials import headline_family, homogeneous_indices, monomial

    family = headline_family(space)
    if space.kind == "lq":
        family += [monomial(alpha, space=space) for m in (1, 2, 3) for alpha in homogeneous_indices(space.dim, m)]
    by_degree: dict[int, list] = {}
    for f in family:
        if f.homogeneous_degree:
            by_degree.setdefault(f.homogeneous_degree, []).append(f)
    full = estimate_radius(space, family, None, p, lam, settings.tolerance, settings, "lemma33")
    homogeneous = {
        m: estimate_radius(space, members, None, p, lam, settings.tolerance, settings, f"lemma33[m={m}]")
        for m, members in sorted(by_degree.items())
    }
    unit = {
        m: estimate_radius(space, members, None, p, 1.0, settings.tolerance, settings, f"lemma33[m={m},lambda=1]")
        for m, members in sorted(by_degree.items())
    }
    return [verify_lemma33_chain(space, full, homogeneous, p, lam, 1.0, unit)]


def _unconditional(seed):
    from bohrkit.spaces import SpaceDescriptor, check_unconditionality

    return [check_unconditionality(SpaceDescriptor.parse(text), seed=seed) for text in UNCONDITIONAL_SPACES]


@click.command()
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--space", type=SPACE, default=None, help="Space for lemma33/example11/certified")
@click.option("--r", "radii", type=REAL, multiple=True, help="Radii for the necessity scan")
@click.option("--p", type=REAL, default=1.0, show_default=True)
@click.option("--lambda", "lam", type=REAL, default=None, help="λ (default 2 for lemma33, 1 for example11)")
@click.option("--count", type=int, default=1000, show_default=True, help="Random polynomials in the Schwarz–Pick suite")
@click.option("--ceiling", type=int, default=None, help="Largest k tried by the necessity scan")
@click.option("--seed", type=int, default=None)
@output_options
@handle_errors
def verify(suite, space, radii, p, lam, count, ceiling, seed, output_format, output_path) -> None:
    """Run verification suites; exits non-zero when any check fails.

    Example: bohrkit verify --suite example11 --r 0.1 --p 1
    """
    from bohrkit.estimator import verify_certified_bounds, verify_necessity
    from bohrkit.estimator.checks import DEFAULT_SCAN_CEILING
    from bohrkit.output.console import console
    from bohrkit.output.formatters import format_checks_table, rows_csv, to_json
    from bohrkit.spaces import SpaceDescriptor

    config = load_config()
    settings = config.numeric if seed is None else config.numeric.model_copy(update={"seed": seed})
    output_format = output_format or config.output_format
    selected = SUITES[:-1] if suite == "all" else (suite,)

    reports = []
    for name in selected:
        with console.status(f"[status.running]Running {name}...[/status.running]"):
            if name == "schwarz_pick":
                reports += _schwarz_pick(settings, count)
            elif name == "lemma33":
                reports += _lemma33(space or SpaceDescriptor.lq(2, 2), p, 2.0 if lam is None else lam, settings)
            elif name == "example11":
                reports.append(verify_necessity(
                    space or SpaceDescriptor.polydisc(1),
                    tuple(radii) or (0.5, 0.1, 0.01),
                    p,
                    1.0 if lam is None else lam,
                    ceiling or DEFAULT_SCAN_CEILING,
                ))
            elif name == "unconditional":
                reports += _unconditional(settings.seed)
            elif name == "certified":
                reports.append(verify_certified_bounds(
                    space or SpaceDescriptor.polydisc(1), tol=settings.tolerance, settings=settings
                ))

    if output_format == "table":
        format_checks_table(reports, console)
        if output_path:
            emit(to_json([r.to_dict() for r in reports]), output_path)
    elif output_format == "csv":
        rows = [
            {"name": r.name, "pass": str(r.passed).lower(), "worst_margin": repr(r.worst_margin),
             "uncertainty": repr(r.uncertainty)}
            for r in reports
        ]
        emit(rows_csv(rows, ("name", "pass", "worst_margin", "uncertainty")), output_path)
    else:
        emit(to_json([r.to_dict() for r in reports]), output_path)

    failures = sum(not r.passed for r in reports)
    if failures:
        raise SystemExit(verification_exit_code(failures))
