"""Batch command-line front end for the scoring pipeline.

Exit codes: 0 success, 1 validation failure, 2 runtime failure. Every
stochastic subcommand takes an explicit seed and is fully deterministic given
its inputs. Set AHP_LOG_LEVEL to adjust verbosity.
"""

from __future__ import annotations

import logging
import os
import sys

import click
import numpy as np

from . import dataio
from .errors import AhpError, ValidationError
from .matrices import random_index
from .scoring import score_cohort
from .uncertainty import monte_carlo_pipeline_variance

log = logging.getLogger("ahpscore")

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def _setup_logging():
    level = os.environ.get("AHP_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(message)s")


def _load_bundle(hierarchy_path, judgments_path, measurements_path=None):
    hierarchy = dataio.load_hierarchy(hierarchy_path)
    loaded = dataio.load_judgments(judgments_path, hierarchy)
    measurements = None
    if measurements_path is not None:
        measurements = dataio.load_measurements(measurements_path, hierarchy)
    return hierarchy, loaded, measurements


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Group-AHP scoring pipeline."""
    _setup_logging()


@main.command("validate")
@click.option("--hierarchy", "hierarchy_path", required=True, type=click.Path(exists=True))
@click.option("--judgments", "judgments_path", required=True, type=click.Path(exists=True))
@click.option("--measurements", "measurements_path", type=click.Path(exists=True))
def cmd_validate(hierarchy_path, judgments_path, measurements_path):
    """Validate inputs; exit 0 iff everything is usable."""
    try:
        hierarchy, loaded, measurements = _load_bundle(
            hierarchy_path, judgments_path, measurements_path
        )
    except ValidationError as exc:
        _fail(f"{exc}" + "".join(f"\n  - {d}" for d in exc.diagnostics), EXIT_VALIDATION)
    click.echo(
        f"hierarchy: {hierarchy.k} criteria, {hierarchy.n_indicators} indicators "
        f"{hierarchy.sizes}"
    )
    for w in loaded.warnings:
        click.echo(f"warning: {w}")
    for eid, problems in sorted(loaded.rejected.items()):
        click.echo(f"rejected expert {eid!r}:")
        for p in problems:
            click.echo(f"  - {p}")
    if measurements is not None:
        for w in measurements.warnings:
            click.echo(f"warning: {w}")
        for d in measurements.diagnostics:
            click.echo(f"measurement problem: {d}")
    click.echo(f"experts accepted: {len(loaded.experts)}")
    if loaded.rejected or not loaded.experts:
        sys.exit(EXIT_VALIDATION)


@main.command("consistency")
@click.option("--hierarchy", "hierarchy_path", required=True, type=click.Path(exists=True))
@click.option("--judgments", "judgments_path", required=True, type=click.Path(exists=True))
@click.option("--ri-samples", default=10_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
def cmd_consistency(hierarchy_path, judgments_path, ri_samples, seed):
    """Per-expert, per-matrix consistency table."""
    try:
        hierarchy, loaded, _ = _load_bundle(hierarchy_path, judgments_path)
        if not loaded.experts:
            _fail("no valid expert judgments", EXIT_VALIDATION)
        from .scoring import cohort_consistency

        reports = cohort_consistency(hierarchy, loaded.experts, ri_samples, seed)
    except ValidationError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except AhpError as exc:
        _fail(str(exc), EXIT_RUNTIME)
    header = f"{'expert':<12} {'matrix':<10} {'lambda':>10} {'CI':>9} {'RI':>7} {'CR':>9} {'GCI':>9}  verdicts"
    click.echo(header)
    for eid, per_matrix in reports.items():
        for name, r in per_matrix.items():
            verdict = "CR:" + ("ok" if r.cr_accepted else "REJECT")
            verdict += " AL:" + ("ok" if r.alonso_lamata_accepted else "REJECT")
            click.echo(
                f"{eid:<12} {name:<10} {r.lambda_max:>10.6f} {r.ci:>9.5f} "
                f"{r.ri:>7.4f} {r.cr:>9.5f} {r.gci:>9.5f}  {verdict}"
            )


@main.command("score")
@click.option("--hierarchy", "hierarchy_path", required=True, type=click.Path(exists=True))
@click.option("--judgments", "judgments_path", required=True, type=click.Path(exists=True))
@click.option("--measurements", "measurements_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--ecdf", "convention", type=click.Choice(["standard", "hazen"]), default="standard", show_default=True)
@click.option("--ri-samples", default=10_000, show_default=True)
@click.option("--seed", required=True, type=int)
def cmd_score(hierarchy_path, judgments_path, measurements_path, out_path, convention, ri_samples, seed):
    """Run the full pipeline and write a results document."""
    try:
        hierarchy, loaded, measurements = _load_bundle(
            hierarchy_path, judgments_path, measurements_path
        )
        if not loaded.experts:
            _fail("no valid expert judgments", EXIT_VALIDATION)
        result = score_cohort(
            hierarchy, loaded.experts, measurements,
            convention=convention, ri_samples=ri_samples, seed=seed,
        )
    except ValidationError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except AhpError as exc:
        _fail(str(exc), EXIT_RUNTIME)
    params = {
        "ecdf": convention,
        "ri_samples": ri_samples,
        "seed": seed,
        "experts": [j.expert_id for j in loaded.experts],
    }
    dataio.save_results(out_path, result, params)
    for s in result.scores:
        click.echo(f"{s.project_id:<16} {s.score:.6f} +- {s.sigma:.6f}")
    click.echo(f"results written to {out_path}")


@main.command("ri-table")
@click.option("--n-min", default=3, show_default=True)
@click.option("--n-max", default=9, show_default=True)
@click.option("--samples", default=100_000, show_default=True)
@click.option("--seed", required=True, type=int)
def cmd_ri_table(n_min, n_max, samples, seed):
    """Random-index table for matrix sizes n_min..n_max."""
    if not 3 <= n_min <= n_max <= 15:
        _fail("supported size range is 3..15", EXIT_VALIDATION)
    click.echo(f"{'n':>3} {'RI':>8}   (samples={samples}, seed={seed})")
    for n in range(n_min, n_max + 1):
        click.echo(f"{n:>3} {random_index(n, samples, seed):>8.4f}")


@main.command("simulate")
@click.option("--hierarchy", "hierarchy_path", required=True, type=click.Path(exists=True))
@click.option("--judgments", "judgments_path", required=True, type=click.Path(exists=True))
@click.option("--measurements", "measurements_path", required=True, type=click.Path(exists=True))
@click.option("--noise", default=0.1, show_default=True)
@click.option("--samples", default=10_000, show_default=True)
@click.option("--ecdf", "convention", type=click.Choice(["standard", "hazen"]), default="standard", show_default=True)
@click.option("--seed", required=True, type=int)
def cmd_simulate(hierarchy_path, judgments_path, measurements_path, noise, samples, convention, seed):
    """Compare analytic score sigmas against the Monte-Carlo oracle."""
    try:
        hierarchy, loaded, measurements = _load_bundle(
            hierarchy_path, judgments_path, measurements_path
        )
        if not loaded.experts:
            _fail("no valid expert judgments", EXIT_VALIDATION)
        result = score_cohort(hierarchy, loaded.experts, measurements, convention=convention)
        mc_var = monte_carlo_pipeline_variance(
            hierarchy, loaded.experts, measurements, noise, samples, seed, convention
        )
    except ValidationError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except AhpError as exc:
        _fail(str(exc), EXIT_RUNTIME)
    analytic = {s.project_id: s.sigma for s in result.scores}
    click.echo(f"noise={noise} samples={samples} seed={seed}")
    click.echo(f"{'project':<16} {'analytic':>10} {'mc':>10} {'rel gap':>9}")
    for pid, var in zip(measurements.project_ids, mc_var):
        if pid not in analytic:
            continue
        a, m = analytic[pid], float(np.sqrt(var))
        gap = abs(a - m) / m if m > 0 else (0.0 if a == 0 else float("inf"))
        click.echo(f"{pid:<16} {a:>10.6f} {m:>10.6f} {gap:>8.1%}")
