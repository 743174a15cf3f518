"""
feynlogic command line.

Every command builds a RunReport and renders it as text or line-delimited
JSON. Exit status is 0 when every check passes, 1 when a check fails and 2
on usage, parse or reference errors.

Usage:
    feynlogic validate spin_half
    feynlogic --format jsonl amplitude qutrit a-bcoarse-a
    feynlogic check-nd spin_half --runs 100000
    feynlogic reconstruct composite_pair
    feynlogic check-composition --samples 10000
    feynlogic action --lagrangian free --steps 20
"""

from __future__ import annotations

import functools
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import click
import numpy as np

from .. import __version__
from ..action import (
    ACTION_MAPS,
    COMPARISON_ANGLE,
    COMPARISON_GRID,
    COMPARISON_STEPS,
    COMPARISON_TOL,
    ActionFunctional,
    ActionScale,
    LatticeSpec,
    action as path_action,
    amplitude_from_action,
    chirp_lattice,
    compare_with_free_kernel,
    concatenate,
    evaluate_amplitude_map,
    fit_amplitude_map,
    invert as invert_path,
    lattice_propagator,
    random_path,
    single_step_kernel,
    split,
    straight_path,
)
from ..amplitudes import amplitude, check_closure_consistency, sum_rule_residual, unitarity_checks
from ..composition import candidate_table, composite_amplitude
from ..constants import AMPLITUDE_SLACK, IDENTITY_INTERACTION, PROBABILITY_TOL, RULE_TOL, UNITARY_TOL
from ..disturbance import (
    binomial_bounds,
    disturbance_report,
    insert_trivial,
    is_repeat_layout,
    monte_carlo,
)
from ..errors import (
    ConfigError,
    DimensionMismatch,
    FeynlogicError,
    InvalidPosition,
    OutOfRange,
    ResourceLimit,
    UnknownTransition,
)
from ..linalg import unitarity_defect
from ..logic import Event, Measurement, OutcomeId, SequenceFactory, invert, run_identity_suite
from ..reconstruction import evolution_operator, measurement_operator, prepared_states, summary_checks, transformation_matrix
from ..report import CheckResult, RunReport
from ..settings import get_settings
from .config import LoadedConfig, load

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Errors that mean the invocation itself was wrong
USAGE_ERRORS = (ConfigError, DimensionMismatch, InvalidPosition, OutOfRange, ResourceLimit)


@dataclass
class CliState:
    fmt: str = "text"
    output: Optional[Path] = None
    timings: bool = False
    seed: int = 0


def _configure_logging(verbose: int, quiet: bool, default: str) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(default)
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("feynlogic").setLevel(level)


def _emit(state: CliState, report: RunReport) -> None:
    if state.fmt == "jsonl":
        data = report.to_jsonl(timings=state.timings)
    else:
        data = report.to_text(timings=True).encode()
    if state.output is not None:
        state.output.write_bytes(data)
        logger.info(f"Wrote {report.command} report to {state.output}")
    else:
        click.echo(data.decode(), nl=False)


def reporting(command: Callable[..., RunReport]) -> Callable[..., None]:
    """Run a report-building command, render its report and map outcomes to exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            report = command(*args, **kwargs)
        except USAGE_ERRORS as e:
            logger.error(f"{ctx.command.name}: {e}")
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except FeynlogicError as e:
            logger.error(f"{ctx.command.name}: {e}")
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_FAILURE)
        _emit(ctx.obj, report)
        ctx.exit(EXIT_OK if report.passed else EXIT_FAILURE)

    return wrapper


def _new_report(command: str, config: Optional[str] = None, seed: Optional[int] = None) -> RunReport:
    state: CliState = click.get_current_context().obj
    return RunReport(command=command, config=config, seed=state.seed if seed is None else seed)


no_validate_option = click.option(
    '--no-validate', is_flag=True, help='Skip the unitarity check when loading the model.'
)

seed_option = click.option(
    '--seed', 'command_seed', type=int, default=None, help='Seed for this command (overrides the global --seed).'
)


@click.group()
@click.option('--format', 'fmt', type=click.Choice(['text', 'jsonl']), default='text', show_default=True,
              help='Report format.')
@click.option('-o', '--output', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write the report to a file instead of stdout.')
@click.option('--timings', is_flag=True, help='Include wall-clock timings in JSON lines reports.')
@click.option('-v', '--verbose', count=True, help='Log more (repeat for debug).')
@click.option('-q', '--quiet', is_flag=True, help='Log errors only.')
@click.option('--seed', type=int, default=None, help='Seed for randomized checks (default: FEYNLOGIC_SEED).')
@click.version_option(__version__, prog_name='feynlogic')
@click.pass_context
def cli(ctx, fmt: str, output: Optional[Path], timings: bool, verbose: int, quiet: bool, seed: Optional[int]):
    """Verification suites for Feynman's rules on finite-dimensional systems."""
    try:
        settings = get_settings()
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    _configure_logging(verbose, quiet, settings.log_level)
    ctx.obj = CliState(fmt=fmt, output=output, timings=timings, seed=settings.seed if seed is None else seed)


# ------------------------------------------------------------------
# validate
# ------------------------------------------------------------------


def _identity_factory(loaded: LoadedConfig, seed: int) -> SequenceFactory:
    catalogue = tuple(loaded.model.measurements.values())
    if max(m.atomic_count for m in catalogue) < 3:
        catalogue += (Measurement.atomic("M3", 3), Measurement.atomic("M4", 4))
    interactions = (IDENTITY_INTERACTION,) + tuple(loaded.model.interactions)
    return SequenceFactory(np.random.default_rng(seed), catalogue=catalogue, interactions=interactions)


@cli.command()
@click.argument('config')
@click.option('--trials', type=click.IntRange(min=1), default=1000, show_default=True,
              help='Random operand tuples per identity.')
@reporting
def validate(config: str, trials: int) -> RunReport:
    """Check the model matrices and the algebraic identities of the sequence operators."""
    loaded = load(config, validate=False)
    report = _new_report("validate", loaded.name)
    with report.timed():
        report.extend(unitarity_checks(loaded.model))
        report.add(check_closure_consistency(loaded.model))
    with report.timed():
        report.extend(run_identity_suite(_identity_factory(loaded, report.seed), trials))
    for name, seq in loaded.sequences.items():
        if not seq.final.is_atomic:
            continue
        with report.timed():
            round_trip = invert(invert(seq))
            report.check(
                f"declared:{name}:invert-involution",
                0.0 if round_trip == seq else 1.0,
                0.0,
                witness=None if round_trip == seq else {"sequence": str(seq), "round_trip": str(round_trip)},
            )
            try:
                a = amplitude(loaded.model, seq)
                report.check(f"declared:{name}:sum-rule", sum_rule_residual(loaded.model, seq), RULE_TOL)
                report.check(
                    f"declared:{name}:conjugate-inverse",
                    abs(amplitude(loaded.model, invert(seq)) - np.conj(a)),
                    RULE_TOL,
                )
            except UnknownTransition as e:
                report.check(f"declared:{name}:resolves", float("inf"), 0.0, witness={"error": str(e)})
    return report


# ------------------------------------------------------------------
# amplitude
# ------------------------------------------------------------------


@cli.command(name='amplitude')
@click.argument('config')
@click.argument('sequence')
@no_validate_option
@reporting
def amplitude_command(config: str, sequence: str, no_validate: bool) -> RunReport:
    """Amplitude and probability of a declared sequence."""
    loaded = load(config, validate=not no_validate)
    seq = loaded.sequence(sequence)
    model = loaded.model
    report = _new_report("amplitude", loaded.name)
    if seq.final.is_atomic:
        a = amplitude(model, seq)
        report.record(
            f"sequence:{sequence}",
            sequence=str(seq),
            amplitude=a,
            probability=abs(a) ** 2,
        )
        report.check(f"{sequence}:sum-rule", sum_rule_residual(model, seq), RULE_TOL)
        report.check(
            f"{sequence}:conjugate-inverse", abs(amplitude(model, invert(seq)) - np.conj(a)), RULE_TOL
        )
        composite = loaded.config.composites.get(sequence)
        if composite is not None:
            parts = [amplitude(model, loaded.sequence(p)) for p in (composite.left, composite.right)]
            expected = composite_amplitude(*parts)
            report.record(f"composite:{sequence}", left=parts[0], right=parts[1], product=expected)
            report.check(f"{sequence}:composite-product", abs(a - expected), RULE_TOL)
    else:
        last = seq.length - 1
        final = seq.final
        atomic = Measurement(final.measurement.id, final.measurement.atomic_count, factors=final.measurement.factors)
        probability = 0.0
        for k in sorted(final.outcome.indices):
            refined = seq.with_event(last, Event(final.time, atomic, OutcomeId(atomic.id, frozenset([k]))))
            probability += abs(amplitude(model, refined)) ** 2
        report.record(
            f"sequence:{sequence}",
            sequence=str(seq),
            amplitude=None,
            probability=probability,
            note="coarse final outcome: probabilities add over its atomic outcomes",
        )
    return report


# ------------------------------------------------------------------
# check-nd
# ------------------------------------------------------------------


@cli.command(name='check-nd')
@click.argument('config')
@click.option('--scenario', default=None, help='Experiment to run (default: all declared).')
@click.option('--tol', type=click.FloatRange(min=0.0), default=1e-12, show_default=True,
              help='Allowed quantum deviation.')
@click.option('--runs', type=click.IntRange(min=0), default=None,
              help='Monte-Carlo runs per experiment, 0 to skip (default: FEYNLOGIC_MC_RUNS).')
@click.option('--batches', type=click.IntRange(min=1), default=1, show_default=True,
              help='Independently seeded Monte-Carlo batches.')
@no_validate_option
@seed_option
@reporting
def check_nd(
    config: str,
    scenario: Optional[str],
    tol: float,
    runs: Optional[int],
    batches: int,
    no_validate: bool,
    command_seed: Optional[int],
) -> RunReport:
    """Insert a trivial measurement and compare quantum and classical predictions."""
    if runs is None:
        runs = get_settings().mc_runs
    loaded = load(config, validate=not no_validate)
    report = _new_report("check-nd", loaded.name, command_seed)
    names = [scenario] if scenario else list(loaded.experiments)
    for name in names:
        experiment = loaded.experiment(name)
        position, trivial = loaded.insert_positions[name]
        with report.timed():
            result = disturbance_report(loaded.model, experiment, position, trivial)
            values = {"layout": str(experiment), "insert_at": position, **result.as_dict()}
            if is_repeat_layout(experiment):
                values["classical_repeat_probability"] = result.classical[experiment.preparation.outcome.indices]
            report.record(f"experiment:{name}", **values)
            report.check(f"nd:{name}:quantum", result.max_quantum_deviation, tol)
            report.check(f"nd:{name}:normalization", abs(result.with_trivial.total() - 1.0), PROBABILITY_TOL * 10)
        if runs:
            with report.timed():
                inserted = insert_trivial(experiment, position, trivial)
                estimate = monte_carlo(loaded.model, inserted, runs, report.seed, batches)
                bounds = binomial_bounds(result.with_trivial, runs)
                predicted = result.with_trivial.labelled()
                observed = estimate.labelled()
                excess = max(abs(observed[k] - predicted[k]) - bounds[k] for k in predicted)
                report.record(f"monte-carlo:{name}", runs=runs, batches=batches, frequencies=observed, bounds=bounds)
                report.check(
                    f"nd:{name}:monte-carlo",
                    max(0.0, excess),
                    0.0,
                    witness=None if excess <= 0 else {"observed": observed, "predicted": predicted},
                )
    return report


# ------------------------------------------------------------------
# reconstruct
# ------------------------------------------------------------------


def _reference(loaded: LoadedConfig) -> Measurement:
    model = loaded.model
    for name in model.measurements:
        if name in model.bases:
            return model.measurement(name)
    return next(iter(model.measurements.values()))


@cli.command()
@click.argument('config')
@click.option('--samples', type=click.IntRange(min=1), default=5, show_default=True,
              help='Random states per transformation in the Born-rule checks.')
@no_validate_option
@reporting
def reconstruct(config: str, samples: int, no_validate: bool) -> RunReport:
    """Rebuild states, operators and evolution from the model and check the postulates."""
    loaded = load(config, validate=not no_validate)
    model = loaded.model
    report = _new_report("reconstruct", loaded.name)
    reference = _reference(loaded)
    for m in model.measurements.values():
        if m.atomic_count != reference.atomic_count or not model.has_transition(reference, m, IDENTITY_INTERACTION):
            continue
        t = transformation_matrix(model, reference, m)
        report.record(
            f"prepared-states:{m.id}",
            reference=reference.id,
            states={q: u.components for q, u in enumerate(prepared_states(t), start=1)},
        )
    operators = loaded.config.operators or [None]
    for op in operators:
        target = model.measurement(op.measurement) if op else reference
        ref = model.measurement(op.reference) if op and op.reference else reference
        if not model.has_transition(ref, target, IDENTITY_INTERACTION):
            continue
        operator = measurement_operator(transformation_matrix(model, ref, target), op.values if op else None)
        report.record(
            f"operator:{target.id}",
            reference=ref.id,
            matrix=operator.matrix,
            eigenvalues=list(operator.eigenvalues),
            hermiticity_defect=operator.hermiticity_defect(),
        )
    for name in model.interactions:
        if model.has_transition(reference, reference, name):
            U = evolution_operator(model, reference, name)
            report.record(f"evolution:{name}", frame=reference.id, matrix=U.matrix, unitarity_defect=unitarity_defect(U.matrix))
            report.check(f"evolution:{name}:unitary", unitarity_defect(U.matrix), UNITARY_TOL)
    with report.timed():
        report.extend(summary_checks(model, np.random.default_rng(report.seed), samples))
    return report


# ------------------------------------------------------------------
# check-composition
# ------------------------------------------------------------------


@cli.command(name='check-composition')
@click.option('--samples', type=click.IntRange(min=1), default=None,
              help='Sampled argument tuples per axiom (default: FEYNLOGIC_AXIOM_SAMPLES).')
@seed_option
@reporting
def check_composition(samples: Optional[int], command_seed: Optional[int]) -> RunReport:
    """Test candidate composite-amplitude rules against the composition constraints."""
    samples = samples or get_settings().axiom_samples
    report = _new_report("check-composition", seed=command_seed)
    with report.timed():
        report.extend(candidate_table(samples, report.seed))
    z = 0.6 + 0.8j
    report.record(
        "composite-amplitude",
        one_times_z=composite_amplitude(1, z),
        half_i_times_half=composite_amplitude(0.5j, 0.5),
    )
    return report


# ------------------------------------------------------------------
# action
# ------------------------------------------------------------------


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


@cli.command(name='action')
@click.option('--lagrangian', type=click.Choice(['free', 'harmonic']), default='free', show_default=True)
@click.option('--mass', type=float, default=1.0, show_default=True)
@click.option('--omega', type=float, default=None, help='Oscillator frequency (harmonic only, default 1).')
@click.option('--alpha', type=float, default=1.0, show_default=True, help='Inverse action unit.')
@click.option('--lower', type=float, default=COMPARISON_GRID.lower, show_default=True)
@click.option('--upper', type=float, default=COMPARISON_GRID.upper, show_default=True)
@click.option('--size', type=int, default=COMPARISON_GRID.size, show_default=True, help='Lattice points.')
@click.option('--dt', type=float, default=COMPARISON_GRID.step, show_default=True, help='Time step per hop.')
@click.option('--steps', type=int, default=COMPARISON_STEPS, show_default=True)
@click.option('--wick-angle', type=float, default=COMPARISON_ANGLE, show_default=True,
              help='Rotation of the time step into the lower half plane.')
@click.option('--x-initial', type=float, default=0.0, show_default=True)
@click.option('--window', type=float, default=3.0, show_default=True, help='Compared |x_f - x_i| range.')
@click.option('--paths', 'path_count', type=click.IntRange(min=1), default=1000, show_default=True,
              help='Random paths for the additivity and inversion checks.')
@click.option('--samples', type=click.IntRange(min=1), default=10000, show_default=True,
              help='Samples per amplitude-map constraint.')
@click.option('--config', default=None, help='Config whose named paths are also evaluated.')
@reporting
def action_command(
    lagrangian: str,
    mass: float,
    omega: Optional[float],
    alpha: float,
    lower: float,
    upper: float,
    size: int,
    dt: float,
    steps: int,
    wick_angle: float,
    x_initial: float,
    window: float,
    path_count: int,
    samples: int,
    config: Optional[str],
) -> RunReport:
    """Action additivity and inversion, the amplitude-action rule and a lattice sum over paths."""
    if lagrangian == 'free':
        if omega:
            raise OutOfRange("--omega applies to the harmonic Lagrangian only")
        functional = ActionFunctional.free(mass)
    else:
        functional = ActionFunctional.harmonic(mass, 1.0 if omega is None else omega)
    scale = ActionScale(alpha)
    grid = LatticeSpec(lower, upper, size, dt)
    report = _new_report("action")
    rng = np.random.default_rng(report.seed)

    with report.timed():
        constant = straight_path(0.0, 0.0, 0.0, 2.0, 4)
        s0 = path_action(constant, functional)
        z0 = amplitude_from_action(s0, scale)
        report.record("constant-path", action=s0, amplitude=z0)
        report.check("action:constant-path", abs(s0) + abs(z0 - 1), 1e-12)

        additivity = inversion = homomorphism = conjugation = 0.0
        for _ in range(path_count):
            path = random_path(rng, int(rng.integers(2, 9)))
            first, second = split(path, int(rng.integers(1, path.segments)))
            s = path_action(path, functional)
            sa, sb = path_action(first, functional), path_action(second, functional)
            joined = path_action(concatenate(first, second), functional)
            additivity = max(additivity, _relative(s, sa + sb), _relative(joined, s))
            inversion = max(inversion, _relative(path_action(invert_path(path), functional), -s))
            za, zb = amplitude_from_action(sa, scale), amplitude_from_action(sb, scale)
            homomorphism = max(homomorphism, abs(amplitude_from_action(sa + sb, scale) - za * zb))
            conjugation = max(conjugation, abs(amplitude_from_action(-s, scale) - np.conj(amplitude_from_action(s, scale))))
        report.check("action:additivity", additivity, 1e-12, paths=path_count)
        report.check("action:inversion", inversion, 1e-12, paths=path_count)
        report.check("amplitude:homomorphism", homomorphism, AMPLITUDE_SLACK)
        report.check("amplitude:conjugate-inversion", conjugation, AMPLITUDE_SLACK)

    with report.timed():
        for f in ACTION_MAPS.values():
            check = evaluate_amplitude_map(f, samples, report.seed)
            accepted = not check.violations
            residuals = {a.value: r for a, r in check.residuals.items()}
            report.record(f"amplitude-map:{f.label}", **fit_amplitude_map(f).as_dict(), residuals=residuals)
            report.add(
                CheckResult(
                    name=f"amplitude-map:{f.label}",
                    passed=accepted == f.expected_pass,
                    residual=max(residuals.values()),
                    witness=check.violations[0].as_dict() if check.violations else None,
                    details={"expected": "accept" if f.expected_pass else "reject"},
                )
            )

    with report.timed():
        kernel = single_step_kernel(functional, grid, scale, wick_angle)
        two = lattice_propagator(functional, grid, 2, scale, wick_angle)
        report.check("lattice:two-step", float(np.max(np.abs(two - kernel @ kernel))), 1e-12)
        if functional.omega == 0:
            chirp = chirp_lattice(64, 1.0, mass, scale)
            unitary = single_step_kernel(functional, chirp, scale)
            report.check("lattice:unitarity", unitarity_defect(unitary), 1e-8, size=chirp.size, step=chirp.step)
            comparison = compare_with_free_kernel(grid, steps, x_initial, mass, scale, wick_angle, window)
            report.record("lattice:free-kernel", **comparison.as_dict())
            report.check("lattice:free-kernel", comparison.max_deviation, COMPARISON_TOL)
        else:
            report.record("lattice:free-kernel", note="no analytic oracle for the harmonic Lagrangian")

    if config is not None:
        loaded = load(config)
        for name, path in loaded.paths.items():
            s = path_action(path, functional)
            report.record(f"path:{name}", action=s, amplitude=amplitude_from_action(s, scale))
    return report


def main() -> None:
    cli(prog_name='feynlogic')


if __name__ == '__main__':
    main()
