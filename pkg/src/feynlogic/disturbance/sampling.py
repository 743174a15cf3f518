"""
Monte-Carlo estimation of outcome frequencies.

Each run samples an outcome chain from the quantum per-step conditional
distributions. A registered outcome collapses the amplitude vector onto its
index-set (renormalized); a trivial measurement registers nothing and
leaves the vector untouched. Runs are split into batches seeded from
SeedSequence(seed).spawn(batches), so the estimate depends only on
(seed, runs, batches).
"""

from __future__ import annotations

import logging
from typing import Dict

import numpy as np

from ..errors import OutOfRange
from ..amplitudes.engine import basis_vector, projector_mask
from ..amplitudes.model import AmplitudeModel, ProbabilityTable
from .experiment import Experiment

logger = logging.getLogger(__name__)


def _sample_rows(rng: np.random.Generator, weights: np.ndarray) -> np.ndarray:
    """One categorical draw per row of a (runs, k) weight array."""
    cumulative = np.cumsum(weights, axis=1)
    cumulative /= cumulative[:, -1:]
    u = rng.random(weights.shape[0])
    idx = (u[:, None] > cumulative).sum(axis=1)
    return np.minimum(idx, weights.shape[1] - 1)


def _run_batch(model: AmplitudeModel, experiment: Experiment, runs: int, rng: np.random.Generator) -> np.ndarray:
    """Counts per block of the final measurement's partition for one batch."""
    prep = experiment.preparation
    states = np.tile(basis_vector(prep.outcome.atomic_index, prep.measurement.atomic_count), (runs, 1))
    previous = prep.measurement
    last = len(experiment.stages) - 1
    for k, stage in enumerate(experiment.stages):
        m = stage.measurement
        t = model.transition(previous, m, stage.interaction)
        states = states @ t.T
        previous = m
        if m.is_trivial and k < last:
            continue
        masks = np.array([projector_mask(b, m.atomic_count) for b in m.partition])
        weights = (np.abs(states) ** 2) @ masks.T
        chosen = _sample_rows(rng, weights)
        if k == last:
            return np.bincount(chosen, minlength=len(m.partition))
        states = np.where(masks[chosen], states, 0)
        states /= np.linalg.norm(states, axis=1, keepdims=True)
    raise AssertionError("unreachable: experiments always have a final stage")


def monte_carlo(
    model: AmplitudeModel,
    experiment: Experiment,
    runs: int,
    seed: int,
    batches: int = 1,
) -> ProbabilityTable:
    """
    Estimate the final outcome frequencies of an experiment.

    Args:
        model: Amplitude model
        experiment: Layout to simulate
        runs: Number of simulated runs
        seed: Master seed
        batches: Number of independently seeded batches

    Returns:
        ProbabilityTable of relative frequencies

    Raises:
        OutOfRange: If runs < 1 or batches < 1
    """
    if runs < 1:
        raise OutOfRange(f"runs must be at least 1, got {runs}")
    if batches < 1:
        raise OutOfRange(f"batches must be at least 1, got {batches}")
    batches = min(batches, runs)
    sizes = [runs // batches + (1 if k < runs % batches else 0) for k in range(batches)]
    children = np.random.SeedSequence(seed).spawn(batches)
    counts = sum(
        _run_batch(model, experiment, size, np.random.default_rng(child)) for size, child in zip(sizes, children)
    )
    final = experiment.final.measurement
    logger.debug(f"Monte-Carlo: {runs} runs in {batches} batches, counts {counts.tolist()}")
    return ProbabilityTable(final.id, {block: int(c) / runs for block, c in zip(final.partition, counts)})


def binomial_bounds(table: ProbabilityTable, runs: int, sigmas: float = 3.0) -> Dict[str, float]:
    """sigmas · sqrt(p(1 − p)/runs) per outcome, keyed by outcome label."""
    return {
        label: sigmas * float(np.sqrt(p * (1.0 - p) / runs)) for label, p in table.labelled().items()
    }
