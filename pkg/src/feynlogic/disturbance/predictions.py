"""
Quantum and classical predictions for experiment layouts.

The quantum prediction applies Feynman's rules: amplitudes add inside an
observed outcome, probabilities add across observed outcomes. The classical
oracle treats every atomic outcome as definite whether or not it is
registered, chaining transition probabilities |T_kj|² as a Markov chain.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..constants import NORMALIZATION_TOL, SYMMETRY_TOL
from ..errors import AsymmetricTransitions, OutOfRange
from ..logic.outcomes import Measurement
from ..amplitudes.engine import outcome_distribution
from ..amplitudes.model import AmplitudeModel, ProbabilityTable, table_from_atomic
from .experiment import Experiment, insert_trivial

logger = logging.getLogger(__name__)


def quantum_prediction(model: AmplitudeModel, experiment: Experiment) -> ProbabilityTable:
    """Feynman-rule outcome probabilities of the final measurement."""
    return outcome_distribution(
        model,
        experiment.preparation,
        experiment.chain(),
        experiment.final.measurement,
        experiment.final.interaction,
    )


def is_repeat_layout(experiment: Experiment) -> bool:
    return experiment.final.measurement.id == experiment.preparation.measurement.id


def classical_prediction(
    model: AmplitudeModel, experiment: Experiment, require_symmetric: Optional[bool] = None
) -> ProbabilityTable:
    """
    Markov-chain prediction with transition probabilities |T_kj|².

    Args:
        model: Amplitude model
        experiment: Layout
        require_symmetric: Check |T_kj|² = |T_jk|² on every interval; by
            default only for layouts that end on the preparation measurement

    Raises:
        AsymmetricTransitions: If the symmetry check fails
    """
    if require_symmetric is None:
        require_symmetric = is_repeat_layout(experiment)
    prep = experiment.preparation
    probs = np.zeros(prep.measurement.atomic_count)
    probs[prep.outcome.atomic_index - 1] = 1.0
    previous: Measurement = prep.measurement
    for stage in experiment.stages:
        t = model.transition(previous, stage.measurement, stage.interaction)
        markov = np.abs(t) ** 2
        if require_symmetric:
            if markov.shape[0] != markov.shape[1] or np.max(np.abs(markov - markov.T)) > SYMMETRY_TOL:
                logger.error(f"Asymmetric transition probabilities {previous.id} -> {stage.measurement.id}")
                raise AsymmetricTransitions(
                    f"Transition probabilities {previous.id} -> {stage.measurement.id} ({stage.interaction}) are not symmetric"
                )
        probs = markov @ probs
        previous = stage.measurement
    return table_from_atomic(experiment.final.measurement, probs)


def repeatability_gap(alpha: float) -> float:
    """
    Classical probability that a repeated measurement reproduces its outcome
    when an unregistered two-outcome measurement with Pr(m|ℓ) = α intervenes:
    α² + (1 − α)².

    Raises:
        OutOfRange: If α lies outside [0, 1]
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0 or np.isnan(alpha):
        raise OutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    return alpha**2 + (1.0 - alpha) ** 2


@dataclass(frozen=True)
class DisturbanceReport:
    """
    Attributes:
        baseline: Quantum prediction without the trivial measurement
        with_trivial: Quantum prediction with it
        classical: Classical oracle with it
        max_quantum_deviation: max |with_trivial − baseline|
        max_classical_deviation: max |classical − baseline|
    """

    baseline: ProbabilityTable
    with_trivial: ProbabilityTable
    classical: ProbabilityTable
    max_quantum_deviation: float
    max_classical_deviation: float

    def __post_init__(self):
        for name in ("baseline", "with_trivial", "classical"):
            table = getattr(self, name)
            if not table.is_normalized(NORMALIZATION_TOL):
                logger.warning(f"Disturbance table {name} sums to {table.total()!r}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "baseline": self.baseline.labelled(),
            "with_trivial": self.with_trivial.labelled(),
            "classical": self.classical.labelled(),
            "max_quantum_deviation": self.max_quantum_deviation,
            "max_classical_deviation": self.max_classical_deviation,
        }


def disturbance_report(
    model: AmplitudeModel,
    experiment: Experiment,
    position: int = 1,
    measurement: Optional[Measurement] = None,
) -> DisturbanceReport:
    """
    Compare predictions with and without a trivial measurement inserted
    before measurement `position`.
    """
    baseline = quantum_prediction(model, experiment)
    inserted = insert_trivial(experiment, position, measurement)
    with_trivial = quantum_prediction(model, inserted)
    classical = classical_prediction(model, inserted)
    report = DisturbanceReport(
        baseline=baseline,
        with_trivial=with_trivial,
        classical=classical,
        max_quantum_deviation=baseline.max_deviation(with_trivial),
        max_classical_deviation=baseline.max_deviation(classical),
    )
    logger.info(
        f"Disturbance at position {position}: quantum {report.max_quantum_deviation:.3e}, "
        f"classical {report.max_classical_deviation:.3e}"
    )
    return report
