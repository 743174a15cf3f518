"""
Property checks for the reconstructed formalism.

One group of checks per reconstructed structure: normalized states, unitary
transformations and evolutions, repeatability with the Born rule, Hermitian
operators invariant under change of representation, and tensor-product
composite states.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import List, Optional

import numpy as np

from ..constants import (
    HERMITIAN_TOL,
    IDENTITY_INTERACTION,
    MAX_DIMENSION,
    ORTHONORMAL_TOL,
    PROBABILITY_TOL,
    SYMMETRY_TOL,
    UNITARY_TOL,
)
from ..linalg import dagger, random_state, unitarity_defect
from ..logic.outcomes import OutcomeId, compose_measurements, compose_outcomes
from ..logic.sequences import Event, compose_interactions
from ..amplitudes.model import AmplitudeModel
from ..report import CheckResult
from .operators import conjugate_operator, measurement_operator
from .states import (
    StateVector,
    TransformationMatrix,
    born_probability,
    change_representation,
    compose_states,
    evolution_operator,
    evolve,
    prepared_states,
    state_after_preparation,
    transformation_matrix,
)

logger = logging.getLogger(__name__)


class _Worst:
    """Tracks the largest residual and where it occurred."""

    def __init__(self):
        self.residual = 0.0
        self.witness: Optional[dict] = None
        self.count = 0

    def update(self, residual: float, **witness) -> None:
        self.count += 1
        if residual > self.residual:
            self.residual = float(residual)
            self.witness = witness

    def result(self, name: str, tol: float) -> CheckResult:
        return CheckResult(
            name=name,
            passed=self.residual <= tol,
            residual=self.residual,
            tolerance=tol,
            witness=self.witness if self.residual > tol else None,
            details={"cases": self.count},
        )


def _transformations(model: AmplitudeModel) -> List[TransformationMatrix]:
    out = []
    names = list(model.measurements)
    for src, tgt in product(names, names):
        if model.has_transition(src, tgt, IDENTITY_INTERACTION):
            out.append(transformation_matrix(model, model.measurement(src), model.measurement(tgt)))
    return out


def check_states(model: AmplitudeModel) -> CheckResult:
    worst = _Worst()
    for t in _transformations(model):
        prep = model.measurement(t.source)
        for i in range(1, prep.atomic_count + 1):
            event = Event(0, prep, OutcomeId(prep.id, frozenset([i])))
            v = state_after_preparation(model, event, IDENTITY_INTERACTION, model.measurement(t.target))
            worst.update(abs(v.norm - 1.0), preparation=str(event.outcome), reference=t.target)
    return worst.result("reconstruction:state-normalization", PROBABILITY_TOL)


def check_unitarity(model: AmplitudeModel, rng: np.random.Generator) -> List[CheckResult]:
    transforms = _Worst()
    for t in _transformations(model):
        transforms.update(unitarity_defect(t.matrix), source=t.source, target=t.target)
    evolutions = _Worst()
    norms = _Worst()
    for name, measurement in model.measurements.items():
        for interaction in model.interactions:
            if not model.has_transition(measurement, measurement, interaction):
                continue
            u = evolution_operator(model, measurement, interaction)
            evolutions.update(unitarity_defect(u.matrix), measurement=name, interaction=interaction)
            v = StateVector(random_state(u.dim, rng), name)
            norms.update(abs(evolve(v, u).norm - 1.0), measurement=name, interaction=interaction)
    return [
        transforms.result("reconstruction:transformation-unitarity", UNITARY_TOL),
        evolutions.result("reconstruction:evolution-unitarity", UNITARY_TOL),
        norms.result("reconstruction:evolution-norm", PROBABILITY_TOL),
    ]


def check_born_rule(model: AmplitudeModel, rng: np.random.Generator, samples: int = 5) -> List[CheckResult]:
    repeat = _Worst()
    born = _Worst()
    exhaustive = _Worst()
    for t in _transformations(model):
        states = prepared_states(t)
        for q, k in product(range(t.dim), range(t.dim)):
            repeat.update(abs(born_probability(states[k], states[q]) - (q == k)), target=t.target, q=q + 1, k=k + 1)
        for _ in range(samples):
            v = StateVector(random_state(t.dim, rng), t.source)
            direct = np.abs(t.matrix @ v.components) ** 2
            via_states = np.array([born_probability(u, v) for u in states])
            born.update(float(np.max(np.abs(direct - via_states))), source=t.source, target=t.target)
            exhaustive.update(abs(via_states.sum() - 1.0), source=t.source, target=t.target)
    return [
        repeat.result("reconstruction:repeatability", PROBABILITY_TOL),
        born.result("reconstruction:born-rule", PROBABILITY_TOL),
        exhaustive.result("reconstruction:exhaustivity", PROBABILITY_TOL),
    ]


def check_operators(model: AmplitudeModel, rng: np.random.Generator) -> List[CheckResult]:
    hermitian = _Worst()
    orthonormal = _Worst()
    born_invariance = _Worst()
    spectrum = _Worst()
    transforms = _transformations(model)
    for t in transforms:
        op = measurement_operator(t)
        hermitian.update(op.hermiticity_defect(), measurement=t.target, reference=t.source)
        orthonormal.update(op.orthonormality_defect(), measurement=t.target, reference=t.source)
        for V in transforms:
            if V.target != op.reference or V.dim != op.dim:
                continue
            v = StateVector(random_state(op.dim, rng), op.reference)
            before = np.array([born_probability(u, v) for u in op.eigenstates])
            moved = conjugate_operator(op, V)
            v_moved = change_representation(v, V)
            after = np.array([born_probability(u, v_moved) for u in moved.eigenstates])
            born_invariance.update(float(np.max(np.abs(before - after))), operator=t.target, change=f"{V.source}->{V.target}")
            eig_after = np.sort(np.linalg.eigvalsh((moved.matrix + dagger(moved.matrix)) / 2))[::-1]
            spectrum.update(float(np.max(np.abs(eig_after - op.spectrum()))), operator=t.target, change=f"{V.source}->{V.target}")
    return [
        hermitian.result("reconstruction:operator-hermiticity", HERMITIAN_TOL),
        orthonormal.result("reconstruction:eigenstate-orthonormality", ORTHONORMAL_TOL),
        born_invariance.result("reconstruction:representation-invariance", PROBABILITY_TOL),
        spectrum.result("reconstruction:spectrum-invariance", SYMMETRY_TOL),
    ]


def check_tensor_product(model: AmplitudeModel, interaction: Optional[str] = None) -> CheckResult:
    """
    Composite states prepared on two copies of the model's measurements equal
    the tensor product of the subsystem states.
    """
    worst = _Worst()
    transforms = _transformations(model)[:3]
    interactions = [IDENTITY_INTERACTION] + ([interaction] if interaction else [])
    for t1, t2 in product(transforms, transforms):
        l1, m1 = model.measurement(t1.source), model.measurement(t1.target)
        l2, m2 = model.measurement(t2.source), model.measurement(t2.target)
        if l1.atomic_count * l2.atomic_count > MAX_DIMENSION:
            continue
        source, target = compose_measurements(l1, l2), compose_measurements(m1, m2)
        for i, j in product(range(1, l1.atomic_count + 1), range(1, l2.atomic_count + 1)):
            for inter in interactions:
                if not (model.has_transition(l1, m1, inter) and model.has_transition(l2, m2, inter)):
                    continue
                joint = compose_interactions(inter, inter)
                outcome = compose_outcomes(OutcomeId(l1.id, {i}), OutcomeId(l2.id, {j}), l2.atomic_count)
                v = state_after_preparation(model, Event(0, source, outcome), joint, target)
                v1 = state_after_preparation(model, Event(0, l1, OutcomeId(l1.id, {i})), inter, m1)
                v2 = state_after_preparation(model, Event(0, l2, OutcomeId(l2.id, {j})), inter, m2)
                tensor = compose_states(v1, v2, reference=target.id)
                worst.update(float(np.max(np.abs(v.components - tensor.components))), prepared=str(outcome), reference=target.id)
    return worst.result("reconstruction:tensor-product", PROBABILITY_TOL)


def summary_checks(model: AmplitudeModel, rng: np.random.Generator, samples: int = 5) -> List[CheckResult]:
    """
    Run every reconstruction property check on a model.

    Args:
        model: Amplitude model
        rng: Source of random states
        samples: Random states per transformation for the Born-rule check

    Returns:
        List of CheckResult, one per property
    """
    results: List[CheckResult] = [check_states(model)]
    results += check_unitarity(model, rng)
    results += check_born_rule(model, rng, samples)
    results += check_operators(model, rng)
    interaction = next(iter(model.interactions), None)
    results.append(check_tensor_product(model, interaction))
    logger.info(f"Reconstruction summary: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
