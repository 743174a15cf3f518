"""
State vectors, transformation matrices and evolution operators.

A state is the amplitude vector of the transitions from a preparation to
the atomic outcomes of a reference measurement. Objects carry the id of the
measurement they are specified with respect to, and combining objects with
different references raises ReferenceMismatch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..constants import IDENTITY_INTERACTION, NORMALIZATION_TOL, UNITARY_TOL
from ..errors import DimensionMismatch, InvalidPartition, NonAtomicEndpoint, NormalizationFailure, NotUnitary, ReferenceMismatch
from ..linalg import canonical_phase, dagger, frozen, unitarity_defect
from ..logic.outcomes import Measurement, composite_id
from ..logic.sequences import Event
from ..amplitudes.model import AmplitudeModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Unit amplitude vector with respect to a reference measurement.

    Raises:
        NormalizationFailure: If the norm deviates from 1 by more than the
            normalization tolerance
    """

    components: np.ndarray
    reference: str

    def __post_init__(self):
        vec = np.array(self.components, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            logger.warning(f"State w.r.t. {self.reference} has norm {norm!r}")
            raise NormalizationFailure(f"State w.r.t. {self.reference} has norm {norm:.12g}, expected 1")
        object.__setattr__(self, "components", frozen(vec))

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return self.reference == other.reference and np.allclose(self.components, other.components, atol=atol, rtol=0)


@dataclass(frozen=True, eq=False)
class TransformationMatrix:
    """
    Unitary matrix connecting measurement `source` to measurement `target`.

    Column j holds the amplitudes of source outcome j+1 over the target's
    outcomes; the same matrix maps source coordinates to target coordinates.
    """

    matrix: np.ndarray
    source: str
    target: str
    validate: bool = True

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch(f"Transformation {self.source}->{self.target} has shape {mat.shape}")
        if self.validate:
            defect = unitarity_defect(mat)
            if defect > UNITARY_TOL:
                raise NotUnitary(f"Transformation {self.source}->{self.target} is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "matrix", frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def inverse(self) -> "TransformationMatrix":
        return TransformationMatrix(dagger(self.matrix), self.target, self.source, self.validate)


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """Unitary U with ṽ = U v over the interval (t′, t″), in the frame of `reference`."""

    matrix: np.ndarray
    interval: Tuple[float, float] = (0.0, 1.0)
    reference: Optional[str] = None

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        defect = unitarity_defect(mat)
        if defect > UNITARY_TOL:
            raise NotUnitary(f"Evolution over {self.interval} is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "matrix", frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


# ------------------------------------------------------------------
# Construction from a model
# ------------------------------------------------------------------


def transformation_matrix(
    model: AmplitudeModel, source: Measurement, target: Measurement, interaction: str = IDENTITY_INTERACTION
) -> TransformationMatrix:
    """The model's transition matrix from `source` to `target` as a TransformationMatrix."""
    return TransformationMatrix(
        model.transition(source, target, interaction), source.id, target.id, validate=model.validated
    )


def evolution_operator(
    model: AmplitudeModel, measurement: Measurement, interaction: str, interval: Tuple[float, float] = (0.0, 1.0)
) -> EvolutionOperator:
    """Evolution in the frame of `measurement`: U = T(M → M, interaction)."""
    return EvolutionOperator(model.transition(measurement, measurement, interaction), interval, measurement.id)


def self_transformation(measurement: Measurement) -> TransformationMatrix:
    """
    Transformation of an atomic measurement into itself: the identity, with
    the free row phases fixed to zero.
    """
    if not measurement.is_atomic:
        raise InvalidPartition(f"Self-transformation needs an atomic measurement, {measurement} is {measurement.kind.value}")
    n = measurement.atomic_count
    return TransformationMatrix(np.eye(n, dtype=np.complex128), measurement.id, measurement.id)


def state_after_preparation(
    model: AmplitudeModel, preparation: Event, interaction: str, reference: Measurement
) -> StateVector:
    """
    State prepared by `preparation` and specified with respect to `reference`.

    v_j is the amplitude of [ℓ_i → m_j], i.e. column i of T(L → M).

    Raises:
        UnknownTransition: If the transition does not resolve
        NormalizationFailure: If the column is not a unit vector
    """
    if not preparation.is_atomic:
        raise NonAtomicEndpoint(f"Preparation outcome {preparation.outcome} must be atomic")
    t = model.transition(preparation.measurement, reference, interaction)
    column = t[:, preparation.outcome.atomic_index - 1]
    return StateVector(column, reference.id)


# ------------------------------------------------------------------
# Operations
# ------------------------------------------------------------------


def _require_unitary(t: TransformationMatrix) -> None:
    defect = unitarity_defect(t.matrix)
    if defect > UNITARY_TOL:
        raise NotUnitary(f"Transformation {t.source}->{t.target} is not unitary (defect {defect:.3e})")


def prepared_states(t: TransformationMatrix) -> List[StateVector]:
    """
    States left by the outcomes of measurement `t.target`, w.r.t. `t.source`.

    u_q is the conjugate of row q of T, returned in the canonical gauge
    (first nonzero component real and nonnegative).

    Raises:
        NotUnitary: If T is not unitary
    """
    _require_unitary(t)
    return [StateVector(canonical_phase(np.conj(row)), t.source) for row in t.matrix]


def born_probability(u: StateVector, v: StateVector) -> float:
    """
    |u† v|², the probability that a measurement with prepared state u yields
    that outcome on state v.

    Raises:
        ReferenceMismatch: If u and v use different references
        DimensionMismatch: If their dimensions differ
    """
    if u.reference != v.reference:
        raise ReferenceMismatch(f"States w.r.t. {u.reference} and {v.reference} cannot be compared")
    if u.dim != v.dim:
        raise DimensionMismatch(f"States of dimension {u.dim} and {v.dim}")
    return float(abs(np.vdot(u.components, v.components)) ** 2)


def change_representation(v: StateVector, V: TransformationMatrix) -> StateVector:
    """
    Re-express v (w.r.t. M) with respect to M′, where V maps M′ to M: v′ = V† v.

    Raises:
        ReferenceMismatch: If v is not specified w.r.t. V's target
        NotUnitary: If V is not unitary
    """
    if v.reference != V.target:
        raise ReferenceMismatch(f"State w.r.t. {v.reference} cannot be changed by {V.source}->{V.target}")
    if V.dim != v.dim:
        raise DimensionMismatch(f"State of dimension {v.dim} and transformation of dimension {V.dim}")
    _require_unitary(V)
    return StateVector(dagger(V.matrix) @ v.components, V.source)


def evolve(v: StateVector, U: EvolutionOperator) -> StateVector:
    """
    ṽ = U v.

    Raises:
        DimensionMismatch: If dimensions differ
        ReferenceMismatch: If U names a frame other than v's reference
    """
    if U.dim != v.dim:
        raise DimensionMismatch(f"Evolution of dimension {U.dim} applied to state of dimension {v.dim}")
    if U.reference is not None and U.reference != v.reference:
        raise ReferenceMismatch(f"Evolution in frame {U.reference} applied to state w.r.t. {v.reference}")
    return StateVector(U.matrix @ v.components, v.reference)


def compose_states(left: StateVector, right: StateVector, reference: Optional[str] = None) -> StateVector:
    """
    Composite state v′ ⊗ v″; component (j−1)·N₂+k is v′_j · v″_k.

    Args:
        left: State of the first subsystem
        right: State of the second subsystem
        reference: Expected composite reference, checked when given

    Raises:
        ReferenceMismatch: If the subsystem references do not compose to `reference`
    """
    composite = composite_id(left.reference, right.reference)
    if reference is not None and reference != composite:
        raise ReferenceMismatch(f"States w.r.t. {left.reference} and {right.reference} compose to {composite}, not {reference}")
    return StateVector(np.kron(left.components, right.components), composite)
