"""
Hermitian measurement operators.

A measurement with prepared states u_q and outcome values a_q is represented
by N = Σ_q a_q u_q u_q†. Eigen-decompositions are returned in a fixed order:
descending eigenvalue, ties broken by lexicographic comparison of the
eigenvectors in the canonical gauge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence as Seq, Tuple

import numpy as np
import scipy.linalg

from ..constants import HERMITIAN_TOL, NORMALIZATION_TOL
from ..errors import DimensionMismatch, NormalizationFailure, NotHermitian, ReferenceMismatch
from ..linalg import canonical_phase, dagger, frozen, hermiticity_defect
from ..amplitudes.model import ProbabilityTable
from .states import StateVector, TransformationMatrix, born_probability, prepared_states

logger = logging.getLogger(__name__)


def _sort_key(value: float, vec: np.ndarray, decimals: int = 9):
    rounded = np.round(vec, decimals)
    return (-round(float(value), decimals), tuple(zip(rounded.real.tolist(), rounded.imag.tolist())))


@dataclass(frozen=True, eq=False)
class MeasurementOperator:
    """
    Hermitian operator of a measurement, w.r.t. `reference`.

    Attributes:
        eigenvalues: Real outcome value a_q per outcome q
        eigenstates: Orthonormal prepared states u_q
        matrix: Σ_q a_q u_q u_q†
        reference: Measurement the states are specified with respect to
        measurement: Id of the measurement being represented, when known
    """

    eigenvalues: Tuple[float, ...]
    eigenstates: Tuple[StateVector, ...]
    matrix: np.ndarray
    reference: str
    measurement: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(float(a) for a in self.eigenvalues))
        object.__setattr__(self, "eigenstates", tuple(self.eigenstates))
        object.__setattr__(self, "matrix", frozen(np.array(self.matrix, dtype=np.complex128)))
        if len(self.eigenvalues) != len(self.eigenstates) or len(self.eigenstates) != self.matrix.shape[0]:
            raise DimensionMismatch(
                f"Operator with {len(self.eigenvalues)} values, {len(self.eigenstates)} states "
                f"and matrix {self.matrix.shape}"
            )
        for u in self.eigenstates:
            if u.reference != self.reference:
                raise ReferenceMismatch(f"Eigenstate w.r.t. {u.reference} in operator w.r.t. {self.reference}")
        scale = max(1.0, float(np.max(np.abs(self.matrix))))
        if self.hermiticity_defect() > NORMALIZATION_TOL * scale:
            raise NotHermitian(
                f"Operator w.r.t. {self.reference} is not Hermitian (defect {self.hermiticity_defect():.3e})"
            )
        if self.orthonormality_defect() > NORMALIZATION_TOL:
            raise NormalizationFailure(
                f"Eigenstates of operator w.r.t. {self.reference} are not orthonormal "
                f"(defect {self.orthonormality_defect():.3e})"
            )

    @classmethod
    def from_matrix(cls, matrix, reference: str, measurement: Optional[str] = None) -> "MeasurementOperator":
        """
        Diagonalize a Hermitian matrix.

        Args:
            matrix: Hermitian matrix
            reference: Measurement the matrix is specified with respect to
            measurement: Id of the represented measurement

        Returns:
            MeasurementOperator with deterministically ordered eigenpairs
        """
        mat = np.array(matrix, dtype=np.complex128)
        defect = hermiticity_defect(mat)
        if defect > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(mat)))):
            raise NotHermitian(f"Matrix w.r.t. {reference} is not Hermitian (defect {defect:.3e})")
        values, vectors = scipy.linalg.eigh((mat + dagger(mat)) / 2)
        pairs = [(float(a), canonical_phase(vectors[:, q])) for q, a in enumerate(values)]
        pairs.sort(key=lambda p: _sort_key(*p))
        return cls(
            eigenvalues=tuple(a for a, _ in pairs),
            eigenstates=tuple(StateVector(u, reference) for _, u in pairs),
            matrix=mat,
            reference=reference,
            measurement=measurement,
        )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_defect(self) -> float:
        return hermiticity_defect(self.matrix)

    def orthonormality_defect(self) -> float:
        """Max-norm of the Gram matrix of the eigenstates minus the identity."""
        basis = np.column_stack([u.components for u in self.eigenstates])
        return float(np.max(np.abs(dagger(basis) @ basis - np.eye(self.dim))))

    def spectrum(self) -> np.ndarray:
        """Eigenvalue multiset, sorted descending."""
        return np.sort(np.array(self.eigenvalues))[::-1]


def measurement_operator(t: TransformationMatrix, values: Optional[Seq[float]] = None) -> MeasurementOperator:
    """
    Operator of measurement `t.target` w.r.t. `t.source`.

    Args:
        t: Unitary transformation from the reference to the measurement
        values: Outcome values a_q (defaults to 1..N)
    """
    states = prepared_states(t)
    if values is None:
        values = range(1, t.dim + 1)
    values = tuple(float(a) for a in values)
    if len(values) != t.dim:
        raise DimensionMismatch(f"{len(values)} outcome values for a {t.dim}-outcome measurement")
    matrix = sum(a * np.outer(u.components, np.conj(u.components)) for a, u in zip(values, states))
    return MeasurementOperator(values, tuple(states), matrix, t.source, t.target)


def conjugate_operator(op: MeasurementOperator, V: TransformationMatrix) -> MeasurementOperator:
    """
    Re-express an operator w.r.t. M′, where V maps M′ to M: N′ = V† N V.

    Raises:
        ReferenceMismatch: If the operator is not specified w.r.t. V's target
    """
    if op.reference != V.target:
        raise ReferenceMismatch(f"Operator w.r.t. {op.reference} cannot be changed by {V.source}->{V.target}")
    if op.dim != V.dim:
        raise DimensionMismatch(f"Operator of dimension {op.dim} and transformation of dimension {V.dim}")
    vd = dagger(V.matrix)
    states = tuple(StateVector(vd @ u.components, V.source) for u in op.eigenstates)
    return MeasurementOperator(op.eigenvalues, states, vd @ op.matrix @ V.matrix, V.source, op.measurement)


def transformation_from_operator(op: MeasurementOperator) -> TransformationMatrix:
    """
    Matrix V connecting the represented measurement to the reference:
    V_ij = (w_j)_i, the eigenvectors as columns.
    """
    basis = np.column_stack([u.components for u in op.eigenstates])
    return TransformationMatrix(basis, op.measurement or f"{op.reference}'", op.reference)


def outcome_probabilities(op: MeasurementOperator, v: StateVector) -> ProbabilityTable:
    """Born distribution over the operator's outcomes (1-based, eigenstate order)."""
    return ProbabilityTable(
        op.measurement or op.reference,
        {frozenset([q]): born_probability(u, v) for q, u in enumerate(op.eigenstates, start=1)},
    )


def expectation(op: MeasurementOperator, v: StateVector) -> float:
    """⟨v|N|v⟩ = Σ_q a_q |u_q† v|²."""
    if op.reference != v.reference:
        raise ReferenceMismatch(f"Operator w.r.t. {op.reference} and state w.r.t. {v.reference}")
    return float(np.vdot(v.components, op.matrix @ v.components).real)
