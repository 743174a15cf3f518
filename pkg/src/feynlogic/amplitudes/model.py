"""
Amplitude models.

An AmplitudeModel holds the generative data of an experiment: the atomic
measurements, the interactions (unitaries in a common reference frame), and
the transition matrices between measurements. T[k, j] is the amplitude of
the transition from outcome j of the source measurement to outcome k of the
target (both 0-based here, 1-based in outcome index-sets).

Transitions are resolved in order:
    1. (M, M, identity) is the identity matrix
    2. an explicitly declared matrix
    3. the conjugate transpose of the reverse transition under the inverse
       interaction
    4. B_N† U B_M when both measurements carry a basis
    5. the Kronecker product of factor transitions for composite measurements
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence as Seq, Tuple, Union

import numpy as np

from ..constants import (
    FACTOR_SEPARATOR,
    IDENTITY_INTERACTION,
    INVERSE_SUFFIX,
    MAX_DIMENSION,
    PROBABILITY_TOL,
    UNITARY_TOL,
)
from ..errors import DimensionMismatch, NotUnitary, ResourceLimit, UnknownTransition
from ..linalg import as_complex_matrix, dagger, frozen, is_unitary, kron_all, random_unitary, unitarity_defect
from ..logic.outcomes import Measurement
from ..logic.sequences import invert_interaction
from ..report import CheckResult

logger = logging.getLogger(__name__)

MeasurementRef = Union[str, Measurement]
TransitionKey = Tuple[str, str, str]


class AmplitudeModel:
    """
    Immutable store of transition amplitudes between atomic measurements.

    Args:
        measurements: Atomic measurements by id
        interactions: Interaction unitaries in the reference frame, by id
        transitions: Explicit transition matrices keyed (from, to, interaction)
        bases: Per-measurement unitary whose column j is the state of atomic
            outcome j+1 in the reference frame
        validate: Check unitarity of every matrix at load time

    Raises:
        DimensionMismatch: If a matrix does not match its measurements
        NotUnitary: If validation is on and a matrix is not unitary
        ResourceLimit: If a measurement exceeds the dimension cap
    """

    def __init__(
        self,
        measurements: Iterable[Measurement],
        interactions: Optional[Mapping[str, object]] = None,
        transitions: Optional[Mapping[TransitionKey, object]] = None,
        bases: Optional[Mapping[str, object]] = None,
        validate: bool = True,
    ):
        self._measurements: Dict[str, Measurement] = {}
        for m in measurements:
            if m.atomic_count > MAX_DIMENSION:
                raise ResourceLimit(f"Measurement {m.id} has {m.atomic_count} outcomes, cap is {MAX_DIMENSION}")
            self._measurements[m.id] = m
        self._interactions = {name: as_complex_matrix(u) for name, u in (interactions or {}).items()}
        self._transitions = {tuple(k): as_complex_matrix(t) for k, t in (transitions or {}).items()}
        self._bases = {name: as_complex_matrix(b) for name, b in (bases or {}).items()}
        self.validated = validate
        self._check_dimensions()
        if validate:
            self._check_unitarity()
        logger.info(
            f"Loaded amplitude model: {len(self._measurements)} measurements, "
            f"{len(self._interactions)} interactions, {len(self._transitions)} explicit transitions"
        )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_bases(
        cls,
        bases: Mapping[str, object],
        interactions: Optional[Mapping[str, object]] = None,
        validate: bool = True,
    ) -> "AmplitudeModel":
        """
        Closed model from one basis per measurement.

        Transitions are B_N† U B_M, so zero-duration transformations compose:
        T(M→N) = T(K→N) T(M→K).
        """
        mats = {name: as_complex_matrix(b) for name, b in bases.items()}
        measurements = [Measurement.atomic(name, b.shape[0]) for name, b in mats.items()]
        return cls(measurements, interactions=interactions, bases=mats, validate=validate)

    def _check_dimensions(self) -> None:
        for name, b in self._bases.items():
            if name not in self._measurements:
                raise DimensionMismatch(f"Basis given for undeclared measurement {name}")
            if b.shape[0] != self.dim(name):
                raise DimensionMismatch(f"Basis of {name} is {b.shape}, expected dimension {self.dim(name)}")
        for (src, tgt, interaction), t in self._transitions.items():
            for name in (src, tgt):
                if name not in self._measurements:
                    raise DimensionMismatch(f"Transition ({src}, {tgt}, {interaction}) names undeclared measurement {name}")
            if t.shape != (self.dim(tgt), self.dim(src)):
                raise DimensionMismatch(
                    f"Transition ({src}, {tgt}, {interaction}) is {t.shape}, "
                    f"expected {(self.dim(tgt), self.dim(src))}"
                )
        if self._bases:
            dims = {b.shape[0] for b in self._bases.values()}
            for name, u in self._interactions.items():
                if u.shape[0] not in dims:
                    raise DimensionMismatch(f"Interaction {name} is {u.shape}, no basis has that dimension")

    def _check_unitarity(self) -> None:
        for name, u in self._interactions.items():
            if not is_unitary(u):
                raise NotUnitary(f"Interaction {name} is not unitary (defect {unitarity_defect(u):.3e})")
        for name, b in self._bases.items():
            if not is_unitary(b):
                raise NotUnitary(f"Basis of {name} is not unitary (defect {unitarity_defect(b):.3e})")
        for key, t in self._transitions.items():
            if not is_unitary(t):
                raise NotUnitary(f"Transition {key} is not unitary (defect {unitarity_defect(t):.3e})")

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def measurements(self) -> Dict[str, Measurement]:
        return dict(self._measurements)

    @property
    def interactions(self) -> Dict[str, np.ndarray]:
        return dict(self._interactions)

    @property
    def transitions(self) -> Dict[TransitionKey, np.ndarray]:
        return dict(self._transitions)

    @property
    def bases(self) -> Dict[str, np.ndarray]:
        return dict(self._bases)

    def measurement(self, name: str) -> Measurement:
        try:
            return self._measurements[name]
        except KeyError:
            raise UnknownTransition(f"Measurement {name} is not declared in the model") from None

    def dim(self, ref: MeasurementRef) -> int:
        if isinstance(ref, Measurement):
            return ref.atomic_count
        return self.measurement(ref).atomic_count

    def _factors(self, ref: MeasurementRef) -> Tuple[Tuple[str, int], ...]:
        if isinstance(ref, Measurement):
            return ref.factors
        names = ref.split(FACTOR_SEPARATOR)
        return tuple((n, self.dim(n)) for n in names)

    # ------------------------------------------------------------------
    # Resolution
    # ------------------------------------------------------------------

    def interaction_unitary(self, interaction: str, dim: int) -> Optional[np.ndarray]:
        """Unitary of an interaction in the reference frame, or None if undeclared."""
        if interaction == IDENTITY_INTERACTION:
            return np.eye(dim, dtype=np.complex128)
        if interaction in self._interactions:
            return self._interactions[interaction]
        if interaction.endswith(INVERSE_SUFFIX):
            base = interaction[: -len(INVERSE_SUFFIX)]
            if base in self._interactions:
                return dagger(self._interactions[base])
        return None

    def transition(self, source: MeasurementRef, target: MeasurementRef, interaction: str) -> np.ndarray:
        """
        Transition matrix from `source` to `target` under `interaction`.

        Args:
            source: Measurement (or id) at the earlier time
            target: Measurement (or id) at the later time
            interaction: Interaction id of the interval

        Returns:
            Read-only complex matrix of shape (dim(target), dim(source))

        Raises:
            UnknownTransition: If no rule resolves the triple
        """
        src_factors = self._factors(source)
        tgt_factors = self._factors(target)
        mat = self._resolve(src_factors, tgt_factors, interaction)
        if mat is None:
            src = FACTOR_SEPARATOR.join(n for n, _ in src_factors)
            tgt = FACTOR_SEPARATOR.join(n for n, _ in tgt_factors)
            logger.error(f"Unresolvable transition ({src} -> {tgt}, {interaction})")
            raise UnknownTransition(f"No transition from {src} to {tgt} under {interaction}")
        return frozen(np.array(mat, dtype=np.complex128))

    def _resolve(self, src_factors, tgt_factors, interaction: str) -> Optional[np.ndarray]:
        if len(src_factors) == 1 and len(tgt_factors) == 1:
            return self._resolve_simple(src_factors[0][0], tgt_factors[0][0], interaction)
        return self._resolve_composite(src_factors, tgt_factors, interaction)

    def _resolve_simple(self, src: str, tgt: str, interaction: str) -> Optional[np.ndarray]:
        if src not in self._measurements or tgt not in self._measurements:
            return None
        if src == tgt and interaction == IDENTITY_INTERACTION:
            return np.eye(self.dim(src), dtype=np.complex128)
        explicit = self._transitions.get((src, tgt, interaction))
        if explicit is not None:
            logger.debug(f"Transition ({src} -> {tgt}, {interaction}): explicit")
            return explicit
        reverse = self._transitions.get((tgt, src, invert_interaction(interaction)))
        if reverse is not None:
            logger.debug(f"Transition ({src} -> {tgt}, {interaction}): inverse of declared reverse")
            return dagger(reverse)
        if src in self._bases and tgt in self._bases:
            u = self.interaction_unitary(interaction, self.dim(src))
            if u is not None and u.shape[0] == self.dim(src) == self.dim(tgt):
                logger.debug(f"Transition ({src} -> {tgt}, {interaction}): from bases")
                return dagger(self._bases[tgt]) @ u @ self._bases[src]
        return None

    def _resolve_composite(self, src_factors, tgt_factors, interaction: str) -> Optional[np.ndarray]:
        if len(src_factors) != len(tgt_factors):
            return None
        parts = interaction.split(FACTOR_SEPARATOR)
        if len(parts) == 1 and interaction == IDENTITY_INTERACTION:
            parts = [IDENTITY_INTERACTION] * len(src_factors)
        if len(parts) != len(src_factors):
            return None
        mats = []
        for (src, _), (tgt, _), part in zip(src_factors, tgt_factors, parts):
            mat = self._resolve_simple(src, tgt, part)
            if mat is None:
                return None
            mats.append(mat)
        logger.debug(f"Composite transition over {len(mats)} factors under {interaction}")
        return kron_all(mats)

    def has_transition(self, source: MeasurementRef, target: MeasurementRef, interaction: str) -> bool:
        try:
            self.transition(source, target, interaction)
        except UnknownTransition:
            return False
        return True


# ------------------------------------------------------------------
# Probability tables
# ------------------------------------------------------------------


@dataclass(frozen=True)
class ProbabilityTable:
    """
    Probabilities of the outcomes of one measurement.

    Attributes:
        measurement: Id of the measurement whose outcomes are tabulated
        probabilities: Probability per outcome index-set
    """

    measurement: str
    probabilities: Mapping[frozenset, float] = field(default_factory=dict)

    def __post_init__(self):
        ordered = dict(sorted(((frozenset(k), float(v)) for k, v in self.probabilities.items()), key=lambda kv: min(kv[0])))
        object.__setattr__(self, "probabilities", ordered)

    def __getitem__(self, indices) -> float:
        key = frozenset([indices]) if isinstance(indices, int) else frozenset(indices)
        return self.probabilities.get(key, 0.0)

    @property
    def outcomes(self) -> List[frozenset]:
        return list(self.probabilities)

    def total(self) -> float:
        return float(sum(self.probabilities.values()))

    def is_normalized(self, tol: float = PROBABILITY_TOL) -> bool:
        return abs(self.total() - 1.0) <= tol

    def max_deviation(self, other: "ProbabilityTable") -> float:
        """Largest absolute difference over the union of outcomes."""
        keys = set(self.probabilities) | set(other.probabilities)
        if not keys:
            return 0.0
        return max(abs(self.probabilities.get(k, 0.0) - other.probabilities.get(k, 0.0)) for k in keys)

    def labelled(self) -> Dict[str, float]:
        return {"∨".join(str(i) for i in sorted(k)): v for k, v in self.probabilities.items()}

    def as_array(self) -> np.ndarray:
        return np.array(list(self.probabilities.values()))


def table_from_atomic(measurement: Measurement, atomic_probs: Seq[float]) -> ProbabilityTable:
    """Sum atomic probabilities into the blocks of a measurement's partition."""
    probs = np.asarray(atomic_probs, dtype=np.float64)
    return ProbabilityTable(
        measurement.id,
        {block: float(sum(probs[i - 1] for i in block)) for block in measurement.partition},
    )


# ------------------------------------------------------------------
# Random models and closure
# ------------------------------------------------------------------


def random_model(
    rng: np.random.Generator,
    dim: int,
    measurements: Seq[str] = ("L", "M", "N"),
    interactions: Seq[str] = ("I1", "I2"),
) -> AmplitudeModel:
    """
    Random closed model: the first measurement is the reference frame, the
    others get Haar-random bases, and every interaction is Haar-random.
    """
    if dim > MAX_DIMENSION:
        raise ResourceLimit(f"Dimension {dim} exceeds cap {MAX_DIMENSION}")
    bases = {}
    for k, name in enumerate(measurements):
        bases[name] = np.eye(dim, dtype=np.complex128) if k == 0 else random_unitary(dim, rng)
    unitaries = {name: random_unitary(dim, rng) for name in interactions}
    return AmplitudeModel.from_bases(bases, unitaries)


def check_closure_consistency(model: AmplitudeModel, tol: float = UNITARY_TOL) -> CheckResult:
    """
    Check that zero-duration transformations compose: T(M→N) = T(K→N) T(M→K)
    for every triple of same-dimension measurements whose transitions resolve.
    """
    worst = 0.0
    witness = None
    checked = 0
    names = list(model.measurements)
    for k in names:
        for m in names:
            for n in names:
                if len({model.dim(k), model.dim(m), model.dim(n)}) != 1:
                    continue
                if not (
                    model.has_transition(m, n, IDENTITY_INTERACTION)
                    and model.has_transition(k, n, IDENTITY_INTERACTION)
                    and model.has_transition(m, k, IDENTITY_INTERACTION)
                ):
                    continue
                direct = model.transition(m, n, IDENTITY_INTERACTION)
                via = model.transition(k, n, IDENTITY_INTERACTION) @ model.transition(m, k, IDENTITY_INTERACTION)
                residual = float(np.max(np.abs(direct - via)))
                checked += 1
                if residual > worst:
                    worst, witness = residual, {"from": m, "via": k, "to": n}
    logger.debug(f"Closure consistency: {checked} triples, worst residual {worst:.3e}")
    return CheckResult(
        name="model:closure-consistency",
        passed=worst <= tol,
        residual=worst,
        tolerance=tol,
        witness=witness if worst > tol else None,
        details={"triples": checked},
    )


def unitarity_checks(model: AmplitudeModel, tol: float = UNITARY_TOL) -> List[CheckResult]:
    """One check per declared matrix: interactions, bases and explicit transitions."""
    named: List[Tuple[str, np.ndarray]] = []
    named += [(f"interaction {k}", u) for k, u in model.interactions.items()]
    named += [(f"basis {k}", b) for k, b in model.bases.items()]
    named += [(f"transition {k[0]}->{k[1]} ({k[2]})", t) for k, t in model.transitions.items()]
    results = []
    for label, mat in named:
        defect = unitarity_defect(mat)
        results.append(
            CheckResult(
                name=f"model:unitary:{label}",
                passed=defect <= tol,
                residual=defect,
                tolerance=tol,
            )
        )
    return results

