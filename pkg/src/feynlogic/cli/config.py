"""
Experiment description files.

A description is a JSON document validated against the pydantic models
below. Complex matrices are nested lists of [re, im] pairs. Names used
anywhere in the file must be declared in it; `build_config` resolves them
into an AmplitudeModel, Sequences and Experiments.

Example:
    {
      "schema_version": 1,
      "name": "spin_half",
      "measurements": [
        {"name": "Z", "outcomes": 2, "basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
      ],
      "sequences": {
        "stay": {"events": [{"measurement": "Z", "outcome": 1}, {"measurement": "Z", "outcome": 1}]}
      }
    }
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
import orjson
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PositiveInt, ValidationError, field_validator, model_validator

from ..action.paths import PathSpec
from ..amplitudes.model import AmplitudeModel
from ..constants import FACTOR_SEPARATOR, IDENTITY_INTERACTION, INVERSE_SUFFIX, SCHEMA_VERSION
from ..disturbance.experiment import Experiment, Stage
from ..errors import ParseError, SequenceError, UnknownSequence, UnresolvedReference
from ..logic.outcomes import Measurement, coarse_grain
from ..logic.sequences import Sequence, compose, event_for
from ..utils import pairs_to_complex

logger = logging.getLogger(__name__)

BUNDLED_PACKAGE = "feynlogic.configs"

ComplexPair = Tuple[float, float]
Matrix = List[List[ComplexPair]]


def _square(matrix: Matrix) -> Matrix:
    if any(len(row) != len(matrix) for row in matrix):
        raise ValueError(f"matrix must be square, got {len(matrix)} rows of lengths {[len(r) for r in matrix]}")
    return matrix


SquareMatrix = Annotated[Matrix, AfterValidator(_square)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class MeasurementConfig(_Strict):
    """
    An atomic measurement, or a coarse-grained view of one (`base` + `partition`).
    """

    name: str
    outcomes: Optional[int] = Field(default=None, ge=2)
    basis: Optional[SquareMatrix] = None
    base: Optional[str] = None
    partition: Optional[List[List[PositiveInt]]] = None

    @model_validator(mode='after')
    def _check_shape(self) -> "MeasurementConfig":
        if self.base is None and self.outcomes is None:
            raise ValueError(f"measurement {self.name} needs 'outcomes' or a 'base'")
        if self.base is not None and (self.basis is not None or self.outcomes is not None):
            raise ValueError(f"coarse-grained measurement {self.name} takes only 'base' and 'partition'")
        if self.base is not None and self.partition is None:
            raise ValueError(f"coarse-grained measurement {self.name} needs a 'partition'")
        if self.basis is not None and len(self.basis) != self.outcomes:
            raise ValueError(f"basis of {self.name} has dimension {len(self.basis)}, expected {self.outcomes}")
        return self


class TransitionConfig(_Strict):
    source: str
    target: str
    interaction: str = IDENTITY_INTERACTION
    matrix: SquareMatrix


class EventConfig(_Strict):
    measurement: str
    outcome: Union[PositiveInt, List[PositiveInt]]
    time: Optional[int] = None


class SequenceConfig(_Strict):
    system: str = "S"
    events: List[EventConfig] = Field(min_length=2)
    interactions: Optional[List[str]] = None


class PreparationConfig(_Strict):
    measurement: str
    outcome: PositiveInt


class StageConfig(_Strict):
    measurement: str
    interaction: str = IDENTITY_INTERACTION


class ExperimentConfig(_Strict):
    """A no-disturbance layout; the trivial measurement goes before stage `insert_at`."""

    preparation: PreparationConfig
    stages: List[StageConfig] = Field(min_length=1)
    insert_at: PositiveInt = 1
    trivialize: Optional[str] = None
    system: str = "S"


class CompositeConfig(_Strict):
    left: str
    right: str


class OperatorConfig(_Strict):
    measurement: str
    reference: Optional[str] = None
    values: Optional[List[float]] = None


class PathConfig(_Strict):
    positions: List[float] = Field(min_length=2)
    times: List[float] = Field(min_length=2)

    @model_validator(mode='after')
    def _check_samples(self) -> "PathConfig":
        if len(self.positions) != len(self.times):
            raise ValueError(f"path has {len(self.positions)} positions but {len(self.times)} times")
        if not all(math.isfinite(v) for v in self.positions + self.times):
            raise ValueError("path samples must be finite")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("path times must be strictly increasing")
        return self


class FeynlogicConfig(_Strict):
    """Top-level experiment description."""

    schema_version: Literal[1]
    name: str
    description: Optional[str] = None
    systems: List[str] = Field(default_factory=lambda: ["S"])
    measurements: List[MeasurementConfig] = Field(min_length=1)
    interactions: Dict[str, SquareMatrix] = Field(default_factory=dict)
    transitions: List[TransitionConfig] = Field(default_factory=list)
    sequences: Dict[str, SequenceConfig] = Field(default_factory=dict)
    composites: Dict[str, CompositeConfig] = Field(default_factory=dict)
    experiments: Dict[str, ExperimentConfig] = Field(default_factory=dict)
    operators: List[OperatorConfig] = Field(default_factory=list)
    paths: Dict[str, PathConfig] = Field(default_factory=dict)

    @field_validator('interactions')
    @classmethod
    def _reserved_names(cls, value: Dict[str, Matrix]) -> Dict[str, Matrix]:
        for name in value:
            if name == IDENTITY_INTERACTION or name.endswith(INVERSE_SUFFIX) or FACTOR_SEPARATOR in name:
                raise ValueError(f"interaction name {name!r} is reserved")
        return value


# ------------------------------------------------------------------
# Parsing
# ------------------------------------------------------------------


def _field_path(loc) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_config(data: Union[bytes, str], source: str = "<string>") -> FeynlogicConfig:
    """
    Parse and validate an experiment description.

    Raises:
        ParseError: On malformed JSON (with line and column) or schema
            violations (with the offending field path)
    """
    try:
        raw = orjson.loads(data)
    except orjson.JSONDecodeError as e:
        logger.error(f"Malformed JSON in {source}: {e.msg} at line {e.lineno}, column {e.colno}")
        raise ParseError(f"{source}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if isinstance(raw, dict) and raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ParseError(f"{source}: unsupported schema_version {raw.get('schema_version')!r}, expected {SCHEMA_VERSION}")
    try:
        return FeynlogicConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = _field_path(first["loc"])
        logger.error(f"Invalid experiment description {source}: {where}: {first['msg']}")
        raise ParseError(f"{source}: field {where}: {first['msg']}") from e


def bundled_configs() -> List[str]:
    """Names of the configs shipped with the package."""
    root = resources.files(BUNDLED_PACKAGE)
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def read_config_bytes(ref: str) -> Tuple[bytes, str]:
    """
    Raw bytes of a config given a bundled name or a file path.

    Returns:
        (data, source label)

    Raises:
        ParseError: If neither a bundled config nor a readable file matches
    """
    if ref in bundled_configs():
        return resources.files(BUNDLED_PACKAGE).joinpath(f"{ref}.json").read_bytes(), ref
    path = Path(ref)
    try:
        return path.read_bytes(), str(path)
    except OSError as e:
        logger.error(f"Cannot read config {ref}: {e}")
        raise ParseError(f"Cannot read config {ref!r}: not a bundled config and not a readable file") from e


def load_config(ref: str) -> FeynlogicConfig:
    data, source = read_config_bytes(ref)
    return parse_config(data, source)


# ------------------------------------------------------------------
# Resolution
# ------------------------------------------------------------------


@dataclass
class LoadedConfig:
    """An experiment description with every name resolved."""

    config: FeynlogicConfig
    model: AmplitudeModel
    measurements: Dict[str, Measurement]
    sequences: Dict[str, Sequence] = field(default_factory=dict)
    experiments: Dict[str, Experiment] = field(default_factory=dict)
    insert_positions: Dict[str, Tuple[int, Optional[Measurement]]] = field(default_factory=dict)
    paths: Dict[str, PathSpec] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.config.name

    def sequence(self, name: str) -> Sequence:
        try:
            return self.sequences[name]
        except KeyError:
            known = ", ".join(sorted(self.sequences)) or "none"
            raise UnknownSequence(f"Sequence {name!r} is not declared in {self.name} (declared: {known})") from None

    def experiment(self, name: str) -> Experiment:
        try:
            return self.experiments[name]
        except KeyError:
            known = ", ".join(sorted(self.experiments)) or "none"
            raise UnresolvedReference(f"Experiment {name!r} is not declared in {self.name} (declared: {known})") from None


class _Resolver:
    def __init__(self, config: FeynlogicConfig):
        self.config = config
        self.measurements: Dict[str, Measurement] = {}
        self.bases: Dict[str, np.ndarray] = {}

    def measurement(self, name: str, where: str) -> Measurement:
        try:
            return self.measurements[name]
        except KeyError:
            raise UnresolvedReference(f"{where}: measurement {name!r} is not declared") from None

    def check_system(self, system: str, where: str) -> None:
        if system not in self.config.systems:
            raise UnresolvedReference(f"{where}: system {system!r} is not declared")

    def check_interaction(self, interaction: str, where: str) -> None:
        for part in interaction.split(FACTOR_SEPARATOR):
            base = part[: -len(INVERSE_SUFFIX)] if part.endswith(INVERSE_SUFFIX) else part
            if base == IDENTITY_INTERACTION or base in self.config.interactions:
                continue
            if any(t.interaction == part for t in self.config.transitions):
                continue
            if any(t.interaction == base for t in self.config.transitions):
                continue
            raise UnresolvedReference(f"{where}: interaction {part!r} is not declared")

    def resolve_measurements(self) -> None:
        for m in self.config.measurements:
            if m.name in self.measurements:
                raise UnresolvedReference(f"Measurement {m.name!r} is declared twice")
            if m.base is None:
                self.measurements[m.name] = Measurement.atomic(m.name, m.outcomes)
                if m.basis is not None:
                    self.bases[m.name] = pairs_to_complex(m.basis)
        for m in self.config.measurements:
            if m.base is None:
                continue
            base = self.measurement(m.base, f"measurement {m.name}")
            if not base.is_atomic:
                raise UnresolvedReference(f"measurement {m.name}: base {m.base!r} is itself coarse-grained")
            try:
                self.measurements[m.name] = coarse_grain(base, m.partition)
            except SequenceError as e:
                raise ParseError(f"measurement {m.name}: {e}") from e

    def atomic_ids(self) -> List[Measurement]:
        return [m for name, m in self.measurements.items() if m.is_atomic and m.id == name]

    def sequence(self, name: str, spec: SequenceConfig) -> Sequence:
        where = f"sequence {name}"
        self.check_system(spec.system, where)
        events = []
        for k, e in enumerate(spec.events):
            m = self.measurement(e.measurement, where)
            block = frozenset([e.outcome]) if isinstance(e.outcome, int) else frozenset(e.outcome)
            if not block or max(block) > m.atomic_count:
                raise UnresolvedReference(f"{where}: outcome {sorted(block)} out of range for {e.measurement}")
            time = e.time if e.time is not None else k
            events.append(event_for(time, m, block))
        interactions = spec.interactions or [IDENTITY_INTERACTION] * (len(events) - 1)
        for interaction in interactions:
            self.check_interaction(interaction, where)
        try:
            return Sequence(spec.system, tuple(events), tuple(interactions))
        except SequenceError as e:
            raise ParseError(f"{where}: {e}") from e

    def experiment(self, name: str, spec: ExperimentConfig) -> Tuple[Experiment, Tuple[int, Optional[Measurement]]]:
        where = f"experiment {name}"
        self.check_system(spec.system, where)
        prep = self.measurement(spec.preparation.measurement, where)
        if spec.insert_at > len(spec.stages):
            raise ParseError(f"{where}: insert_at must lie in 1..{len(spec.stages)}, got {spec.insert_at}")
        if spec.preparation.outcome > prep.atomic_count:
            raise UnresolvedReference(f"{where}: preparation outcome {spec.preparation.outcome} out of range")
        stages = []
        for s in spec.stages:
            self.check_interaction(s.interaction, where)
            stages.append(Stage(self.measurement(s.measurement, where), s.interaction))
        try:
            experiment = Experiment.build(prep, spec.preparation.outcome, stages, spec.system)
        except SequenceError as e:
            raise ParseError(f"{where}: {e}") from e
        trivial = self.measurement(spec.trivialize, where) if spec.trivialize else None
        return experiment, (spec.insert_at, trivial)


def build_config(config: FeynlogicConfig, validate: bool = True) -> LoadedConfig:
    """
    Resolve every name in a parsed description.

    Args:
        config: Parsed description
        validate: Check unitarity of every matrix when building the model

    Raises:
        UnresolvedReference: If a name does not resolve
        DimensionMismatch: If a matrix does not fit its measurements
        NotUnitary: If validation is on and a matrix is not unitary
    """
    r = _Resolver(config)
    r.resolve_measurements()
    transitions = {}
    for t in config.transitions:
        for name in (t.source, t.target):
            m = r.measurement(name, f"transition {t.source}->{t.target}")
            if not m.is_atomic or m.id != name:
                raise UnresolvedReference(f"transition {t.source}->{t.target}: {name!r} is not an atomic measurement")
        transitions[(t.source, t.target, t.interaction)] = pairs_to_complex(t.matrix)
    interactions = {name: pairs_to_complex(u) for name, u in config.interactions.items()}
    model = AmplitudeModel(
        r.atomic_ids(),
        interactions=interactions,
        transitions=transitions,
        bases=r.bases,
        validate=validate,
    )
    loaded = LoadedConfig(config, model, dict(r.measurements))
    for name, spec in config.sequences.items():
        loaded.sequences[name] = r.sequence(name, spec)
    for name, spec in config.composites.items():
        if name in loaded.sequences:
            raise UnresolvedReference(f"composite {name!r} clashes with a sequence of the same name")
        where = f"composite {name}"
        for part in (spec.left, spec.right):
            if part not in loaded.sequences:
                raise UnresolvedReference(f"{where}: sequence {part!r} is not declared")
        try:
            loaded.sequences[name] = compose(loaded.sequences[spec.left], loaded.sequences[spec.right])
        except SequenceError as e:
            raise ParseError(f"{where}: {e}") from e
    for name, spec in config.experiments.items():
        loaded.experiments[name], loaded.insert_positions[name] = r.experiment(name, spec)
    for op in config.operators:
        r.measurement(op.measurement, "operator")
        if op.reference is not None:
            r.measurement(op.reference, "operator")
    for name, spec in config.paths.items():
        try:
            loaded.paths[name] = PathSpec(tuple(spec.positions), tuple(spec.times))
        except ValueError as e:
            raise ParseError(f"path {name}: {e}") from e
    logger.info(
        f"Loaded {config.name}: {len(loaded.measurements)} measurements, "
        f"{len(loaded.sequences)} sequences, {len(loaded.experiments)} experiments"
    )
    return loaded


def load(ref: str, validate: bool = True) -> LoadedConfig:
    """Load, validate and resolve a bundled config name or a file path."""
    return build_config(load_config(ref), validate=validate)
