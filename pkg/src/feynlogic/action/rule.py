"""
The amplitude-action rule.

If the amplitude of a near-classical path is a continuous function f of its
action, additivity of the action under concatenation and the product rule
give f(x + y) = f(x) f(y), and inversion together with the conjugation rule
for inverted sequences gives f(−x) = f(x)*. Writing f = R·e^{iΦ}, the first
equation forces R(x) = e^{βx} and Φ(x) = αx, and the second forces β = 0.
Hence z(A) = e^{iαS_A}.

Phases are always handled as unit phasors e^{iΦ}, never as unwrapped angles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from ..errors import OutOfRange
from ..composition.axioms import Axiom, AxiomCheck, ViolationReport
from ..composition.candidates import UnaryCandidate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionScale:
    """
    Attributes:
        alpha: Inverse action unit, the role played by 1/ħ
    """

    alpha: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise OutOfRange(f"alpha must be positive and finite, got {self.alpha}")


def amplitude_from_action(action: Union[float, np.ndarray], scale: ActionScale = ActionScale()):
    """e^{iαS}; complex for a scalar action, an array otherwise."""
    s = np.asarray(action, dtype=np.float64)
    if not np.all(np.isfinite(s)):
        raise OutOfRange("Action must be finite")
    z = np.exp(1j * scale.alpha * s)
    return complex(z) if z.ndim == 0 else z


# ------------------------------------------------------------------
# Candidate amplitude maps on the real line
# ------------------------------------------------------------------

PHASE = UnaryCandidate("exp(ix)", lambda x: np.exp(1j * x), expected_pass=True)
DOUBLE_PHASE = UnaryCandidate("exp(2ix)", lambda x: np.exp(2j * x), expected_pass=True)
REVERSED_PHASE = UnaryCandidate("exp(-ix)", lambda x: np.exp(-1j * x), expected_pass=True)
GROWING_PHASE = UnaryCandidate("exp(x+ix)", lambda x: np.exp((1 + 1j) * x.real))
DECAYING = UnaryCandidate("exp(-x)", lambda x: np.exp(-x.real))
COSINE = UnaryCandidate("cos(x)", lambda x: np.cos(x.real))

ACTION_MAPS: Dict[str, UnaryCandidate] = {
    c.label: c for c in (PHASE, DOUBLE_PHASE, REVERSED_PHASE, GROWING_PHASE, DECAYING, COSINE)
}


def _relative(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return np.abs(lhs - rhs) / scale


def evaluate_amplitude_map(f: UnaryCandidate, samples: int, seed: int, span: float = 5.0) -> AxiomCheck:
    """Residuals of multiplicativity, conjugate inversion and unit modulus on [−span, span]."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    x = rng.uniform(-span, span, size=samples)
    y = rng.uniform(-span, span, size=samples)
    fx, fy = f(x), f(y)
    check = AxiomCheck(f.label, samples)
    check.record(Axiom.HOMOMORPHISM, _relative(f(x + y), fx * fy), {"x": x, "y": y})
    check.record(Axiom.CONJUGATE_INVERSION, _relative(f(-x), np.conj(fx)), {"x": x})
    check.record(Axiom.UNIT_MODULUS, np.abs(np.abs(fx) - 1.0), {"x": x})
    return check


def check_candidate_amplitude_map(
    f: UnaryCandidate, samples: int, seed: int, span: float = 5.0
) -> List[ViolationReport]:
    """
    Check f(x + y) = f(x) f(y) and f(−x) = f(x)* on sampled reals, and that the
    modulus R = |f| is identically 1.

    Relative residuals are used so growing candidates are judged on their
    structure rather than on floating-point magnitude.

    Returns:
        One ViolationReport per violated constraint; empty for e^{iαx}
    """
    return evaluate_amplitude_map(f, samples, seed, span).violations


@dataclass(frozen=True)
class AmplitudeMapFit:
    """
    Fit of f(x) ≈ e^{βx}·e^{iαx}.

    Attributes:
        beta: Growth rate of the modulus
        alpha: Phase rate
        residual: max relative |f − e^{(β + iα)x}| on the fit grid
    """

    beta: float
    alpha: float
    residual: float

    def as_dict(self) -> Dict[str, float]:
        return {"beta": self.beta, "alpha": self.alpha, "residual": self.residual}


def fit_amplitude_map(f: UnaryCandidate, span: float = 1.0, points: int = 2001) -> AmplitudeMapFit:
    """
    Estimate β and α for a candidate amplitude map.

    β is the least-squares slope of log|f|. α is read from the mean ratio of
    neighbouring unit phasors, which is free of 2πn branch choices as long as
    |α|·h < π for the grid spacing h.

    Raises:
        OutOfRange: If f vanishes on the fit grid
    """
    x = np.linspace(-span, span, points)
    fx = f(x)
    modulus = np.abs(fx)
    if np.any(modulus == 0):
        raise OutOfRange(f"Candidate {f.label} vanishes on the fit grid")
    beta = float(np.polyfit(x, np.log(modulus), 1)[0])
    phasor = fx / modulus
    h = x[1] - x[0]
    alpha = float(np.angle(np.mean(phasor[1:] * np.conj(phasor[:-1]))) / h)
    model = np.exp((beta + 1j * alpha) * x)
    residual = float(np.max(_relative(fx, model)))
    logger.debug(f"Fit {f.label}: beta={beta:.6g} alpha={alpha:.6g} residual={residual:.3e}")
    return AmplitudeMapFit(beta, alpha, residual)
