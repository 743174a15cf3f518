"""
Numerical checks of the constraints on composite amplitudes.

The composition operator is associative, satisfies the interchange law with
the series operator and distributes over the parallel operator. Through the
product and sum rules these become functional equations for F:

    associativity           F(a, F(b, c)) = F(F(a, b), c)
    cross-multiplicativity  F(ab, cd) = F(a, c) F(b, d)
    left-distributivity     F(a, b + c) = F(a, b) + F(a, c)
    right-distributivity    F(a + b, c) = F(a, c) + F(b, c)

and for its restriction f(z) = F(z, 1) the pair

    additivity              f(z1 + z2) = f(z1) + f(z2)
    multiplicativity        f(z1 z2) = f(z1) f(z2)

Arguments are sampled uniformly on the closed unit disk. Draws whose sum
leaves the disk are skipped and counted.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..constants import AXIOM_TOL
from ..errors import ZeroCandidate
from ..report import CheckResult
from .candidates import BINARY_CANDIDATES, UNARY_CANDIDATES, BinaryCandidate, UnaryCandidate, left_restriction, right_restriction

logger = logging.getLogger(__name__)


class Axiom(str, enum.Enum):
    ASSOCIATIVITY = "associativity"
    CROSS_MULTIPLICATIVITY = "cross-multiplicativity"
    LEFT_DISTRIBUTIVITY = "left-distributivity"
    RIGHT_DISTRIBUTIVITY = "right-distributivity"
    ADDITIVITY = "additivity"
    MULTIPLICATIVITY = "multiplicativity"
    FIXED_POINT = "fixed-point"
    FACTORIZATION = "factorization"
    ADMISSIBILITY = "admissibility"
    HOMOMORPHISM = "homomorphism"
    CONJUGATE_INVERSION = "conjugate-inversion"
    UNIT_MODULUS = "unit-modulus"


BINARY_AXIOMS = (
    Axiom.ASSOCIATIVITY,
    Axiom.CROSS_MULTIPLICATIVITY,
    Axiom.LEFT_DISTRIBUTIVITY,
    Axiom.RIGHT_DISTRIBUTIVITY,
)
UNARY_AXIOMS = (Axiom.ADDITIVITY, Axiom.MULTIPLICATIVITY)


@dataclass(frozen=True)
class ViolationReport:
    """
    Worst violation of one axiom.

    Attributes:
        axiom: Violated axiom
        witness: Sampled arguments at the largest residual
        residual: |lhs − rhs| at the witness
        count: Number of draws with residual above tolerance
    """

    axiom: Axiom
    witness: Dict[str, complex]
    residual: float
    count: int = 1

    def as_dict(self):
        return {"axiom": self.axiom.value, "witness": self.witness, "residual": self.residual, "count": self.count}


@dataclass
class AxiomCheck:
    """Per-axiom residuals and skip counts for one candidate."""

    label: str
    samples: int
    residuals: Dict[Axiom, float] = field(default_factory=dict)
    skipped: Dict[Axiom, int] = field(default_factory=dict)
    violations: List[ViolationReport] = field(default_factory=list)

    def skip_rate(self, axiom: Axiom) -> float:
        return self.skipped.get(axiom, 0) / self.samples

    def record(
        self,
        axiom: Axiom,
        residual: np.ndarray,
        args: Dict[str, np.ndarray],
        valid: Optional[np.ndarray] = None,
        tol: float = AXIOM_TOL,
    ) -> None:
        if valid is None:
            valid = np.ones(residual.shape, dtype=bool)
        self.skipped[axiom] = int((~valid).sum())
        residual = np.where(valid, residual, 0.0)
        if not valid.any():
            self.residuals[axiom] = 0.0
            return
        worst = int(np.argmax(residual))
        self.residuals[axiom] = float(residual[worst])
        bad = int((residual > tol).sum())
        if bad:
            witness = {k: complex(v[worst]) for k, v in args.items()}
            self.violations.append(ViolationReport(axiom, witness, float(residual[worst]), bad))
            logger.debug(f"{self.label}: {axiom.value} violated {bad} times, worst {residual[worst]:.3e}")


def sample_disk(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform samples on the closed unit disk."""
    r = np.sqrt(rng.random(size))
    theta = 2.0 * np.pi * rng.random(size)
    return r * np.exp(1j * theta)


def evaluate_binary_axioms(F: BinaryCandidate, samples: int, seed: int) -> AxiomCheck:
    """Residuals of the four binary axioms on `samples` draws."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    a, b, c, d = (sample_disk(rng, samples) for _ in range(4))
    check = AxiomCheck(F.label, samples)
    check.record(Axiom.ASSOCIATIVITY, np.abs(F(a, F(b, c)) - F(F(a, b), c)), {"a": a, "b": b, "c": c})
    check.record(Axiom.CROSS_MULTIPLICATIVITY, np.abs(F(a * b, c * d) - F(a, c) * F(b, d)), {"a": a, "b": b, "c": c, "d": d})
    inside_bc = np.abs(b + c) <= 1.0
    check.record(
        Axiom.LEFT_DISTRIBUTIVITY,
        np.abs(F(a, b + c) - (F(a, b) + F(a, c))),
        {"a": a, "b": b, "c": c},
        valid=inside_bc,
    )
    inside_ab = np.abs(a + b) <= 1.0
    check.record(
        Axiom.RIGHT_DISTRIBUTIVITY,
        np.abs(F(a + b, c) - (F(a, c) + F(b, c))),
        {"a": a, "b": b, "c": c},
        valid=inside_ab,
    )
    return check


def check_binary_axioms(F: BinaryCandidate, samples: int, seed: int) -> List[ViolationReport]:
    """
    Check associativity, cross-multiplicativity and both distributivities.

    Returns:
        One ViolationReport per violated axiom; empty if all hold
    """
    return evaluate_binary_axioms(F, samples, seed).violations


def evaluate_unary_pair(f: UnaryCandidate, samples: int, seed: int) -> AxiomCheck:
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    z1, z2 = sample_disk(rng, samples), sample_disk(rng, samples)
    check = AxiomCheck(f.label, samples)
    check.record(
        Axiom.ADDITIVITY,
        np.abs(f(z1 + z2) - (f(z1) + f(z2))),
        {"z1": z1, "z2": z2},
        valid=np.abs(z1 + z2) <= 1.0,
    )
    check.record(Axiom.MULTIPLICATIVITY, np.abs(f(z1 * z2) - f(z1) * f(z2)), {"z1": z1, "z2": z2})
    return check


def check_unary_pair(f: UnaryCandidate, samples: int, seed: int) -> List[ViolationReport]:
    """
    Check f(z1 + z2) = f(z1) + f(z2) (for sums inside the disk) and
    f(z1 z2) = f(z1) f(z2).
    """
    return evaluate_unary_pair(f, samples, seed).violations


def check_admissibility(F: BinaryCandidate, tol: float = AXIOM_TOL) -> Optional[ViolationReport]:
    """F(1, 1) = 0 forces F ≡ 0 through cross-multiplicativity; such an F is inadmissible."""
    value = F(1.0, 1.0)
    if abs(value) <= tol:
        return ViolationReport(Axiom.ADMISSIBILITY, {"u": 1 + 0j, "v": 1 + 0j}, float(1.0 - abs(value)))
    return None


def check_fixed_point_constraint(F: BinaryCandidate, samples: int, seed: int) -> Optional[ViolationReport]:
    """
    Check F(u, 1) = F(F(u, 1), 1), which associativity implies once F(1, 1) = 1.

    The point u = i is evaluated first.

    Returns:
        ViolationReport, or None if the constraint holds on every draw

    Raises:
        ZeroCandidate: If F(1, 1) = 0
    """
    if check_admissibility(F) is not None:
        logger.warning(f"Candidate {F.label} has F(1, 1) = 0")
        raise ZeroCandidate(f"Candidate {F.label} has F(1, 1) = 0 and is inadmissible")
    rng = np.random.default_rng(seed)
    u = np.concatenate([[1j], sample_disk(rng, samples)])
    ones = np.ones_like(u)
    f_u = F(u, ones)
    residual = np.abs(f_u - F(f_u, ones))
    check = AxiomCheck(F.label, samples + 1)
    check.record(Axiom.FIXED_POINT, residual, {"u": u})
    return check.violations[0] if check.violations else None


def check_factorization(F: BinaryCandidate, samples: int, seed: int) -> Optional[ViolationReport]:
    """Check F(u, v) = F(u, 1) F(1, v)."""
    rng = np.random.default_rng(seed)
    u, v = sample_disk(rng, samples), sample_disk(rng, samples)
    check = AxiomCheck(F.label, samples)
    check.record(Axiom.FACTORIZATION, np.abs(F(u, v) - F(u, np.ones_like(u)) * F(np.ones_like(v), v)), {"u": u, "v": v})
    return check.violations[0] if check.violations else None


# ------------------------------------------------------------------
# Candidate table
# ------------------------------------------------------------------


def binary_table(F: BinaryCandidate, samples: int, seed: int) -> Dict[str, object]:
    """Pass/fail per constraint for one binary candidate."""
    check = evaluate_binary_axioms(F, samples, seed)
    violated = {v.axiom: v for v in check.violations}
    row: Dict[str, object] = {axiom.value: axiom not in violated for axiom in BINARY_AXIOMS}
    admissibility = check_admissibility(F)
    row[Axiom.ADMISSIBILITY.value] = admissibility is None
    if admissibility is None:
        fixed = check_fixed_point_constraint(F, samples, seed)
        row[Axiom.FIXED_POINT.value] = fixed is None
        if fixed is not None:
            violated[Axiom.FIXED_POINT] = fixed
        for name, restriction in (("left", left_restriction(F)), ("right", right_restriction(F))):
            pair = evaluate_unary_pair(restriction, samples, seed)
            row[f"{name}-restriction"] = not pair.violations
    else:
        violated[Axiom.ADMISSIBILITY] = admissibility
    factor = check_factorization(F, samples, seed)
    row[Axiom.FACTORIZATION.value] = factor is None
    if factor is not None:
        violated[Axiom.FACTORIZATION] = factor
    row["skip-rate"] = {
        a.value: check.skip_rate(a) for a in (Axiom.LEFT_DISTRIBUTIVITY, Axiom.RIGHT_DISTRIBUTIVITY)
    }
    row["violations"] = [v.as_dict() for v in violated.values()]
    return row


def candidate_table(
    samples: int,
    seed: int,
    binary: Optional[Dict[str, BinaryCandidate]] = None,
    unary: Optional[Dict[str, UnaryCandidate]] = None,
) -> List[CheckResult]:
    """
    One check per candidate: a candidate expected to pass must satisfy every
    constraint, any other must be rejected by at least one named constraint.
    """
    results: List[CheckResult] = []
    for F in (binary or BINARY_CANDIDATES).values():
        row = binary_table(F, samples, seed)
        flags = [v for k, v in row.items() if isinstance(v, bool)]
        accepted = all(flags)
        residual = max((v["residual"] for v in row["violations"]), default=0.0)
        results.append(
            CheckResult(
                name=f"composition:binary:{F.label}",
                passed=accepted == F.expected_pass,
                residual=residual,
                tolerance=AXIOM_TOL,
                witness=row["violations"][0] if row["violations"] else None,
                details={"expected": "accept" if F.expected_pass else "reject", **row},
            )
        )
    for f in (unary or UNARY_CANDIDATES).values():
        check = evaluate_unary_pair(f, samples, seed)
        accepted = not check.violations
        results.append(
            CheckResult(
                name=f"composition:unary:{f.label}",
                passed=accepted == f.expected_pass,
                residual=max(check.residuals.values(), default=0.0),
                tolerance=AXIOM_TOL,
                witness=check.violations[0].as_dict() if check.violations else None,
                details={
                    "expected": "accept" if f.expected_pass else "reject",
                    **{a.value: a not in {v.axiom for v in check.violations} for a in UNARY_AXIOMS},
                    "skip-rate": check.skip_rate(Axiom.ADDITIVITY),
                },
            )
        )
    logger.info(f"Candidate table: {sum(r.passed for r in results)}/{len(results)} as expected")
    return results
