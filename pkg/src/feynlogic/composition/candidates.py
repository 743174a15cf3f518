"""
Candidate composite-amplitude functions.

A binary candidate F gives the amplitude of a composite sequence from the
amplitudes of its parts; a unary candidate is one of its restrictions
f(z) = F(z, 1). Evaluators accept numpy arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

BinaryEvaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]
UnaryEvaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BinaryCandidate:
    """
    Attributes:
        label: Name used in reports
        evaluator: (u, v) -> F(u, v), total on the closed unit disk squared
        expected_pass: Whether the candidate is meant to satisfy every constraint
    """

    label: str
    evaluator: BinaryEvaluator
    expected_pass: bool = False

    def __call__(self, u, v):
        u = np.asarray(u, dtype=np.complex128)
        v = np.asarray(v, dtype=np.complex128)
        out = np.broadcast_to(np.asarray(self.evaluator(u, v), dtype=np.complex128), np.broadcast(u, v).shape)
        return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class UnaryCandidate:
    label: str
    evaluator: UnaryEvaluator
    expected_pass: bool = False

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.broadcast_to(np.asarray(self.evaluator(z), dtype=np.complex128), z.shape)
        return complex(out) if out.ndim == 0 else out


def composite_amplitude(a: complex, b: complex) -> complex:
    """Amplitude of a composite sequence from those of its parts: F(a, b) = ab."""
    return complex(a) * complex(b)


# ------------------------------------------------------------------
# Named candidates
# ------------------------------------------------------------------

PRODUCT = BinaryCandidate("product", lambda u, v: u * v, expected_pass=True)
CONJUGATE_PRODUCT = BinaryCandidate("conjugate-product", lambda u, v: np.conj(u) * np.conj(v))
CONJUGATE_LEFT = BinaryCandidate("conjugate-left", lambda u, v: np.conj(u) * v)
SQUARED_PRODUCT = BinaryCandidate("squared-product", lambda u, v: (u * v) ** 2)
LEFT_PROJECTION = BinaryCandidate("left-projection", lambda u, v: u + 0 * v)
ZERO = BinaryCandidate("zero", lambda u, v: 0 * u * v)
CONSTANT_HALF = BinaryCandidate("constant-half", lambda u, v: 0.5 + 0 * u * v)

IDENTITY = UnaryCandidate("identity", lambda z: z, expected_pass=True)
CONJUGATE = UnaryCandidate("conjugate", np.conj, expected_pass=True)
ZERO_MAP = UnaryCandidate("zero", lambda z: 0 * z, expected_pass=True)
SQUARE = UnaryCandidate("square", lambda z: z**2)

BINARY_CANDIDATES: Dict[str, BinaryCandidate] = {
    c.label: c
    for c in (PRODUCT, CONJUGATE_PRODUCT, CONJUGATE_LEFT, SQUARED_PRODUCT, LEFT_PROJECTION, ZERO, CONSTANT_HALF)
}

UNARY_CANDIDATES: Dict[str, UnaryCandidate] = {c.label: c for c in (IDENTITY, CONJUGATE, ZERO_MAP, SQUARE)}


def left_restriction(F: BinaryCandidate) -> UnaryCandidate:
    """f(z) = F(z, 1)."""
    return UnaryCandidate(f"{F.label}(z,1)", lambda z: F(z, np.ones_like(z)))


def right_restriction(F: BinaryCandidate) -> UnaryCandidate:
    """f(z) = F(1, z)."""
    return UnaryCandidate(f"{F.label}(1,z)", lambda z: F(np.ones_like(z), z))
