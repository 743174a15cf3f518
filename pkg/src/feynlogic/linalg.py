"""Dense linear-algebra helpers shared by the amplitude and reconstruction layers."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.stats import unitary_group

from .constants import UNITARY_TOL


def as_complex_matrix(data) -> np.ndarray:
  """Return a read-only complex128 copy of a square matrix."""
  mat = np.array(data, dtype=np.complex128, copy=True)
  if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
    raise ValueError(f'Expected a square matrix, got shape {mat.shape}')
  mat.setflags(write=False)
  return mat


def frozen(arr: np.ndarray) -> np.ndarray:
  """Mark an array read-only and return it."""
  arr.setflags(write=False)
  return arr


def dagger(mat: np.ndarray) -> np.ndarray:
  return mat.conj().T


def unitarity_defect(mat: np.ndarray) -> float:
  """Max-norm of T†T − I."""
  n = mat.shape[0]
  return float(np.max(np.abs(dagger(mat) @ mat - np.eye(n))))


def is_unitary(mat: np.ndarray, tol: float = UNITARY_TOL) -> bool:
  if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
    return False
  return unitarity_defect(mat) <= tol


def hermiticity_defect(mat: np.ndarray) -> float:
  return float(np.max(np.abs(mat - dagger(mat))))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
  """Haar-random unitary drawn from the given generator."""
  if dim == 1:
    return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1), dtype=np.complex128)
  return np.asarray(unitary_group.rvs(dim, random_state=rng), dtype=np.complex128)


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
  vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
  return vec / np.linalg.norm(vec)


def canonical_phase(vec: np.ndarray, atol: float = 1e-12) -> np.ndarray:
  """Fix the overall phase so the first nonzero component is real and nonnegative."""
  out = np.array(vec, dtype=np.complex128, copy=True)
  nonzero = np.flatnonzero(np.abs(out) > atol)
  if nonzero.size == 0:
    return out
  lead = out[nonzero[0]]
  out *= np.conj(lead) / abs(lead)
  out[nonzero[0]] = abs(lead)
  return out


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
  """Kronecker product in row-major factor order."""
  result = np.ones((1, 1), dtype=np.complex128)
  for mat in mats:
    result = np.kron(result, mat)
  return result
