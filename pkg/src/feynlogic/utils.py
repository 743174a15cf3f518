from __future__ import annotations

import numpy as np


def complex_pair(z) -> list[float]:
  """Encode a complex number as [re, im]."""
  z = complex(z)
  return [z.real, z.imag]


def pairs_to_complex(data) -> np.ndarray:
  """Decode nested [re, im] pairs into a complex array."""
  arr = np.asarray(data, dtype=np.float64)
  if arr.shape[-1] != 2:
    raise ValueError(f'Expected [re, im] pairs, got trailing dimension {arr.shape[-1]}')
  return arr[..., 0] + 1j * arr[..., 1]


def complex_to_pairs(arr) -> list:
  arr = np.asarray(arr, dtype=np.complex128)
  return np.stack([arr.real, arr.imag], axis=-1).tolist()


def _json_serializer(obj):
  """Fallback serializer for orjson: complex values, numpy data and sets."""
  if isinstance(obj, (set, frozenset)):
    return sorted(obj)
  if isinstance(obj, complex):
    return complex_pair(obj)
  if isinstance(obj, np.ndarray):
    if np.iscomplexobj(obj):
      return complex_to_pairs(obj)
    return obj.tolist()
  if isinstance(obj, np.complexfloating):
    return complex_pair(obj)
  if isinstance(obj, np.generic):
    return obj.item()
  return str(obj)
