"""Value types for finite probability vectors and zero-sum signed vectors.

All vectors are immutable: the underlying numpy arrays are flagged read-only
on construction, so instances can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DimensionError, InvalidProbabilityError, InvalidSignedMeasureError

__all__ = [
    "TAU_SUM",
    "ProbabilityVector",
    "SignedMeasureVector",
    "PayoffVector",
    "JordanDecomposition",
    "as_probability",
    "as_payoff",
    "tv_distance",
    "jordan_decompose",
    "expectation",
]

TAU_SUM = 1e-9

ArrayLike = Union[Sequence[float], np.ndarray]


def _frozen_array(entries) -> np.ndarray:
    arr = np.array(entries, dtype=float).reshape(-1)
    if arr.size == 0:
        raise DimensionError("vector must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Nonnegative vector with entries in [0, 1] summing to one within ``TAU_SUM``."""

    entries: np.ndarray

    def __init__(self, entries: ArrayLike):
        arr = _frozen_array(entries)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise InvalidProbabilityError(f"entries must lie in [0, 1], got {arr.tolist()}")
        total = float(arr.sum())
        if abs(total - 1.0) > TAU_SUM:
            raise InvalidProbabilityError(f"entries sum to {total!r}, not 1")
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return self.entries.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def mass(self, indices: Sequence[int]) -> float:
        """Total mass on a set of indices."""
        if len(indices) == 0:
            return 0.0
        return float(self.entries[list(indices)].sum())

    def tolist(self) -> list[float]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class PayoffVector:
    """Nonnegative pay-off per alphabet element."""

    entries: np.ndarray

    def __init__(self, entries: ArrayLike):
        arr = _frozen_array(entries)
        if np.any(arr < 0.0):
            raise ValueError(f"pay-off entries must be nonnegative, got {arr.tolist()}")
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return self.entries.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, PayoffVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def tolist(self) -> list[float]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class SignedMeasureVector:
    """Real vector with zero total mass."""

    entries: np.ndarray

    def __init__(self, entries: ArrayLike):
        arr = _frozen_array(entries)
        total = float(arr.sum())
        if abs(total) > TAU_SUM:
            raise InvalidSignedMeasureError(f"signed measure has total mass {total!r}, not 0")
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return self.entries.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedMeasureVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    @classmethod
    def between(cls, nu: ProbabilityVector, mu: ProbabilityVector) -> "SignedMeasureVector":
        """The perturbation ``nu - mu``."""
        nu, mu = as_probability(nu), as_probability(mu)
        _check_lengths(nu, mu)
        return cls(nu.entries - mu.entries)


@dataclass(frozen=True)
class JordanDecomposition:
    positive: np.ndarray
    negative: np.ndarray
    alpha: float


def as_probability(p) -> ProbabilityVector:
    return p if isinstance(p, ProbabilityVector) else ProbabilityVector(p)


def as_payoff(ell) -> PayoffVector:
    return ell if isinstance(ell, PayoffVector) else PayoffVector(ell)


def _check_lengths(a, b) -> None:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")


def tv_distance(p, q) -> float:
    """Total variation distance ``sum_i |p_i - q_i|``, a value in [0, 2]."""
    p, q = as_probability(p), as_probability(q)
    _check_lengths(p, q)
    return float(np.abs(p.entries - q.entries).sum())


def jordan_decompose(xi) -> JordanDecomposition:
    """Split a zero-sum vector into its positive and negative variations.

    ``alpha`` is the full total variation ``sum_i |xi_i|``, so each part
    carries mass ``alpha / 2``.
    """
    if not isinstance(xi, SignedMeasureVector):
        xi = SignedMeasureVector(xi)
    x = xi.entries
    pos = np.maximum(x, 0.0)
    neg = np.maximum(-x, 0.0)
    pos.setflags(write=False)
    neg.setflags(write=False)
    return JordanDecomposition(pos, neg, float(np.abs(x).sum()))


def expectation(ell, p) -> float:
    """Average pay-off ``sum_i ell_i p_i``."""
    ell, p = as_payoff(ell), as_probability(p)
    _check_lengths(ell, p)
    return float(ell.entries @ p.entries)
