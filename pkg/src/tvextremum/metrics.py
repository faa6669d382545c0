"""Divergences on finite alphabets and their inequalities with TV distance.

The reference measure is counting measure, so densities are the
probability vectors themselves. Relative entropy uses natural logarithms,
which is what the Pinsker bound ``TV <= sqrt(2 KL)`` requires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import _check_lengths, as_probability, tv_distance

__all__ = [
    "BOUND_SLACK_TOL",
    "BoundCheck",
    "DivergenceReport",
    "kl_divergence",
    "hellinger_integral",
    "kh_distance",
    "check_bounds",
]

BOUND_SLACK_TOL = 1e-12


@dataclass(frozen=True)
class BoundCheck:
    name: str
    holds: bool
    slack: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class DivergenceReport:
    tv: float
    kl: float
    hellinger_integral: float
    kh_distance: float
    bounds_satisfied: tuple[BoundCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(b.holds for b in self.bounds_satisfied)


def _pair(nu, mu):
    nu, mu = as_probability(nu), as_probability(mu)
    _check_lengths(nu, mu)
    return nu.entries, mu.entries


def kl_divergence(nu, mu) -> float:
    """Relative entropy ``H(nu | mu)`` in nats, ``inf`` unless ``nu << mu``."""
    p, q = _pair(nu, mu)
    support = p > 0
    if np.any(q[support] == 0):
        return math.inf
    val = float(np.sum(p[support] * np.log(p[support] / q[support])))
    return max(val, 0.0)


def hellinger_integral(nu, mu) -> float:
    """``sum_i sqrt(nu_i mu_i)``, clipped to [0, 1]."""
    p, q = _pair(nu, mu)
    return min(max(float(np.sum(np.sqrt(p * q))), 0.0), 1.0)


def kh_distance(nu, mu) -> float:
    """Kakutani-Hellinger distance ``sqrt(1 - H(nu, mu))``."""
    return math.sqrt(max(1.0 - hellinger_integral(nu, mu), 0.0))


def _le(name: str, lhs: float, rhs: float) -> BoundCheck:
    slack = rhs - lhs
    return BoundCheck(name, slack >= -BOUND_SLACK_TOL, slack, lhs, rhs)


def check_bounds(nu, mu) -> DivergenceReport:
    """Evaluate every TV inequality against KL, Hellinger and Kakutani-Hellinger.

    The Pinsker entry is recorded as holding with infinite slack when KL is
    infinite.
    """
    tv = tv_distance(nu, mu)
    kl = kl_divergence(nu, mu)
    h = hellinger_integral(nu, mu)
    dkh = kh_distance(nu, mu)

    if math.isinf(kl):
        pinsker = BoundCheck("pinsker", True, math.inf, tv, math.inf)
    else:
        pinsker = _le("pinsker", tv, math.sqrt(2.0 * kl))
    checks = (
        pinsker,
        _le("hellinger_lower", 2.0 * (1.0 - h), tv),
        _le("hellinger_upper", tv, math.sqrt(8.0 * (1.0 - h))),
        _le("hellinger_squared", tv, 2.0 * math.sqrt(max(1.0 - h * h, 0.0))),
        _le("kh_lower", 2.0 * dkh * dkh, tv),
        _le("kh_upper", tv, math.sqrt(8.0) * dkh),
    )
    return DivergenceReport(tv, kl, h, dkh, checks)
