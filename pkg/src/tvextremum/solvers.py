"""Closed-form solvers for the four total-variation extremum problems.

For a pay-off ``ell`` and a nominal probability vector ``mu``:

* ``d-plus``  maximizes ``sum ell_i nu_i`` over the TV ball ``||nu - mu|| <= R``;
* ``d-minus`` minimizes it over the same ball;
* ``r-minus`` is the least TV distance from ``mu`` with ``sum ell_i nu_i <= D``;
* ``r-plus``  is the inverse curve of ``d-plus``, the TV distance needed to
  push the average pay-off up to ``D``.

Every solution moves a half-budget ``alpha`` of mass onto one extreme level
set and drains the same mass from the opposite extreme first, then from the
successive level sets, each clipped at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from .errors import DimensionError, DomainError, InfeasibleError, SweepError
from .measures import PayoffVector, ProbabilityVector, as_payoff, as_probability, expectation
from .partition import LevelPartition, build_partition

__all__ = [
    "TAU_FEAS",
    "Kind",
    "KINDS",
    "ProblemInstance",
    "ExtremumSolution",
    "SweepPoint",
    "r_max",
    "r_max_lower",
    "d_max",
    "solve",
    "solve_d_plus",
    "solve_d_minus",
    "solve_r_plus",
    "solve_r_minus",
    "sweep",
]

TAU_FEAS = 1e-9

Kind = Literal["d-plus", "d-minus", "r-plus", "r-minus"]
KINDS: tuple[str, ...] = ("d-plus", "d-minus", "r-plus", "r-minus")


@dataclass(frozen=True)
class ProblemInstance:
    ell: PayoffVector
    mu: ProbabilityVector
    budget: Optional[float] = None
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "ell", as_payoff(self.ell))
        object.__setattr__(self, "mu", as_probability(self.mu))
        if len(self.ell) != len(self.mu):
            raise DimensionError(f"ell has {len(self.ell)} entries but mu has {len(self.mu)}")
        if self.budget is not None:
            object.__setattr__(self, "budget", float(self.budget))


@dataclass(frozen=True)
class ExtremumSolution:
    """Optimal value with one extremizing probability vector.

    ``value`` is a pay-off for the d-kinds and a TV radius for the r-kinds.
    ``alpha`` is the half-budget actually moved, so ``||nu_star - mu|| = 2 alpha``.
    """

    kind: str
    budget: float
    value: float
    nu_star: ProbabilityVector
    set_masses: tuple[tuple[str, float], ...]
    alpha: float
    partition: LevelPartition
    saturated: bool
    payoff: float = field(default=float("nan"))


@dataclass(frozen=True)
class SweepPoint:
    budget: float
    value: float
    saturated: bool
    alpha: float
    nu_star: ProbabilityVector


def _instance(ell, mu) -> tuple[PayoffVector, ProbabilityVector]:
    ell, mu = as_payoff(ell), as_probability(mu)
    if len(ell) != len(mu):
        raise DimensionError(f"ell has {len(ell)} entries but mu has {len(mu)}")
    return ell, mu


def r_max(ell, mu) -> float:
    """Smallest radius at which ``d-plus`` stops growing, ``2 (1 - mu(S^0))``."""
    ell, mu = _instance(ell, mu)
    part = build_partition(ell, "from-min")
    return 2.0 * _movable(mu, part, gain_max=True)


def r_max_lower(ell, mu) -> float:
    """Smallest radius at which ``d-minus`` reaches ``ell_min``, ``2 (1 - mu(S_0))``."""
    ell, mu = _instance(ell, mu)
    part = build_partition(ell, "from-max")
    return 2.0 * _movable(mu, part, gain_max=False)


def d_max(ell, mu) -> float:
    """Nominal average pay-off; ``r-minus`` vanishes at and above it."""
    return expectation(*_instance(ell, mu))


def _movable(mu: ProbabilityVector, part: LevelPartition, gain_max: bool) -> float:
    """Mass that can still be moved onto the gaining extreme set."""
    if part.degenerate:
        return 0.0
    gain = part.sigma_max if gain_max else part.sigma_min
    return max(0.0, 1.0 - mu.mass(gain))


def _check_radius(R: float) -> float:
    R = float(R)
    if not np.isfinite(R) or R < 0.0 or R > 2.0:
        raise DomainError(f"radius must lie in [0, 2], got {R!r}")
    return R


def _transfer(
    ell: PayoffVector,
    mu: ProbabilityVector,
    part: LevelPartition,
    half_budget: float,
    gain_max: bool,
) -> tuple[np.ndarray, list[tuple[str, float]], float, float]:
    """Move ``half_budget`` of mass per the level-set waterfall.

    Returns ``(nu, set_masses, alpha, value)`` where ``value`` is the
    pay-off evaluated set by set.
    """
    movable = _movable(mu, part, gain_max)
    alpha = min(half_budget, movable)
    m = mu.entries
    nu = m.copy()

    if gain_max:
        gain, gain_label, gain_level = part.sigma_max, "S^0", part.ell_max
        drain = [("S_0", part.sigma_min, part.ell_min)]
        fmt = "S_{}"
    else:
        gain, gain_label, gain_level = part.sigma_min, "S_0", part.ell_min
        drain = [("S^0", part.sigma_max, part.ell_max)]
        fmt = "S^{}"
    drain += [(fmt.format(k), s, v) for k, (s, v) in
              enumerate(zip(part.middle_sets, part.level_values), start=1)]

    masses: dict[str, float] = {}
    value = 0.0
    if gain:
        g = list(gain)
        mu_g = float(m[g].sum())
        if mu_g > 0.0:
            nu[g] = m[g] * (1.0 + alpha / mu_g)
        else:
            nu[g] = m[g] + alpha / len(g)
        masses[gain_label] = mu_g + alpha
        value += gain_level * (mu_g + alpha)

    drained_before = 0.0
    for label, s, level in drain:
        idx = list(s)
        mu_s = float(m[idx].sum())
        # first drain set loses (mu - alpha)^+, later ones lose what is still owed
        owed = max(alpha - drained_before, 0.0)
        kept = max(mu_s - owed, 0.0)
        drained_before += mu_s
        if mu_s > 0.0:
            nu[idx] = m[idx] * (kept / mu_s)
        masses[label] = kept
        value += level * kept

    nu = np.clip(nu, 0.0, 1.0)
    order = [lab for lab, _, _ in part.labelled_sets()]
    return nu, [(lab, masses[lab]) for lab in order], alpha, value


def _solution(kind, budget, value, ell, nu, masses, alpha, part, saturated) -> ExtremumSolution:
    nu_vec = ProbabilityVector(nu)
    return ExtremumSolution(
        kind=kind,
        budget=float(budget),
        value=float(value),
        nu_star=nu_vec,
        set_masses=tuple(masses),
        alpha=float(alpha),
        partition=part,
        saturated=bool(saturated),
        payoff=expectation(ell, nu_vec),
    )


def solve_d_plus(ell, mu, R: float) -> ExtremumSolution:
    """Maximum average pay-off over the TV ball of radius ``R`` around ``mu``."""
    ell, mu = _instance(ell, mu)
    R = _check_radius(R)
    part = build_partition(ell, "from-min")
    nu, masses, alpha, value = _transfer(ell, mu, part, R / 2.0, gain_max=True)
    saturated = R / 2.0 > _movable(mu, part, gain_max=True)
    return _solution("d-plus", R, value, ell, nu, masses, alpha, part, saturated)


def solve_d_minus(ell, mu, R: float) -> ExtremumSolution:
    """Minimum average pay-off over the TV ball of radius ``R`` around ``mu``."""
    ell, mu = _instance(ell, mu)
    R = _check_radius(R)
    part = build_partition(ell, "from-max")
    nu, masses, alpha, value = _transfer(ell, mu, part, R / 2.0, gain_max=False)
    saturated = R / 2.0 > _movable(mu, part, gain_max=False)
    return _solution("d-minus", R, value, ell, nu, masses, alpha, part, saturated)


def _set_sums(ell: PayoffVector, mu: ProbabilityVector, sets: Sequence[tuple[int, ...]]):
    """Nominal mass and nominal pay-off contribution of each set."""
    mass = np.array([mu.mass(s) for s in sets])
    contrib = np.array([float(ell.entries[list(s)] @ mu.entries[list(s)]) for s in sets])
    return mass, contrib


def _radius_below(ell: PayoffVector, mu: ProbabilityVector, part: LevelPartition, D: float) -> float:
    """Least TV distance pulling the average pay-off down to ``D``.

    ``part`` is the ``from-max`` partition and ``ell_min <= D < E_mu(ell)``.
    """
    E = expectation(ell, mu)
    lmin, lmax = part.ell_min, part.ell_max
    mu_min = mu.mass(part.sigma_min)
    mu_max = mu.mass(part.sigma_max)
    limit = 2.0 * (1.0 - mu_min)

    # only the maximizing set is drained
    if D >= (lmin - lmax) * mu_max + E - TAU_FEAS:
        return min(max(2.0 * (D - E) / (lmin - lmax), 0.0), limit)

    # drain order S^0, S^1, ..., S^r; bracket k has S^0..S^{k-1} emptied and S^k partial
    sets = [part.sigma_max, *part.middle_sets]
    mass, contrib = _set_sums(ell, mu, sets)
    lmin_mass = lmin * mu_min
    for k in range(1, part.r + 1):
        emptied = float(mass[:k].sum())
        level = part.level_values[k - 1]
        tail_from_k = float(contrib[k:].sum())
        upper = lmin * (emptied + mu_min) + tail_from_k
        lower = lmin * (emptied + mass[k] + mu_min) + float(contrib[k + 1:].sum())
        if lower - TAU_FEAS <= D <= upper + TAU_FEAS:
            R = 2.0 * (D - lmin_mass - level * emptied - tail_from_k) / (lmin - level)
            return min(max(R, 0.0), limit)
    # D at ell_min: everything outside the minimizing set has been moved
    return limit


def _radius_above(ell: PayoffVector, mu: ProbabilityVector, part: LevelPartition, D: float) -> float:
    """Least TV distance raising the average pay-off to ``D``.

    ``part`` is the ``from-min`` partition and ``E_mu(ell) <= D <= ell_max``.
    """
    E = expectation(ell, mu)
    lmin, lmax = part.ell_min, part.ell_max
    mu_min = mu.mass(part.sigma_min)
    mu_max = mu.mass(part.sigma_max)
    limit = 2.0 * (1.0 - mu_max)

    if D <= (lmax - lmin) * mu_min + E + TAU_FEAS:
        return min(max(2.0 * (D - E) / (lmax - lmin), 0.0), limit)

    sets = [part.sigma_min, *part.middle_sets]
    mass, contrib = _set_sums(ell, mu, sets)
    lmax_mass = lmax * mu_max
    for k in range(1, part.r + 1):
        emptied = float(mass[:k].sum())
        level = part.level_values[k - 1]
        tail_from_k = float(contrib[k:].sum())
        lower = lmax * (emptied + mu_max) + tail_from_k
        upper = lmax * (emptied + mass[k] + mu_max) + float(contrib[k + 1:].sum())
        if lower - TAU_FEAS <= D <= upper + TAU_FEAS:
            R = 2.0 * (D - lmax_mass - level * emptied - tail_from_k) / (lmax - level)
            return min(max(R, 0.0), limit)
    return limit


def solve_r_minus(ell, mu, D: float) -> ExtremumSolution:
    """Least TV distance from ``mu`` to a vector with average pay-off at most ``D``.

    Raises :class:`InfeasibleError` when ``D < min(ell)``.
    """
    ell, mu = _instance(ell, mu)
    D = float(D)
    if not np.isfinite(D):
        raise DomainError(f"target must be finite, got {D!r}")
    part = build_partition(ell, "from-max")
    if D < part.ell_min - TAU_FEAS:
        raise InfeasibleError(
            f"target {D!r} is below the smallest pay-off {part.ell_min!r}; no probability vector attains it"
        )
    E = expectation(ell, mu)
    if D >= E or part.degenerate:
        nu, masses, alpha, _ = _transfer(ell, mu, part, 0.0, gain_max=False)
        return _solution("r-minus", D, 0.0, ell, nu, masses, alpha, part, D > E)

    R = _radius_below(ell, mu, part, max(D, part.ell_min))
    nu, masses, alpha, _ = _transfer(ell, mu, part, R / 2.0, gain_max=False)
    return _solution("r-minus", D, R, ell, nu, masses, alpha, part, False)


def solve_r_plus(ell, mu, D: float) -> ExtremumSolution:
    """TV distance needed to raise the average pay-off from ``E_mu(ell)`` to ``D``.

    This is the inverse curve of :func:`solve_d_plus`. Targets above
    ``max(ell)`` are clamped to it and flagged saturated; targets below the
    nominal average have no solution on the TV sphere and raise
    :class:`DomainError` (or :class:`InfeasibleError` below ``min(ell)``).
    """
    ell, mu = _instance(ell, mu)
    D = float(D)
    if not np.isfinite(D):
        raise DomainError(f"target must be finite, got {D!r}")
    part = build_partition(ell, "from-min")
    if D < part.ell_min - TAU_FEAS:
        raise InfeasibleError(
            f"target {D!r} is below the smallest pay-off {part.ell_min!r}; no probability vector attains it"
        )
    E = expectation(ell, mu)
    if D < E - TAU_FEAS:
        raise DomainError(
            f"target {D!r} is below the nominal average pay-off {E!r}; the inverse curve starts there"
        )
    saturated = D > part.ell_max
    D_eff = min(max(D, E), part.ell_max)
    if part.degenerate:
        R = 0.0
    else:
        R = _radius_above(ell, mu, part, D_eff)
    nu, masses, alpha, _ = _transfer(ell, mu, part, R / 2.0, gain_max=True)
    return _solution("r-plus", D, R, ell, nu, masses, alpha, part, saturated)


_SOLVERS = {
    "d-plus": solve_d_plus,
    "d-minus": solve_d_minus,
    "r-plus": solve_r_plus,
    "r-minus": solve_r_minus,
}


def solve(kind: str, ell, mu, budget: float) -> ExtremumSolution:
    """Dispatch to the solver for ``kind``."""
    try:
        fn = _SOLVERS[kind]
    except KeyError:
        raise ValueError(f"unknown problem kind {kind!r}; expected one of {KINDS}") from None
    return fn(ell, mu, budget)


def sweep(kind: str, ell, mu, grid: Iterable[float]) -> list[SweepPoint]:
    """Evaluate the ``kind`` solver at every grid budget, in grid order.

    The first failing budget raises :class:`SweepError` carrying it.
    """
    ell, mu = _instance(ell, mu)
    if kind not in _SOLVERS:
        raise ValueError(f"unknown problem kind {kind!r}; expected one of {KINDS}")
    points = []
    for b in grid:
        try:
            sol = solve(kind, ell, mu, b)
        except (DomainError, InfeasibleError) as exc:
            raise SweepError(float(b), exc) from exc
        points.append(SweepPoint(float(b), sol.value, sol.saturated, sol.alpha, sol.nu_star))
    return points
