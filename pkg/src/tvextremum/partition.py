"""Level-set partitions of the alphabet by pay-off value.

Both solver families work on the same grouping of indices by equal pay-off:
the maximizers, the minimizers, and the remaining level sets. They differ
only in the order the remaining sets are visited. ``from-min`` lists them by
increasing value (the order in which a maximizer drains mass), ``from-max``
by decreasing value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionError
from .measures import as_payoff

__all__ = ["TAU_LEVEL", "Direction", "LevelPartition", "build_partition", "group_levels", "oscillation"]

TAU_LEVEL = 1e-12

Direction = Literal["from-min", "from-max"]
_DIRECTIONS = ("from-min", "from-max")

IndexSet = tuple[int, ...]


@dataclass(frozen=True)
class LevelPartition:
    """Ordered level sets of a pay-off vector.

    Indices are 0-based and sorted ascending inside each set.
    """

    sigma_max: IndexSet
    sigma_min: IndexSet
    middle_sets: tuple[IndexSet, ...]
    level_values: tuple[float, ...]
    direction: Direction
    ell_max: float
    ell_min: float

    @property
    def r(self) -> int:
        return len(self.middle_sets)

    @property
    def degenerate(self) -> bool:
        """True when the pay-off is constant, so no minimizing set exists."""
        return len(self.sigma_min) == 0

    def labelled_sets(self) -> list[tuple[str, IndexSet, float]]:
        """``(label, indices, value)`` for every set, extremes first."""
        out = [("S^0", self.sigma_max, self.ell_max)]
        if not self.degenerate:
            out.append(("S_0", self.sigma_min, self.ell_min))
        fmt = "S_{}" if self.direction == "from-min" else "S^{}"
        for k, (s, v) in enumerate(zip(self.middle_sets, self.level_values), start=1):
            out.append((fmt.format(k), s, v))
        return out


def group_levels(values: np.ndarray, tol: float = TAU_LEVEL) -> list[tuple[float, IndexSet]]:
    """Group indices by pay-off value, ascending.

    Consecutive sorted values join the current group while they stay within
    ``tol * max(1, |v|)`` of the group's smallest member. Each group is
    reported with that smallest value.
    """
    order = np.argsort(values, kind="stable")
    groups: list[tuple[float, list[int]]] = []
    for i in order:
        v = float(values[i])
        if groups:
            base = groups[-1][0]
            if abs(v - base) <= tol * max(1.0, abs(base)):
                groups[-1][1].append(int(i))
                continue
        groups.append((v, [int(i)]))
    return [(v, tuple(sorted(idx))) for v, idx in groups]


def build_partition(ell, direction: Direction = "from-min") -> LevelPartition:
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}, got {direction!r}")
    ell = as_payoff(ell)
    if len(ell) == 0:
        raise DimensionError("pay-off vector is empty")
    values = ell.entries
    groups = group_levels(values)

    ell_max, ell_min = float(values.max()), float(values.min())
    if len(groups) == 1:
        # Constant pay-off: every index is a maximizer and the minimizer set is empty.
        return LevelPartition(groups[0][1], (), (), (), direction, ell_max, ell_min)

    middle = groups[1:-1]
    if direction == "from-max":
        middle = middle[::-1]
        # ell(S^k) is the largest pay-off in the set.
        levels = tuple(float(values[list(s)].max()) for _, s in middle)
    else:
        levels = tuple(float(values[list(s)].min()) for _, s in middle)
    return LevelPartition(
        sigma_max=groups[-1][1],
        sigma_min=groups[0][1],
        middle_sets=tuple(s for _, s in middle),
        level_values=levels,
        direction=direction,
        ell_max=ell_max,
        ell_min=ell_min,
    )


def oscillation(ell) -> float:
    """Global modulus of continuity ``max(ell) - min(ell)``."""
    ell = as_payoff(ell)
    return float(ell.entries.max() - ell.entries.min())
