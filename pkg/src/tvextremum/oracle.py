"""Brute-force linear-programming verifier for the closed-form solvers.

Each problem is written over split variables ``(xi_plus, xi_minus) >= 0``
with ``nu = mu + xi_plus - xi_minus`` and solved by a dense two-phase
simplex method using Bland's rule. It is meant for test-sized instances
only and shares no code with :mod:`tvextremum.solvers`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionError, NonterminationError

__all__ = [
    "LinearProgram",
    "LPResult",
    "encode",
    "solve_lp",
    "oracle_value",
    "is_feasible",
    "split_to_nu",
]

MAX_PIVOTS = 10**6
_EPS = 1e-11

Sense = Literal["<=", "=", ">="]
Status = Literal["optimal", "infeasible", "unbounded"]


@dataclass(frozen=True)
class LinearProgram:
    """``maximize`` or ``minimize`` ``c @ x + offset`` subject to row and box constraints."""

    c: np.ndarray
    A: np.ndarray
    senses: tuple[str, ...]
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    maximize: bool = True
    offset: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        n = c.size
        A = np.asarray(self.A, dtype=float).reshape(-1, n) if n else np.zeros((0, 0))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.asarray(self.upper, dtype=float).reshape(-1)
        if A.shape[0] != b.size or len(self.senses) != b.size:
            raise DimensionError("constraint rows, senses and right-hand sides disagree in count")
        if lo.size != n or hi.size != n:
            raise DimensionError("bounds must have one entry per variable")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("variable bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")
        bad = set(self.senses) - {"<=", "=", ">="}
        if bad:
            raise ValueError(f"unknown row senses {sorted(bad)}")
        for name, val in (("c", c), ("A", A), ("b", b), ("lower", lo), ("upper", hi)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "senses", tuple(self.senses))

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.b.size


@dataclass(frozen=True)
class LPResult:
    optimum: float
    x: np.ndarray
    status: Status
    pivots: int = 0


class _Tableau:
    """Dense tableau ``[A | b]`` with an explicit basis, pivoted by Bland's rule."""

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int]):
        self.T = np.hstack([A, b.reshape(-1, 1)])
        self.basis = basis
        self.pivots = 0

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        for i in range(T.shape[0]):
            if i != row and T[i, col] != 0.0:
                T[i] -= T[i, col] * T[row]
        T[np.abs(T) < 1e-15] = 0.0
        self.basis[row] = col
        self.pivots += 1
        if self.pivots > MAX_PIVOTS:
            raise NonterminationError(f"simplex exceeded {MAX_PIVOTS} pivots")

    def optimize(self, cost: np.ndarray, allowed: np.ndarray) -> str:
        """Maximize ``cost @ x`` over the current basis; columns outside ``allowed`` never enter."""
        T = self.T
        while True:
            cb = cost[self.basis]
            reduced = cost - cb @ T[:, :-1]
            enter = -1
            for j in np.flatnonzero(allowed):
                if reduced[j] > _EPS and j not in self.basis:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            col = T[:, enter]
            best_row, best_ratio = -1, np.inf
            for i in range(T.shape[0]):
                if col[i] > _EPS:
                    ratio = T[i, -1] / col[i]
                    if ratio < best_ratio - _EPS or (
                        abs(ratio - best_ratio) <= _EPS and self.basis[i] < self.basis[best_row]
                    ):
                        best_row, best_ratio = i, ratio
            if best_row < 0:
                return "unbounded"
            self.pivot(best_row, enter)

    def solution(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        for i, j in enumerate(self.basis):
            if j < n:
                x[j] = self.T[i, -1]
        return x


def solve_lp(lp: LinearProgram) -> LPResult:
    """Solve ``lp`` exactly to a basic optimal solution (two-phase simplex, Bland's rule)."""
    n = lp.n_vars
    width = lp.upper - lp.lower
    # shift to y = x - lower >= 0 and add y <= width rows
    rows = [lp.A[i] for i in range(lp.n_rows)] + [np.eye(n)[j] for j in range(n)]
    rhs = list(lp.b - lp.A @ lp.lower) + list(width)
    senses = list(lp.senses) + ["<="] * n
    m = len(rows)
    A = np.array(rows).reshape(m, n)
    b = np.array(rhs, dtype=float)
    for i in range(m):
        if b[i] < 0:
            A[i], b[i] = -A[i], -b[i]
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]

    n_slack = sum(s != "=" for s in senses)
    n_art = sum(s != "<=" for s in senses)
    total = n + n_slack + n_art
    M = np.zeros((m, total))
    M[:, :n] = A
    basis = [0] * m
    s_col, a_col = n, n + n_slack
    artificial = np.zeros(total, dtype=bool)
    for i, s in enumerate(senses):
        if s == "<=":
            M[i, s_col] = 1.0
            basis[i] = s_col
            s_col += 1
        elif s == ">=":
            M[i, s_col] = -1.0
            s_col += 1
            M[i, a_col] = 1.0
            artificial[a_col] = True
            basis[i] = a_col
            a_col += 1
        else:
            M[i, a_col] = 1.0
            artificial[a_col] = True
            basis[i] = a_col
            a_col += 1

    tab = _Tableau(M, b, basis)
    all_cols = np.ones(total, dtype=bool)
    if n_art:
        phase1 = -artificial.astype(float)
        tab.optimize(phase1, all_cols)
        infeas = float(tab.T[[i for i, j in enumerate(tab.basis) if artificial[j]], -1].sum())
        if infeas > 1e-9:
            return LPResult(float("nan"), np.full(n, np.nan), "infeasible", tab.pivots)
        # drive remaining zero-level artificials out of the basis
        keep = []
        for i, j in enumerate(tab.basis):
            if not artificial[j]:
                keep.append(i)
                continue
            candidates = [k for k in range(total) if not artificial[k] and abs(tab.T[i, k]) > 1e-9]
            if candidates:
                tab.pivot(i, candidates[0])
                keep.append(i)
        if len(keep) < m:
            tab.T = tab.T[keep]
            tab.basis = [tab.basis[i] for i in keep]

    cost = np.zeros(total)
    cost[:n] = lp.c if lp.maximize else -lp.c
    status = tab.optimize(cost, ~artificial)
    if status == "unbounded":
        sign = 1.0 if lp.maximize else -1.0
        return LPResult(sign * float("inf"), np.full(n, np.nan), "unbounded", tab.pivots)
    x = tab.solution(n) + lp.lower
    return LPResult(float(lp.c @ x + lp.offset), x, "optimal", tab.pivots)


def encode(kind: str, ell: Sequence[float], mu: Sequence[float], budget: float) -> LinearProgram:
    """Linear program for ``kind`` over variables ``[xi_plus, xi_minus]``.

    Box bounds ``0 <= xi_plus_i <= 1 - mu_i`` and ``0 <= xi_minus_i <= mu_i``
    keep ``nu`` inside [0, 1]. Rows: zero total mass (equality) and one
    inequality, the TV ball for the d-kinds or the pay-off level for the
    r-kinds. ``r-plus`` is encoded as the least TV distance reaching an
    average pay-off of at least ``budget``, so that it traces the inverse of
    ``d-plus``.
    """
    ell = np.asarray(ell, dtype=float).reshape(-1)
    mu = np.asarray(mu, dtype=float).reshape(-1)
    if ell.size != mu.size:
        raise DimensionError(f"length mismatch: {ell.size} vs {mu.size}")
    n = ell.size
    ones = np.ones(n)
    zero_sum = np.concatenate([ones, -ones])
    tv_row = np.concatenate([ones, ones])
    pay_row = np.concatenate([ell, -ell])
    base = float(ell @ mu)
    lower = np.zeros(2 * n)
    upper = np.concatenate([1.0 - mu, mu])
    budget = float(budget)

    if kind in ("d-plus", "d-minus"):
        return LinearProgram(
            c=pay_row, A=np.vstack([zero_sum, tv_row]), senses=("=", "<="),
            b=np.array([0.0, budget]), lower=lower, upper=upper,
            maximize=(kind == "d-plus"), offset=base,
        )
    if kind in ("r-plus", "r-minus"):
        sense = "<=" if kind == "r-minus" else ">="
        return LinearProgram(
            c=tv_row, A=np.vstack([zero_sum, pay_row]), senses=("=", sense),
            b=np.array([0.0, budget - base]), lower=lower, upper=upper,
            maximize=False, offset=0.0,
        )
    raise ValueError(f"unknown problem kind {kind!r}")


def split_to_nu(mu: Sequence[float], x: np.ndarray) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    n = mu.size
    return mu + x[:n] - x[n:]


def oracle_value(kind: str, ell, mu, budget: float) -> LPResult:
    """Encode and solve; the returned ``x`` is converted to ``nu``."""
    res = solve_lp(encode(kind, ell, mu, budget))
    if res.status != "optimal":
        return res
    return LPResult(res.optimum, split_to_nu(mu, res.x), res.status, res.pivots)


def is_feasible(kind: str, ell, mu, budget: float, nu, tol: float = 1e-9) -> bool:
    """Whether ``nu`` satisfies the constraints the oracle imposes for ``kind``."""
    ell = np.asarray(ell, dtype=float)
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if nu.shape != mu.shape:
        return False
    if np.any(nu < -tol) or np.any(nu > 1 + tol) or abs(nu.sum() - 1.0) > tol:
        return False
    tv = float(np.abs(nu - mu).sum())
    pay = float(ell @ nu)
    if kind in ("d-plus", "d-minus"):
        return tv <= budget + tol
    if kind == "r-minus":
        return pay <= budget + tol
    if kind == "r-plus":
        return pay >= min(budget, float(ell.max())) - tol
    raise ValueError(f"unknown problem kind {kind!r}")
