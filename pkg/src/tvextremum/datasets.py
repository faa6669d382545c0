"""Reference instances used by the golden tests and the bundled instance files.

Entries are exact decimal or fraction strings.
"""

from __future__ import annotations

from fractions import Fraction

from .solvers import ProblemInstance

__all__ = ["EXAMPLE_A", "EXAMPLE_B", "EXAMPLE_C", "RAW", "parse_number", "load_example"]

_MU_AB = ["23/72", "13/72", "10/72", "9/72", "8/72", "4/72", "3/72", "2/72"]

RAW = {
    "example_a": {
        "name": "example_a",
        "ell": ["1", "1", "0.8", "0.8", "0.6", "0.4", "0.4", "0.2"],
        "mu": _MU_AB,
    },
    "example_b": {
        "name": "example_b",
        "ell": ["1", "0.8", "0.7", "0.6", "0.5", "0.4", "0.3", "0.2"],
        "mu": _MU_AB,
    },
    "example_c": {
        "name": "example_c",
        "ell": (
            "20 20 20 20 19 19 19 18 17 17 16 14 14 13 13 13 13 12 10 10 10 10 "
            "10 9 9 9 8 8 8 8 8 8 8 7 7 6 5 4 3 3 3 3 3 3 2 2 2 2 1 1"
        ).split(),
        "mu": (
            "0.052 0.002 0.01 0.006 0.004 0.038 0.032 0.028 0.026 0.008 0.012 0.01 0.008 "
            "0.026 0.05 0.044 0.03 0.032 0.024 0.01 0.02 0.03 0.014 0.024 0.004 0.006 0.024 "
            "0.01 0.022 0.012 0.016 0.042 0.014 0.016 0.01 0.024 0.02 0.008 0.014 0.032 0.018 "
            "0.012 0.01 0.04 0.036 0.018 0.002 0.022 0.012 0.016"
        ).split(),
    },
}


def parse_number(value) -> float:
    """Parse a number or an exact string such as ``"23/72"`` or ``"0.8"``."""
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a number: {value!r}") from exc
    raise ValueError(f"not a number: {value!r}")


def load_example(key: str) -> ProblemInstance:
    raw = RAW[key]
    return ProblemInstance(
        ell=[parse_number(v) for v in raw["ell"]],
        mu=[parse_number(v) for v in raw["mu"]],
        name=raw["name"],
    )


EXAMPLE_A = load_example("example_a")
EXAMPLE_B = load_example("example_b")
EXAMPLE_C = load_example("example_c")
