"""Shared test helpers."""

from __future__ import annotations

import math

import pytest


def round_1sf(x: float) -> float:
    """Round to one significant figure."""
    if x == 0:
        return 0.0
    e = math.floor(math.log10(abs(x)) + 1e-12)
    lead = round(abs(x) / 10.0 ** e)
    if lead == 10:
        lead, e = 1, e + 1
    return math.copysign(lead * 10.0 ** e, x)


def _grid_neighbors(q: float) -> tuple[float, float]:
    """Adjacent values on the 1-significant-figure grid around q."""
    e = math.floor(math.log10(abs(q)) + 1e-12)
    d = round(abs(q) / 10.0 ** e)
    lower = 9 * 10.0 ** (e - 1) if d == 1 else (d - 1) * 10.0 ** e
    upper = 1 * 10.0 ** (e + 1) if d == 9 else (d + 1) * 10.0 ** e
    return lower, upper


def matches_1sf(computed: float, quoted: float, allow_adjacent: bool = False) -> bool:
    """Does `computed` round to `quoted` on the 1-sig-fig grid?

    With allow_adjacent=True, landing on the grid point next to `quoted`
    also counts (quoted reference values carry at least half-a-unit
    rounding slop, and some are known to have been tabulated with slightly
    different conventions).
    """
    r = round_1sf(computed)
    if math.isclose(r, quoted, rel_tol=1e-9):
        return True
    if allow_adjacent:
        lo, hi = _grid_neighbors(quoted)
        return math.isclose(r, lo, rel_tol=1e-9) or math.isclose(r, hi, rel_tol=1e-9)
    return False


@pytest.fixture
def grw():
    from cslwalk import CslParams
    return CslParams.grw()
