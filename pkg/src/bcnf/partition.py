"""Preimages of the switching manifold under the left branch.

The y-axis pulled back i times through the left branch is a line
``y = m_i x + c_i``. Pulling ``y = m x + c`` back once gives slope
``-(delta_L + tau_L m) / m`` and intercept ``-c / m - 1``; the first
preimage is ``y = -tau_L x - 1``. The slopes increase and the intercepts
decrease until the slope first becomes non-negative, at index ``p_star``.
Consecutive lines bound the strips ``D_p`` on which the left escape time
equals ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .core import Params, Point, apply_f

INFINITY = math.inf

DEFAULT_CHI_L_CAP = 64
DEFAULT_CHI_R_CAP = 1000


class Line(NamedTuple):
    m: float
    c: float

    def at(self, x: float) -> float:
        return self.m * x + self.c


@dataclass(frozen=True)
class PreimageFan:
    lines: tuple[Line, ...]
    p_star: float  # int, or INFINITY

    def __len__(self):
        return len(self.lines)

    def line(self, i: int) -> Line:
        """The i-th preimage line, 1-based."""
        return self.lines[i - 1]

    def intercept(self, i: int) -> float:
        return self.lines[i - 1].c


def p_star(params: Params):
    """Index of the first preimage line with non-negative slope.

    Returns ``INFINITY`` when ``tau_L >= 2 sqrt(delta_L)`` (real eigenvalues
    of ``A_L``; the slopes never turn). Otherwise ``ceil(pi / phi - 1)`` with
    ``phi = arccos(tau_L / (2 sqrt(delta_L)))``, which is at least 2.

    When ``pi / phi - 1`` is within ``1e-9`` of an integer some slope is zero
    up to rounding and the ceiling is decided by noise; the count is then
    taken from the slope recurrence itself so that both agree.
    """
    ratio = params.tau_L / (2.0 * math.sqrt(params.delta_L))
    if ratio >= 1.0:
        return INFINITY
    phi = math.acos(ratio)
    x = math.pi / phi - 1.0
    if abs(x - round(x)) < 1e-9:
        return _slope_count(params, round(x) + 2)
    return math.ceil(x)


def _slope_count(params: Params, limit: int) -> int:
    m = -params.tau_L
    for i in range(1, limit + 1):
        if m >= 0.0:
            return i
        m = -(params.delta_L + params.tau_L * m) / m
    return limit


def _pull_back(params: Params, line: Line) -> Line:
    m, c = line
    return Line(-(params.delta_L + params.tau_L * m) / m, -c / m - 1.0)


def preimage_fan(params: Params, k: int, ps=None) -> PreimageFan:
    """Lines 1..min(k, p_star) of the left-branch preimage fan.

    Monotonicity (slopes up, intercepts down) is asserted while building; a
    violation means the recurrence has been pushed past the regime where it
    is meaningful. When ``p_star`` is infinite the slopes converge to an
    eigen-slope of ``A_L`` and consecutive values can agree to rounding, so
    the check allows ties within a relative ``1e-12``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if ps is None:
        ps = p_star(params)
    n = int(min(k, ps))
    lines = [Line(-params.tau_L, -1.0)]
    for i in range(2, n + 1):
        prev = lines[-1]
        nxt = _pull_back(params, prev)
        slack_m = 1e-12 * abs(prev.m)
        slack_c = 1e-12 * abs(prev.c)
        if not (nxt.m >= prev.m - slack_m and nxt.c <= prev.c + slack_c):
            raise ArithmeticError(
                f"preimage fan lost monotonicity at line {i}: {prev} -> {nxt}"
            )
        lines.append(nxt)
    return PreimageFan(tuple(lines), ps)


def chi_L(params: Params, z: Point, cap: int = DEFAULT_CHI_L_CAP):
    """Smallest ``i`` in ``1..cap`` with ``f^i(z)`` strictly right of the y-axis.

    Returns ``None`` when no such ``i <= cap`` exists.
    """
    for i in range(1, cap + 1):
        z = apply_f(params, z)
        if z[0] > 0.0:
            return i
    return None


def chi_R(params: Params, z: Point, cap: int = DEFAULT_CHI_R_CAP):
    """Smallest ``j`` in ``1..cap`` with ``f^j(z)`` strictly left of the y-axis."""
    for j in range(1, cap + 1):
        z = apply_f(params, z)
        if z[0] < 0.0:
            return j
    return None


def region_D_membership(fan: PreimageFan, z: Point):
    """Index ``p`` with ``z`` in ``D_p``, or ``None``.

    ``D_1`` is everything in the left half-plane strictly above line 1;
    ``D_p`` is ``line_p(x) < y <= line_{p-1}(x)``. Points on or below the last
    line of the fan get ``None``.
    """
    x, y = z
    if x > 0.0:
        raise ValueError("region membership is only defined for x <= 0")
    for p, line in enumerate(fan.lines, start=1):
        if y > line.at(x):
            return p
    return None
